#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsnlab/ague.hpp"
#include "rsnlab/errors.hpp"
#include "rsnlab/experiments.hpp"
#include "rsnlab/fredholm.hpp"
#include "rsnlab/kernels.hpp"
#include "rsnlab/rng.hpp"
#include "rsnlab/shape.hpp"
#include "rsnlab/sorting_network.hpp"
#include "rsnlab/stats.hpp"
#include "rsnlab/tableau.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Assertion failures exit with code 1; they are reported, not thrown through
// CLI11 as errors.
struct AssertionFailure {
  std::string message;
};

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw rsn::DomainError("cannot open for writing: " + path.string());
  out << content;
  if (!out.flush()) throw rsn::DomainError("write failed: " + path.string());
}

// Results go to --out (or stdout); the manifest goes to <out>.manifest.json
// (or stderr) and is always emitted before any results.
class ResultSink {
 public:
  explicit ResultSink(const std::string& out_path) : path_(out_path) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw rsn::DomainError("cannot open for writing: " + path_);
    }
  }

  void manifest(const std::string& manifest_json) {
    if (path_.empty())
      std::cerr << manifest_json << "\n";
    else
      write_text_file(path_ + ".manifest.json", manifest_json + "\n");
  }

  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

rsn::Shape parse_shape(const std::string& text) {
  const std::string kStair = "staircase:";
  const std::string kMinus = "staircase-minus:";
  auto parse_ints = [](const std::string& s) {
    std::vector<int> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw rsn::DomainError("bad integer in shape: " + tok);
      vals.push_back(v);
    }
    return vals;
  };
  try {
    if (text.rfind(kMinus, 0) == 0) {
      auto nk = parse_ints(text.substr(kMinus.size()));
      if (nk.size() != 2) throw rsn::DomainError("expected staircase-minus:N,K");
      return rsn::Shape::staircase_minus(nk[0], nk[1]);
    }
    if (text.rfind(kStair, 0) == 0) {
      auto n = parse_ints(text.substr(kStair.size()));
      if (n.size() != 1) throw rsn::DomainError("expected staircase:N");
      return rsn::Shape::staircase(n[0]);
    }
    return rsn::Shape(parse_ints(text));
  } catch (const rsn::DomainError&) {
    throw;
  } catch (const std::invalid_argument&) {
    throw rsn::DomainError("unparseable shape: " + text);
  } catch (const std::out_of_range&) {
    throw rsn::DomainError("shape value out of range: " + text);
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw rsn::DomainError("bad integer list element: " + tok);
    }
  }
  return vals;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (step <= 0) throw rsn::DomainError("step must be positive");
  std::vector<double> grid;
  for (double x = lo; x <= hi + step * 1e-9; x += step) grid.push_back(x);
  return grid;
}

std::vector<double> point_grid(double umax, int points) {
  if (points < 1) throw rsn::DomainError("grid must have at least one point");
  std::vector<double> grid;
  if (points == 1) {
    grid.push_back(0.0);
    return grid;
  }
  for (int i = 0; i < points; ++i) grid.push_back(umax * i / (points - 1));
  return grid;
}

// Config file: a flat JSON object whose keys are long option names of the
// invoked subcommand (no leading dashes). Values become --key=value tokens
// appended after the explicit arguments; explicit flags take precedence.
void append_config_tokens(const std::string& path, std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw rsn::DomainError("cannot read config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw rsn::DomainError(std::string("bad config JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw rsn::DomainError("config must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const json& v = it.value();
    std::string text;
    if (v.is_string())
      text = v.get<std::string>();
    else if (v.is_boolean())
      text = v.get<bool>() ? "true" : "false";
    else if (v.is_number())
      text = v.dump();
    else
      throw rsn::DomainError("config value for '" + it.key() + "' must be scalar");
    args.push_back("--" + it.key() + "=" + text);
  }
}

// Explicit command-line flags win over config-file values.
CLI::Option* tf(CLI::Option* opt) {
  return opt->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);
}

struct RunDir {
  fs::path dir;
};

// Creates runs/<experiment>_<hash8>/ and writes manifest.json (before any
// results) plus an executable repro.sh replaying the same parameters.
RunDir prepare_run_dir(const std::string& out_root, const rsn::RunManifest& manifest,
                       const std::string& argv0, const std::vector<std::string>& repro_args) {
  RunDir rd;
  rd.dir = fs::path(out_root) / (manifest.experiment + "_" + manifest.param_hash.substr(0, 8));
  fs::create_directories(rd.dir);
  write_text_file(rd.dir / "manifest.json", manifest.to_json() + "\n");
  std::string script = "#!/bin/sh\n# replays the run recorded in manifest.json\nexec " +
                       shell_quote(argv0);
  for (const auto& a : repro_args) script += " " + shell_quote(a);
  script += " \"$@\"\n";
  const fs::path sh = rd.dir / "repro.sh";
  write_text_file(sh, script);
  fs::permissions(sh, fs::perms::owner_exec | fs::perms::group_exec, fs::perm_options::add);
  return rd;
}

void check_stat(const std::string& label, const rsn::StatWithSe& stat, double tol,
                std::vector<std::string>& failures) {
  if (stat.value > tol + 3 * stat.se) {
    std::ostringstream os;
    os << label << " = " << stat.value << " exceeds " << tol << " + 3*" << stat.se;
    failures.push_back(os.str());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const std::string argv0 = argc > 0 ? argv[0] : "rsnlab";

  // --config is resolved before CLI11 sees the arguments.
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        std::cerr << "--config requires a file path\n";
        return 2;
      }
      config_path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  try {
    if (!config_path.empty()) append_config_tokens(config_path, args);
  } catch (const rsn::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{
      "Random sorting network laboratory: samplers, correlation kernels,\n"
      "limit laws and Monte-Carlo experiments.\n"
      "A flat JSON config may be supplied with --config FILE; explicit flags win.\n"
      "Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 numeric error."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rsnlab 1.0.0");

  int exit_code = 0;

  // ---- sample ----------------------------------------------------------
  auto* sample = app.add_subcommand("sample", "Draw random objects and write them out");
  sample->require_subcommand(1);

  struct {
    int n = 5;
    long long count = 1;
    std::uint64_t seed = 0;
    std::string out;
  } sn;
  auto* sample_network_cmd = sample->add_subcommand("network", "Uniform sorting networks");
  tf(sample_network_cmd->add_option("--n", sn.n, "Number of wires")->check(CLI::Range(2, 100000)));
  tf(sample_network_cmd->add_option("--count", sn.count, "Number of samples"));
  tf(sample_network_cmd->add_option("--seed", sn.seed, "RNG seed"));
  tf(sample_network_cmd->add_option("--out", sn.out, "Output file (default: stdout)"));
  sample_network_cmd->callback([&] {
    auto manifest = rsn::make_manifest("sample-network", sn.n, 0, 0, sn.count, sn.seed, 1);
    ResultSink sink(sn.out);
    sink.manifest(manifest.to_json());
    rsn::Rng rng = rsn::make_rng(sn.seed);
    for (long long i = 0; i < sn.count; ++i) {
      rsn::SortingNetwork net = rsn::sample_network(sn.n, rng);
      if (!rsn::is_sorting_network(net.n(), net.swaps()))
        throw rsn::NumericError("sampler produced an invalid network");
      sink.stream() << net.to_json() << "\n";
    }
  });

  struct {
    std::string shape = "staircase:5";
    long long count = 1;
    std::uint64_t seed = 0;
    std::string out;
  } sy;
  auto* sample_syt_cmd =
      sample->add_subcommand("syt", "Uniform standard Young tableaux of a given shape");
  tf(sample_syt_cmd->add_option("--shape", sy.shape,
                                "staircase:N, staircase-minus:N,K or comma row lengths"));
  tf(sample_syt_cmd->add_option("--count", sy.count, "Number of samples"));
  tf(sample_syt_cmd->add_option("--seed", sy.seed, "RNG seed"));
  tf(sample_syt_cmd->add_option("--out", sy.out, "Output file (default: stdout)"));
  sample_syt_cmd->callback([&] {
    rsn::Shape shape = parse_shape(sy.shape);
    int n_label = 0;
    if (!shape.is_staircase(&n_label)) shape.is_staircase_minus(&n_label);
    auto manifest = rsn::make_manifest("sample-syt", n_label, 0, 0, sy.count, sy.seed, 1);
    ResultSink sink(sy.out);
    sink.manifest(manifest.to_json());
    rsn::Rng rng = rsn::make_rng(sy.seed);
    for (long long i = 0; i < sy.count; ++i)
      sink.stream() << rsn::sample_syt(shape, rng).to_json() << "\n";
  });

  struct {
    int dim = 4;
    long long count = 1;
    std::uint64_t seed = 0;
    std::string out;
  } sa;
  auto* sample_ague_cmd =
      sample->add_subcommand("ague", "Positive spectra of antisymmetric Gaussian matrices");
  tf(sample_ague_cmd->add_option("--dim", sa.dim, "Matrix dimension")->check(CLI::Range(2, 100000)));
  tf(sample_ague_cmd->add_option("--count", sa.count, "Number of samples"));
  tf(sample_ague_cmd->add_option("--seed", sa.seed, "RNG seed"));
  tf(sample_ague_cmd->add_option("--out", sa.out, "Output file (default: stdout)"));
  sample_ague_cmd->callback([&] {
    auto manifest = rsn::make_manifest("sample-ague", sa.dim, 0, 0, sa.count, sa.seed, 1);
    ResultSink sink(sa.out);
    sink.manifest(manifest.to_json());
    rsn::Rng rng = rsn::make_rng(sa.seed);
    sink.stream() << "sample,rank,value\n";
    for (long long i = 0; i < sa.count; ++i) {
      auto vals = rsn::positive_spectrum(rsn::sample_antisym(sa.dim, rng));
      for (size_t r = 0; r < vals.size(); ++r)
        sink.stream() << i << "," << (r + 1) << "," << fmt(vals[r]) << "\n";
    }
  });

  // ---- analyze ---------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Deterministic kernel and limit-law tables");
  analyze->require_subcommand(1);

  struct {
    int k = 1;
    double tmax = 3.0;
    double step = 0.05;
    std::string out;
  } af;
  auto* analyze_fredholm_cmd = analyze->add_subcommand(
      "fredholm", "Survival function and limit densities on a regular grid");
  tf(analyze_fredholm_cmd->add_option("--k", af.k, "Rank of the kernel")->check(CLI::Range(1, 32)));
  tf(analyze_fredholm_cmd->add_option("--tmax", af.tmax, "Grid upper end"));
  tf(analyze_fredholm_cmd->add_option("--step", af.step, "Grid spacing"));
  tf(analyze_fredholm_cmd->add_option("--out", af.out, "Output CSV (default: stdout)"));
  analyze_fredholm_cmd->callback([&] {
    json meta = json::parse(rsn::limit_law_json(af.k));
    meta["experiment"] = "analyze-fredholm";
    meta["tmax"] = af.tmax;
    meta["step"] = af.step;
    ResultSink sink(af.out);
    sink.manifest(meta.dump());
    rsn::write_limit_law_csv(sink.stream(), af.k, linear_grid(0.0, af.tmax, af.step));
  });

  struct {
    std::string family = "limiting";
    int k = 1;
    int n = 0;
    bool minus_corner = false;
    int x1 = 2;
    int x2 = 2;
    int trunc = 400;
    int i_max = 80;
    double umax = 3.0;
    int grid = 10;
    std::string out;
  } ak;
  auto* analyze_kernel_cmd =
      analyze->add_subcommand("kernel", "Kernel values on a square grid of positions");
  tf(analyze_kernel_cmd->add_option(
      "--family", ak.family,
      "K_k, corners, limiting, limiting_series, limiting_hermite, conditioned or finite_n"));
  tf(analyze_kernel_cmd->add_option("--k", ak.k, "Rank / conditioning index"));
  tf(analyze_kernel_cmd->add_option("--n", ak.n, "Tableau size (finite_n only)"));
  tf(analyze_kernel_cmd->add_flag("--minus-corner", ak.minus_corner,
                                  "Use the corner-removed staircase (finite_n only)"));
  tf(analyze_kernel_cmd->add_option("--x1", ak.x1, "First level"));
  tf(analyze_kernel_cmd->add_option("--x2", ak.x2, "Second level"));
  tf(analyze_kernel_cmd->add_option("--trunc", ak.trunc, "Residue series cap"));
  tf(analyze_kernel_cmd->add_option("--imax", ak.i_max, "Series truncation order"));
  tf(analyze_kernel_cmd->add_option("--umax", ak.umax, "Grid upper end"));
  tf(analyze_kernel_cmd->add_option("--grid", ak.grid, "Points per axis")
         ->check(CLI::Range(1, 100000)));
  tf(analyze_kernel_cmd->add_option("--out", ak.out, "Output CSV (default: stdout)"));
  analyze_kernel_cmd->callback([&] {
    rsn::KernelQuery q;
    q.family = ak.family == "limiting" ? "limiting_series" : ak.family;
    q.k = ak.k;
    q.n = ak.n;
    q.minus_corner = ak.minus_corner;
    q.x1 = ak.x1;
    q.x2 = ak.x2;
    q.trunc = ak.trunc;
    q.i_max = ak.i_max;
    std::vector<double> grid = point_grid(ak.umax, ak.grid);
    json meta = json::parse(rsn::kernel_query_json(q));
    meta["experiment"] = "analyze-kernel";
    meta["umax"] = ak.umax;
    meta["grid"] = ak.grid;
    if (ak.family == "limiting") meta["columns"] = "u1,u2,series,hermite";
    ResultSink sink(ak.out);
    sink.manifest(meta.dump());
    if (ak.family == "limiting") {
      // Two independent evaluation routes of the same object, side by side.
      sink.stream() << "u1,u2,series,hermite\n";
      for (double u1 : grid)
        for (double u2 : grid)
          sink.stream() << fmt(u1) << "," << fmt(u2) << ","
                        << fmt(rsn::limiting_kernel_series(ak.k, u1, u2, ak.i_max)) << ","
                        << fmt(rsn::limiting_kernel_hermite(ak.k, u1, u2)) << "\n";
    } else {
      rsn::write_kernel_grid_csv(sink.stream(), q, grid, grid);
    }
  });

  struct {
    int k = 1;
    std::string which = "g";
    double xmax = 3.0;
    double step = 0.05;
    std::string out;
  } ad;
  auto* analyze_density_cmd =
      analyze->add_subcommand("density", "One limit-law column on a regular grid");
  tf(analyze_density_cmd->add_option("--k", ad.k, "Rank of the kernel")->check(CLI::Range(1, 32)));
  tf(analyze_density_cmd->add_option("--which", ad.which, "g, ghat or F"));
  tf(analyze_density_cmd->add_option("--xmax", ad.xmax, "Grid upper end"));
  tf(analyze_density_cmd->add_option("--step", ad.step, "Grid spacing"));
  tf(analyze_density_cmd->add_option("--out", ad.out, "Output CSV (default: stdout)"));
  analyze_density_cmd->callback([&] {
    if (ad.which != "g" && ad.which != "ghat" && ad.which != "F")
      throw rsn::DomainError("--which must be g, ghat or F");
    json meta{{"experiment", "analyze-density"}, {"k", ad.k},      {"which", ad.which},
              {"xmax", ad.xmax},                 {"step", ad.step}};
    ResultSink sink(ad.out);
    sink.manifest(meta.dump());
    sink.stream() << "x,value\n";
    for (double x : linear_grid(0.0, ad.xmax, ad.step)) {
      double v = 0.0;
      if (ad.which == "F")
        v = rsn::survival_tfs(ad.k, x);
      else if (x > 0)
        v = ad.which == "g" ? rsn::density_g(ad.k, x) : rsn::density_ghat(ad.k, x);
      sink.stream() << fmt(x) << "," << fmt(v) << "\n";
    }
  });

  // ---- experiment ------------------------------------------------------
  auto* experiment =
      app.add_subcommand("experiment", "Monte-Carlo campaigns and exact verification suites");
  experiment->require_subcommand(1);

  struct {
    int n = 4;
    std::string out_root = "runs";
  } ex;
  auto* exact_cmd = experiment->add_subcommand(
      "exact", "Exact counts, bijection, shift closure and circle identities");
  tf(exact_cmd->add_option("--n", ex.n, "Number of wires")->check(CLI::Range(2, 6)));
  tf(exact_cmd->add_option("--out-dir", ex.out_root, "Root directory for run outputs"));
  exact_cmd->callback([&] {
    auto manifest = rsn::make_manifest("exact_suite", ex.n, 0, 0, 0, 0, 1);
    RunDir rd = prepare_run_dir(ex.out_root, manifest, argv0,
                                {"experiment", "exact", "--n", std::to_string(ex.n)});
    rsn::ExactSuiteReport report = rsn::exact_suite(ex.n);
    write_text_file(rd.dir / "summary.json", report.summary_json() + "\n");
    std::cout << report.summary_json() << "\n";
    if (!report.all_ok()) throw AssertionFailure{"exact suite failed: " + report.detail};
  });

  struct {
    int n = 200;
    int k = 1;
    long long samples = 20000;
    std::uint64_t seed = 42;
    int jobs = 1;
    std::string route = "removal";
    std::string out_root = "runs";
    bool keep_samples = false;
    double assert_ks = -1.0;
  } fw;
  auto* first_swap_cmd = experiment->add_subcommand(
      "first-swap", "Scaled first-swap times against the Fredholm survival law");
  tf(first_swap_cmd->add_option("--n", fw.n, "Number of wires")->check(CLI::Range(2, 100000)));
  tf(first_swap_cmd->add_option("--k", fw.k, "Wire index from the edge")->check(CLI::Range(1, 64)));
  tf(first_swap_cmd->add_option("--samples", fw.samples, "Sample count"));
  tf(first_swap_cmd->add_option("--seed", fw.seed, "RNG seed"));
  tf(first_swap_cmd->add_option("--jobs", fw.jobs, "Worker threads (does not change results)"));
  tf(first_swap_cmd->add_option("--route", fw.route,
                                "removal (fast), tableau (full tableau) or network (full word)"));
  tf(first_swap_cmd->add_option("--out-dir", fw.out_root, "Root directory for run outputs"));
  tf(first_swap_cmd->add_flag("--keep-samples", fw.keep_samples, "Also write samples.csv"));
  tf(first_swap_cmd->add_option("--assert-ks", fw.assert_ks,
                                "Exit 1 unless KS <= TOL + 3 SE"));
  first_swap_cmd->callback([&] {
    rsn::FirstSwapRoute route;
    if (fw.route == "removal")
      route = rsn::FirstSwapRoute::Removal;
    else if (fw.route == "tableau")
      route = rsn::FirstSwapRoute::TableauEntry;
    else if (fw.route == "network")
      route = rsn::FirstSwapRoute::Network;
    else
      throw rsn::DomainError("--route must be removal, tableau or network");
    auto manifest =
        rsn::make_manifest("first_swap_" + fw.route, fw.n, fw.k, 0, fw.samples, fw.seed, fw.jobs);
    RunDir rd = prepare_run_dir(
        fw.out_root, manifest, argv0,
        {"experiment", "first-swap", "--n", std::to_string(fw.n), "--k", std::to_string(fw.k),
         "--samples", std::to_string(fw.samples), "--seed", std::to_string(fw.seed), "--route",
         fw.route});
    rsn::FirstSwapReport report = rsn::mc_first_swap(fw.n, fw.k, fw.samples, fw.seed, fw.jobs, route);
    write_text_file(rd.dir / "summary.json", report.summary_json() + "\n");
    if (fw.keep_samples) write_text_file(rd.dir / "samples.csv", report.samples_csv());
    std::cout << report.summary_json() << "\n";
    if (fw.assert_ks >= 0) {
      std::vector<std::string> failures;
      check_stat("ks", report.ks, fw.assert_ks, failures);
      if (!failures.empty()) throw AssertionFailure{failures.front()};
    }
  });

  struct {
    int n = 200;
    int k = 1;
    long long samples = 20000;
    std::uint64_t seed = 42;
    int jobs = 1;
    bool conditional = false;
    std::string out_root = "runs";
    bool keep_samples = false;
    double assert_tv = -1.0;
    double assert_ks = -1.0;
  } sp;
  auto* spacing_cmd = experiment->add_subcommand(
      "spacing", "Scaled swap spacings against the limit densities");
  tf(spacing_cmd->add_option("--n", sp.n, "Number of wires")->check(CLI::Range(3, 100000)));
  tf(spacing_cmd->add_option("--k", sp.k, "Wire index from the edge")->check(CLI::Range(1, 64)));
  tf(spacing_cmd->add_option("--samples", sp.samples, "Sample count"));
  tf(spacing_cmd->add_option("--seed", sp.seed, "RNG seed"));
  tf(spacing_cmd->add_option("--jobs", sp.jobs, "Worker threads (does not change results)"));
  tf(spacing_cmd->add_flag("--conditional", sp.conditional,
                           "Spacing conditioned on a swap at the anchor"));
  tf(spacing_cmd->add_option("--out-dir", sp.out_root, "Root directory for run outputs"));
  tf(spacing_cmd->add_flag("--keep-samples", sp.keep_samples, "Also write samples.csv"));
  tf(spacing_cmd->add_option("--assert-tv", sp.assert_tv, "Exit 1 unless TV <= TOL + 3 SE"));
  tf(spacing_cmd->add_option("--assert-ks", sp.assert_ks,
                             "Exit 1 unless KS <= TOL + 3 SE (conditional k=1 only)"));
  spacing_cmd->callback([&] {
    const char* name = sp.conditional ? "conditional_spacing" : "spacing";
    auto manifest = rsn::make_manifest(name, sp.n, sp.k, 0, sp.samples, sp.seed, sp.jobs);
    std::vector<std::string> repro{"experiment", "spacing",
                                   "--n", std::to_string(sp.n),
                                   "--k", std::to_string(sp.k),
                                   "--samples", std::to_string(sp.samples),
                                   "--seed", std::to_string(sp.seed)};
    if (sp.conditional) repro.push_back("--conditional");
    RunDir rd = prepare_run_dir(sp.out_root, manifest, argv0, repro);
    rsn::SpacingMcReport report = sp.conditional
                                      ? rsn::mc_conditional_spacing(sp.n, sp.k, sp.samples, sp.seed, sp.jobs)
                                      : rsn::mc_spacing(sp.n, sp.k, sp.samples, sp.seed, sp.jobs);
    write_text_file(rd.dir / "summary.json", report.summary_json() + "\n");
    if (sp.keep_samples) write_text_file(rd.dir / "samples.csv", report.samples_csv());
    std::cout << report.summary_json() << "\n";
    std::vector<std::string> failures;
    if (sp.assert_tv >= 0) check_stat("tv", report.tv, sp.assert_tv, failures);
    if (sp.assert_ks >= 0 && report.has_ks) check_stat("ks", report.ks, sp.assert_ks, failures);
    if (!failures.empty()) throw AssertionFailure{failures.front()};
  });

  struct {
    int n = 300;
    int levels = 6;
    long long samples = 20000;
    std::uint64_t seed = 42;
    int jobs = 1;
    std::string out_root = "runs";
    double assert_ks = -1.0;
  } co;
  auto* corners_cmd = experiment->add_subcommand(
      "corners", "Rotated tableau entries against antisymmetric Gaussian corners");
  tf(corners_cmd->add_option("--n", co.n, "Number of wires")->check(CLI::Range(3, 100000)));
  tf(corners_cmd->add_option("--levels", co.levels, "Largest level compared")
         ->check(CLI::Range(2, 64)));
  tf(corners_cmd->add_option("--samples", co.samples, "Sample count per side"));
  tf(corners_cmd->add_option("--seed", co.seed, "RNG seed"));
  tf(corners_cmd->add_option("--jobs", co.jobs, "Worker threads (does not change results)"));
  tf(corners_cmd->add_option("--out-dir", co.out_root, "Root directory for run outputs"));
  tf(corners_cmd->add_option("--assert-ks", co.assert_ks,
                             "Exit 1 unless every per-coordinate KS <= TOL + 3 SE"));
  corners_cmd->callback([&] {
    auto manifest =
        rsn::make_manifest("corners", co.n, 0, co.levels, co.samples, co.seed, co.jobs);
    RunDir rd = prepare_run_dir(
        co.out_root, manifest, argv0,
        {"experiment", "corners", "--n", std::to_string(co.n), "--levels",
         std::to_string(co.levels), "--samples", std::to_string(co.samples), "--seed",
         std::to_string(co.seed)});
    rsn::CornersReport report =
        rsn::mc_corners_vs_tableaux(co.n, co.levels, co.samples, co.seed, co.jobs);
    write_text_file(rd.dir / "summary.json", report.summary_json() + "\n");
    std::cout << report.summary_json() << "\n";
    std::vector<std::string> failures;
    if (!report.tableau_interlaced) failures.push_back("tableau configurations fail interlacing");
    if (!report.ague_interlaced) failures.push_back("corner configurations fail interlacing");
    if (co.assert_ks >= 0)
      for (const auto& c : report.coords)
        check_stat("ks(l=" + std::to_string(c.l) + ",m=" + std::to_string(c.m) + ")", c.ks,
                   co.assert_ks, failures);
    if (!failures.empty()) throw AssertionFailure{failures.front()};
  });

  // ---- wiring ----------------------------------------------------------
  struct {
    std::string network;
    int n = 0;
    std::string out;
  } wi;
  auto* wiring_cmd = app.add_subcommand("wiring", "Render a sorting network as an SVG diagram");
  tf(wiring_cmd->add_option("--network", wi.network, "Comma-separated swap indices")->required());
  tf(wiring_cmd->add_option("--n", wi.n, "Number of wires")->required());
  tf(wiring_cmd->add_option("--out", wi.out, "Output SVG file")->required());
  wiring_cmd->callback([&] {
    rsn::SortingNetwork net(wi.n, parse_int_list(wi.network));
    json meta{{"experiment", "wiring"}, {"n", wi.n}, {"swaps", net.N()}, {"out", wi.out}};
    std::cerr << meta.dump() << "\n";
    write_text_file(wi.out, rsn::wiring_svg(net));
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.message << "\n";
    return 1;
  } catch (const rsn::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rsn::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rsn::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
