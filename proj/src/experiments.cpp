#include "rsnlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <boost/uuid/detail/sha1.hpp>
#include <json.hpp>

#include "rsnlab/ague.hpp"
#include "rsnlab/errors.hpp"
#include "rsnlab/fredholm.hpp"
#include "rsnlab/rng.hpp"
#include "rsnlab/rotate.hpp"
#include "rsnlab/sorting_network.hpp"
#include "rsnlab/spacings.hpp"
#include "rsnlab/tableau.hpp"

namespace rsn {

namespace {

std::string sha1_hex(const std::string& text) {
  boost::uuids::detail::sha1 h;
  h.process_bytes(text.data(), text.size());
  boost::uuids::detail::sha1::digest_type digest;
  h.get_digest(digest);
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  const auto* bytes = reinterpret_cast<const unsigned char*>(&digest);
  for (std::size_t i = 0; i < sizeof(digest); ++i)
    out << std::setw(2) << static_cast<unsigned>(bytes[i]);
  return out.str();
}

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

// Runs f(sample_index, rng) for every index with a per-index engine, so the
// result vector is byte-identical for any worker count.
template <class F>
void parallel_for_samples(long long count, std::uint64_t seed, int jobs, F&& f) {
  if (jobs < 1) jobs = 1;
  long long workers = std::min<long long>(jobs, std::max<long long>(count, 1));
  if (workers <= 1) {
    for (long long i = 0; i < count; ++i) {
      Rng g = make_rng(seed, static_cast<std::uint64_t>(i));
      f(i, g);
    }
    return;
  }
  std::vector<std::thread> pool;
  long long chunk = (count + workers - 1) / workers;
  for (long long w = 0; w < workers; ++w) {
    long long lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=, &f]() {
      for (long long i = lo; i < hi; ++i) {
        Rng g = make_rng(seed, static_cast<std::uint64_t>(i));
        f(i, g);
      }
    });
  }
  for (auto& th : pool) th.join();
}

double scale_factor(int n) { return 2.0 / std::pow(static_cast<double>(n), 1.5); }

nlohmann::json stat_json(const StatWithSe& s) {
  return nlohmann::json{{"value", s.value}, {"se", s.se}};
}

std::string scaled_csv(const std::vector<double>& scaled) {
  std::ostringstream out;
  out << "sample_id,scaled\n" << std::setprecision(17);
  for (std::size_t i = 0; i < scaled.size(); ++i) out << i << ',' << scaled[i] << '\n';
  return out.str();
}

constexpr int kBootstrapReplicates = 200;
constexpr int kTvBins = 30;
constexpr double kHistLo = 0.0;
constexpr double kHistHi = 4.0;

// Memoized Fredholm survival CDF; first-swap samples repeat raw values, so
// the Gram determinant is evaluated once per distinct point.
class SurvivalCdf {
 public:
  explicit SurvivalCdf(int k) : k_(k) {}
  double operator()(double t) {
    if (t <= 0.0) return 0.0;
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    double v = 1.0 - survival_tfs(k_, t);
    memo_.emplace(t, v);
    return v;
  }

 private:
  int k_;
  std::map<double, double> memo_;
};

}  // namespace

std::string RunManifest::to_json() const {
  nlohmann::json j{{"experiment", experiment}, {"n", n},
                   {"k", k},                   {"levels", levels},
                   {"samples", samples},       {"seed", seed},
                   {"jobs", jobs},             {"scale", scale},
                   {"param_hash", param_hash}, {"created_utc", created_utc}};
  return j.dump(2);
}

RunManifest make_manifest(const std::string& experiment, int n, int k, int levels,
                          long long samples, std::uint64_t seed, int jobs) {
  RunManifest m;
  m.experiment = experiment;
  m.n = n;
  m.k = k;
  m.levels = levels;
  m.samples = samples;
  m.seed = seed;
  m.jobs = jobs;
  m.scale = n >= 1 ? scale_factor(n) : 0.0;
  nlohmann::json params{{"experiment", experiment}, {"n", n},       {"k", k},
                        {"levels", levels},         {"samples", samples},
                        {"seed", seed}};
  m.param_hash = sha1_hex(params.dump());
  m.created_utc = utc_now();
  return m;
}

FirstSwapReport mc_first_swap(int n, int k, long long samples, std::uint64_t seed, int jobs,
                              FirstSwapRoute route) {
  if (n < 2 || k < 1 || k > n - 1) throw DomainError("mc_first_swap: need 1 <= k <= n-1");
  if (samples < 1) throw DomainError("mc_first_swap: samples must be >= 1");
  const char* route_name = route == FirstSwapRoute::Network
                               ? "network"
                               : (route == FirstSwapRoute::TableauEntry ? "tableau" : "removal");
  FirstSwapReport rep;
  rep.manifest = make_manifest(std::string("first_swap_") + route_name, n, k, 0, samples, seed, jobs);
  rep.scaled.resize(static_cast<std::size_t>(samples));
  double sc = scale_factor(n);
  long long bign = static_cast<long long>(n) * (n - 1) / 2;
  Shape delta = Shape::staircase(n);
  // Removal step r deletes the entry N+1-r, so the removal step of the corner
  // cell (n-k, k) equals N+1-T(n-k,k), the first-swap time, and the process
  // can stop there instead of filling the whole tableau.
  const std::vector<Cell> watch{Cell{n - k, k}};
  parallel_for_samples(samples, seed, jobs, [&](long long i, Rng& g) {
    long long t;
    switch (route) {
      case FirstSwapRoute::Network:
        t = first_swap_time(sample_network(n, g), k);
        break;
      case FirstSwapRoute::TableauEntry:
        t = bign + 1 - sample_syt(delta, g).at(n - k, k);
        break;
      default:
        t = removal_steps(delta, watch, g)[0];
        break;
    }
    rep.scaled[static_cast<std::size_t>(i)] = sc * static_cast<double>(t);
  });
  SurvivalCdf cdf(k);
  rep.ks = ks_with_bootstrap(rep.scaled, [&cdf](double t) { return cdf(t); },
                             kBootstrapReplicates, seed);
  return rep;
}

SpacingMcReport mc_spacing(int n, int k, long long samples, std::uint64_t seed, int jobs) {
  if (n < 2 || k < 1 || k > n - 1) throw DomainError("mc_spacing: need 1 <= k <= n-1");
  if (samples < 1) throw DomainError("mc_spacing: samples must be >= 1");
  SpacingMcReport rep;
  rep.manifest = make_manifest("spacing", n, k, 0, samples, seed, jobs);
  rep.scaled.resize(static_cast<std::size_t>(samples));
  double sc = scale_factor(n);
  parallel_for_samples(samples, seed, jobs, [&](long long i, Rng& g) {
    rep.scaled[static_cast<std::size_t>(i)] =
        sc * static_cast<double>(spacing_sp1(sample_network(n, g), k));
  });
  rep.tv = tv_with_bootstrap(rep.scaled, [k](double x) { return x > 0 ? density_g(k, x) : 0.0; },
                             kHistLo, kHistHi, kTvBins, kBootstrapReplicates, seed);
  rep.mean = mean_with_se(rep.scaled);
  return rep;
}

SpacingMcReport mc_conditional_spacing(int n, int k, long long samples, std::uint64_t seed,
                                       int jobs) {
  if (n < 3 || k < 1 || k > n - 1)
    throw DomainError("mc_conditional_spacing: need 1 <= k <= n-1, n >= 3");
  if (samples < 1) throw DomainError("mc_conditional_spacing: samples must be >= 1");
  SpacingMcReport rep;
  rep.manifest = make_manifest("conditional_spacing", n, k, 0, samples, seed, jobs);
  rep.scaled.resize(static_cast<std::size_t>(samples));
  double sc = scale_factor(n);
  parallel_for_samples(samples, seed, jobs, [&](long long i, Rng& g) {
    rep.scaled[static_cast<std::size_t>(i)] =
        sc * static_cast<double>(sample_conditional_spacing(n, k, g));
  });
  rep.tv = tv_with_bootstrap(rep.scaled,
                             [k](double x) { return x > 0 ? density_ghat(k, x) : 0.0; }, kHistLo,
                             kHistHi, kTvBins, kBootstrapReplicates, seed);
  rep.mean = mean_with_se(rep.scaled);
  if (k == 1) {
    rep.has_ks = true;
    rep.ks = ks_with_bootstrap(rep.scaled,
                               [](double x) { return x > 0 ? 1.0 - std::exp(-x * x) : 0.0; },
                               kBootstrapReplicates, seed);
  }
  return rep;
}

CornersReport mc_corners_vs_tableaux(int n, int levels, long long samples, std::uint64_t seed,
                                     int jobs) {
  if (n < 2 || levels < 2 || levels > n)
    throw DomainError("mc_corners_vs_tableaux: need 2 <= levels <= n");
  if (samples < 1) throw DomainError("mc_corners_vs_tableaux: samples must be >= 1");
  CornersReport rep;
  rep.manifest = make_manifest("corners", n, 0, levels, samples, seed, jobs);

  // Coordinate list (l, m), m ascending in distance from the origin.
  std::vector<std::pair<int, int>> coords;
  for (int l = 2; l <= levels; ++l)
    for (int m = 1; m <= level_count(n, l); ++m) coords.emplace_back(l, m);

  double sqn = std::sqrt(static_cast<double>(n));
  double bign = static_cast<double>(n) * (n - 1) / 2.0;
  Shape delta = Shape::staircase(n);

  // Tableau side: entries at the rotated cells, read off the truncated
  // removal process (step r removes entry N+1-r), positions sorted within
  // each level.
  std::vector<Cell> watch;
  watch.reserve(coords.size());
  for (const auto& [l, m] : coords) watch.push_back(unrotate_coord(n, l, m));
  std::vector<std::vector<double>> tab(coords.size(),
                                       std::vector<double>(static_cast<std::size_t>(samples)));
  std::vector<std::uint8_t> tab_ok(static_cast<std::size_t>(samples), 1);
  parallel_for_samples(samples, seed, jobs, [&](long long i, Rng& g) {
    std::vector<long long> steps = removal_steps(delta, watch, g);
    std::size_t c = 0;
    std::size_t w = 0;
    PointConfig cfg;
    for (int l = 2; l <= levels; ++l) {
      int cnt = level_count(n, l);
      std::vector<double> level_vals;
      for (int m = 1; m <= cnt; ++m, ++w) {
        double entry = bign + 1 - static_cast<double>(steps[w]);
        level_vals.push_back(sqn * (1.0 - entry / bign));
      }
      std::sort(level_vals.begin(), level_vals.end());
      for (int m = 1; m <= cnt; ++m) tab[c++][static_cast<std::size_t>(i)] = level_vals[m - 1];
      cfg.levels[l] = std::move(level_vals);
    }
    if (!cfg.interlaces()) tab_ok[static_cast<std::size_t>(i)] = 0;
  });

  // aGUE side: corner spectra of independent draws; levels stored descending,
  // so rank m from the origin is the m-th smallest.
  std::vector<std::vector<double>> gue(coords.size(),
                                       std::vector<double>(static_cast<std::size_t>(samples)));
  std::vector<std::uint8_t> gue_ok(static_cast<std::size_t>(samples), 1);
  parallel_for_samples(samples, seed ^ 0x5eedf00dULL, jobs, [&](long long i, Rng& g) {
    CornersConfig cfg = corners_config(levels, g);
    if (!cfg.interlaces(1e-9)) gue_ok[static_cast<std::size_t>(i)] = 0;
    std::size_t c = 0;
    for (int l = 2; l <= levels; ++l) {
      const auto& vals = cfg.levels.at(l);
      for (int m = 1; m <= static_cast<int>(vals.size()); ++m)
        gue[c++][static_cast<std::size_t>(i)] = vals[vals.size() - static_cast<std::size_t>(m)];
    }
  });

  rep.tableau_interlaced = std::all_of(tab_ok.begin(), tab_ok.end(), [](auto b) { return b; });
  rep.ague_interlaced = std::all_of(gue_ok.begin(), gue_ok.end(), [](auto b) { return b; });
  for (std::size_t c = 0; c < coords.size(); ++c) {
    CornersReport::Coord out;
    out.l = coords[c].first;
    out.m = coords[c].second;
    out.ks = ks_two_with_bootstrap(tab[c], gue[c], kBootstrapReplicates, seed + c);
    rep.max_ks = std::max(rep.max_ks, out.ks.value);
    rep.coords.push_back(out);
  }
  return rep;
}

ExactSuiteReport exact_suite(int n) {
  if (n < 2 || n > 5) throw DomainError("exact_suite: n must be in [2, 5]");
  ExactSuiteReport rep;
  rep.n = n;

  std::vector<SortingNetwork> nets = enumerate_networks(n);
  BigInt stanley = stanley_count(n);
  BigInt syt_count = count_syt(Shape::staircase(n));
  rep.counts_ok = (BigInt(static_cast<long long>(nets.size())) == stanley) &&
                  (stanley == syt_count);
  if (!rep.counts_ok)
    rep.detail = "count mismatch: enumerated " + std::to_string(nets.size());

  std::set<SortingNetwork> image;
  bool bij = true;
  for (const auto& t : enumerate_syt(Shape::staircase(n), 12)) {
    SortingNetwork net = edelman_greene(t);
    if (!is_sorting_network(n, net.swaps()) || !image.insert(net).second) {
      bij = false;
      if (rep.detail.empty()) rep.detail = "bijection failure at tableau " + t.to_json();
      break;
    }
  }
  rep.bijection_ok = bij && image.size() == nets.size();

  std::set<SortingNetwork> all(nets.begin(), nets.end());
  bool shift = true;
  for (const auto& net : nets)
    if (!all.count(net.shifted())) {
      shift = false;
      if (rep.detail.empty()) rep.detail = "shift escaped enumeration: " + net.to_json();
      break;
    }
  rep.shift_ok = shift;

  bool circle = true;
  for (int k = 1; k <= n - 1 && circle; ++k) {
    CircleProcess p = circle_from_networks(n, k, CircleMode::Exact);
    ResidualReport rr = check_circle_relations(circle_stats(p));
    if (!rr.exact_zero) {
      circle = false;
      if (rep.detail.empty())
        rep.detail = "nonzero circle residual at k=" + std::to_string(k);
    }
  }
  rep.circle_ok = circle;
  return rep;
}

std::string FirstSwapReport::summary_json() const {
  nlohmann::json j{{"experiment", manifest.experiment},
                   {"param_hash", manifest.param_hash},
                   {"n", manifest.n},
                   {"k", manifest.k},
                   {"samples", manifest.samples},
                   {"ks", stat_json(ks)}};
  return j.dump(2);
}

std::string FirstSwapReport::samples_csv() const { return scaled_csv(scaled); }

std::string SpacingMcReport::summary_json() const {
  nlohmann::json j{{"experiment", manifest.experiment},
                   {"param_hash", manifest.param_hash},
                   {"n", manifest.n},
                   {"k", manifest.k},
                   {"samples", manifest.samples},
                   {"tv", stat_json(tv)},
                   {"mean", stat_json(mean)}};
  if (has_ks) j["ks"] = stat_json(ks);
  return j.dump(2);
}

std::string SpacingMcReport::samples_csv() const { return scaled_csv(scaled); }

std::string CornersReport::summary_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : coords)
    arr.push_back(nlohmann::json{{"l", c.l}, {"m", c.m}, {"ks", stat_json(c.ks)}});
  nlohmann::json j{{"experiment", manifest.experiment},
                   {"param_hash", manifest.param_hash},
                   {"n", manifest.n},
                   {"levels", manifest.levels},
                   {"samples", manifest.samples},
                   {"max_ks", max_ks},
                   {"tableau_interlaced", tableau_interlaced},
                   {"ague_interlaced", ague_interlaced},
                   {"coords", arr}};
  return j.dump(2);
}

std::string ExactSuiteReport::summary_json() const {
  nlohmann::json j{{"experiment", "exact_suite"}, {"n", n},
                   {"counts_ok", counts_ok},      {"bijection_ok", bijection_ok},
                   {"shift_ok", shift_ok},        {"circle_ok", circle_ok},
                   {"all_ok", all_ok()},          {"detail", detail}};
  return j.dump(2);
}

}  // namespace rsn
