#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CmdResult {
  int rc = -1;
  std::string out;
};

// Runs the CLI with the given argument string; captures stdout by default,
// stderr is discarded unless the caller redirects it.
CmdResult run_cli(const std::string& args, const std::string& redirect = " 2>/dev/null") {
  std::string cmd = std::string("'") + RSN_CLI_PATH + "' " + args + redirect;
  FILE* pipe = popen(cmd.c_str(), "r");
  CmdResult r;
  if (!pipe) return r;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("rsnlab_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path find_run_dir(const fs::path& root, const std::string& prefix) {
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && e.path().filename().string().rfind(prefix, 0) == 0) return e.path();
  return {};
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("usage surface") {
  CHECK(run_cli("--help").rc == 0);
  CHECK(run_cli("--version").out.rfind("rsnlab", 0) == 0);
  CHECK(run_cli("").rc == 2);                    // a subcommand is required
  CHECK(run_cli("sample network --frobnicate 1").rc == 2);
  CHECK(run_cli("experiment first-swap --route sideways").rc == 2);
}

TEST_CASE("network sampling is deterministic and valid json lines") {
  CmdResult a = run_cli("sample network --n 6 --count 3 --seed 12");
  CmdResult b = run_cli("sample network --n 6 --count 3 --seed 12");
  CHECK(a.rc == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 3);
  std::istringstream is(a.out);
  std::string line;
  while (std::getline(is, line)) {
    json j = json::parse(line);
    CHECK(j.at("n") == 6);
    CHECK(j.at("swaps").size() == 15);
  }
  CHECK(run_cli("sample network --n 1").rc == 2);
}

TEST_CASE("tableau and spectrum sampling") {
  CmdResult t = run_cli("sample syt --shape staircase-minus:5,2 --count 2 --seed 3");
  CHECK(t.rc == 0);
  CHECK(count_lines(t.out) == 2);
  CHECK(run_cli("sample syt --shape staircase:1").rc == 2);
  CHECK(run_cli("sample syt --shape 2,3").rc == 2);

  CmdResult s = run_cli("sample ague --dim 5 --count 10 --seed 4");
  CHECK(s.rc == 0);
  CHECK(s.out.rfind("sample,rank,value", 0) == 0);
  CHECK(count_lines(s.out) == 1 + 10 * 2);
}

TEST_CASE("limit law tables") {
  CmdResult r = run_cli("analyze fredholm --k 1 --tmax 1.0 --step 0.5");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("t,F,g,ghat", 0) == 0);
  REQUIRE(count_lines(r.out) == 4);
  // The middle row carries F(0.5) = 1 - erf(0.5).
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  double t, f;
  char c;
  std::istringstream(line) >> t >> c >> f;
  CHECK(t == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f == doctest::Approx(1.0 - std::erf(0.5)).epsilon(1e-8));
}

TEST_CASE("kernel grid with two evaluation routes side by side") {
  CmdResult r = run_cli("analyze kernel --family limiting --k 2 --umax 2.0 --grid 3");
  CHECK(r.rc == 0);
  CHECK(r.out.rfind("u1,u2,series,hermite", 0) == 0);
  REQUIRE(count_lines(r.out) == 1 + 9);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    double u1, u2, series, hermite;
    std::istringstream(line) >> u1 >> u2 >> series >> hermite;
    CHECK(series == doctest::Approx(hermite).epsilon(1e-8));
  }
  CHECK(run_cli("analyze kernel --family cheese").rc == 2);
}

TEST_CASE("density column emits zero at the origin edge") {
  CmdResult r = run_cli("analyze density --which ghat --k 1 --xmax 2 --step 1");
  CHECK(r.rc == 0);
  REQUIRE(count_lines(r.out) == 4);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,value");
  std::getline(is, line);
  CHECK(line == "0,0");
  std::getline(is, line);
  std::replace(line.begin(), line.end(), ',', ' ');
  double x, v;
  std::istringstream(line) >> x >> v;
  CHECK(v == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-10));
  CHECK(run_cli("analyze density --which spam").rc == 2);
}

TEST_CASE("numeric failures use their own exit code") {
  CmdResult r = run_cli(
      "analyze kernel --family conditioned --k 1 --x1 3 --x2 3 --trunc 1 --umax 2 --grid 3",
      " 2>&1");
  CHECK(r.rc == 3);
  CHECK(r.out.find("numeric error") != std::string::npos);
}

TEST_CASE("exact suite writes a run directory") {
  fs::path root = fresh_dir("exact");
  CmdResult r = run_cli("experiment exact --n 3 --out-dir " + root.string());
  CHECK(r.rc == 0);
  fs::path dir = find_run_dir(root, "exact_suite_");
  REQUIRE(!dir.empty());
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "repro.sh"));
  auto perms = fs::status(dir / "repro.sh").permissions();
  CHECK((perms & fs::perms::owner_exec) != fs::perms::none);
  json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("all_ok") == true);
  json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("experiment") == "exact_suite");
  CHECK(manifest.at("n") == 3);
  fs::remove_all(root);
}

TEST_CASE("first-swap campaign: run dir, samples, repro replay") {
  fs::path root = fresh_dir("fs");
  CmdResult r = run_cli("experiment first-swap --n 8 --samples 300 --seed 5 --keep-samples "
                        "--out-dir " + root.string());
  CHECK(r.rc == 0);
  fs::path dir = find_run_dir(root, "first_swap_removal_");
  REQUIRE(!dir.empty());
  json summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("n") == 8);
  CHECK(summary.at("samples") == 300);
  double ks = summary.at("ks").at("value").get<double>();
  CHECK(ks > 0.0);
  std::string samples = slurp(dir / "samples.csv");
  CHECK(samples.rfind("sample_id,scaled", 0) == 0);
  CHECK(count_lines(samples) == 1 + 300);

  // Replaying the recorded script reproduces the same statistic elsewhere.
  fs::path root2 = fresh_dir("fs_replay");
  std::string replay = "sh '" + (dir / "repro.sh").string() + "' --out-dir " + root2.string() +
                       " > /dev/null 2>&1; echo done";
  FILE* pipe = popen(replay.c_str(), "r");
  REQUIRE(pipe);
  char buf[64];
  while (fread(buf, 1, sizeof buf, pipe) > 0) {
  }
  pclose(pipe);
  fs::path dir2 = find_run_dir(root2, "first_swap_removal_");
  REQUIRE(!dir2.empty());
  CHECK(dir2.filename() == dir.filename());  // same parameter hash
  json replay_summary = json::parse(slurp(dir2 / "summary.json"));
  CHECK(replay_summary.at("ks").at("value").get<double>() == ks);
  fs::remove_all(root);
  fs::remove_all(root2);
}

TEST_CASE("assertions demote failing campaigns to exit one") {
  fs::path root = fresh_dir("assert");
  CmdResult r = run_cli("experiment first-swap --n 8 --samples 4000 --seed 5 --assert-ks 0.0001 "
                        "--out-dir " + root.string(), " 2>&1 1>/dev/null");
  CHECK(r.rc == 1);
  CHECK(r.out.find("assertion failed") != std::string::npos);
  fs::remove_all(root);
}

TEST_CASE("config file values yield to explicit flags") {
  fs::path root = fresh_dir("config");
  fs::path cfg = root / "cfg.json";
  std::ofstream(cfg) << R"({"n": 10, "k": 2, "samples": 200, "seed": 9})";
  CmdResult r = run_cli("experiment first-swap --config " + cfg.string() + " --n 8 --out-dir " +
                        root.string());
  CHECK(r.rc == 0);
  json summary = json::parse(r.out);
  CHECK(summary.at("n") == 8);        // explicit flag wins
  CHECK(summary.at("k") == 2);        // config fills the rest
  CHECK(summary.at("samples") == 200);
  CmdResult bad = run_cli("experiment first-swap --config " + root.string() + "/absent.json");
  CHECK(bad.rc == 2);
  fs::remove_all(root);
}

TEST_CASE("wiring subcommand renders svg") {
  fs::path root = fresh_dir("wiring");
  fs::path svg = root / "net.svg";
  CmdResult r = run_cli("wiring --network 1,2,1 --n 3 --out " + svg.string());
  CHECK(r.rc == 0);
  std::string text = slurp(svg);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(run_cli("wiring --network 1,1,2 --n 3 --out " + svg.string()).rc == 2);
  CHECK(run_cli("wiring --network 1,2,1 --n 3").rc == 2);  // --out is required
  fs::remove_all(root);
}

TEST_CASE("manifest goes to stderr before results on stdout") {
  CmdResult with_err = run_cli("sample network --n 4 --count 1 --seed 0", " 2>&1");
  CmdResult only_out = run_cli("sample network --n 4 --count 1 --seed 0");
  CHECK(with_err.rc == 0);
  // Combined stream starts with the manifest, stdout alone starts with data.
  CHECK(with_err.out.find("\"experiment\": \"sample-network\"") != std::string::npos);
  CHECK(only_out.out.rfind("{\"n\":", 0) == 0);
}
