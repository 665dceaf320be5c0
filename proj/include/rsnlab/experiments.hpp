#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsnlab/stats.hpp"

namespace rsn {

// Parameter record of one Monte-Carlo campaign. The hash covers exactly the
// parameters that determine the output bytes, so equal hashes mean
// reproducible statistics regardless of worker count or wall-clock fields.
struct RunManifest {
  std::string experiment;
  int n = 0;
  int k = 0;
  int levels = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  double scale = 0.0;  // statistics are multiplied by 2 / n^{3/2}
  std::string param_hash;
  std::string created_utc;

  std::string to_json() const;
};

RunManifest make_manifest(const std::string& experiment, int n, int k, int levels,
                          long long samples, std::uint64_t seed, int jobs);

// Network and TableauEntry consume the same RNG stream (one uniform SYT per
// sample), so they agree per sample, witnessing the entry identity
// T_FS = N + 1 - T(n-k, k). Removal draws the same law through the truncated
// removal process without building the tableau; it is the fast default.
enum class FirstSwapRoute {
  Network,       // sample_network + first_swap_time
  TableauEntry,  // N + 1 - T(n-k, k) of a uniform staircase SYT
  Removal,       // removal step of cell (n-k, k), stopping early
};

struct FirstSwapReport {
  RunManifest manifest;
  std::vector<double> scaled;  // in sample-index order
  StatWithSe ks;               // against the Fredholm survival CDF
  std::string summary_json() const;
  std::string samples_csv() const;
};

FirstSwapReport mc_first_swap(int n, int k, long long samples, std::uint64_t seed, int jobs = 1,
                              FirstSwapRoute route = FirstSwapRoute::Removal);

struct SpacingMcReport {
  RunManifest manifest;
  std::vector<double> scaled;
  StatWithSe tv;    // 30-bin total variation against the target density
  StatWithSe ks;    // k = 1 conditional case only: against 1 - e^{-x^2}
  bool has_ks = false;
  StatWithSe mean;
  std::string summary_json() const;
  std::string samples_csv() const;
};

SpacingMcReport mc_spacing(int n, int k, long long samples, std::uint64_t seed, int jobs = 1);

SpacingMcReport mc_conditional_spacing(int n, int k, long long samples, std::uint64_t seed,
                                       int jobs = 1);

struct CornersReport {
  RunManifest manifest;
  struct Coord {
    int l = 0;
    int m = 0;  // rank within level, 1 = closest to the origin
    StatWithSe ks;
  };
  std::vector<Coord> coords;
  double max_ks = 0.0;
  bool tableau_interlaced = true;
  bool ague_interlaced = true;
  std::string summary_json() const;
};

CornersReport mc_corners_vs_tableaux(int n, int levels, long long samples, std::uint64_t seed,
                                     int jobs = 1);

struct ExactSuiteReport {
  int n = 0;
  bool counts_ok = false;      // Stanley count == |enumeration| == SYT count
  bool bijection_ok = false;   // sliding map injective, images valid
  bool shift_ok = false;       // enumeration closed under the cyclic shift
  bool circle_ok = false;      // both difference identities, zero residual
  std::string detail;          // first offending configuration, if any
  bool all_ok() const { return counts_ok && bijection_ok && shift_ok && circle_ok; }
  std::string summary_json() const;
};

ExactSuiteReport exact_suite(int n);

}  // namespace rsn
