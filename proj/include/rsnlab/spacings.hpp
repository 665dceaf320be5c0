#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsnlab/rng.hpp"
#include "rsnlab/shape.hpp"
#include "rsnlab/sorting_network.hpp"

namespace rsn {

// Swap-occurrence times of a fixed swap k, viewed on the circle Z/(2N):
// position t is occupied iff the periodic extension has s_t = k. Uniform
// networks make the process exactly rotation invariant, so spacing laws are
// anchor independent.
struct CircleProcess {
  int n = 0;
  int k = 0;
  long long K = 0;  // circle length 2N
  bool exact = false;

  // Exact mode: one entry per network, occupied[t-1] for t = 1..K,
  // weight 1/|Omega_n|.
  struct ExactConfig {
    std::vector<std::uint8_t> occupied;
    BigRat weight;
  };
  std::vector<ExactConfig> configs;

  // MC mode: anchor-0 integer accumulators, index ell = 1..K (0 unused).
  long long num_samples = 0;
  long long anchor_occupied = 0;            // samples with position 0 occupied
  std::vector<long long> count_w;           // W = min{t >= 1 : occupied(t)}
  std::vector<long long> count_sp1;         // Sp1 = Y - X around anchor 0
  std::vector<long long> count_sp2;         // Y given occupied(0)
};

enum class CircleMode { Exact, MC };

// Distributions of W (g), Sp1 (f1) and Sp2 (f2) over ell = 1..K, plus the
// occupation density rho. Exact mode carries rationals; *_d doubles are
// always populated. resid1/resid2 hold the per-ell defects of
//   -dg(ell) * ell - f1(ell)   and   -dg(ell) - rho * f2(ell),
// where dg(ell) = g(ell+1) - g(ell) and g(K+1) = 0.
struct SpacingReport {
  long long K = 0;
  bool exact = false;
  std::vector<BigRat> g, f1, f2;
  BigRat rho{0};
  std::vector<double> g_d, f1_d, f2_d;
  double rho_d = 0.0;
  std::vector<BigRat> resid1, resid2;
  std::vector<double> resid1_d, resid2_d;

  std::string to_csv() const;   // columns: ell,g,f1,f2,resid1,resid2
  std::string to_json() const;  // rationals serialized as "p/q"
};

struct ResidualReport {
  std::vector<BigRat> resid1, resid2;
  std::vector<double> resid1_d, resid2_d;
  double max_abs = 0.0;
  bool exact_zero = false;  // true iff every rational residual is exactly 0
};

// min{t >= 1 : s_t = k} within the base word (every swap occurs).
int first_swap_time(const SortingNetwork& net, int k);

// Y - X with X = max{t <= a : s_t = k}, Y = min{t > a : s_t = k} over the
// periodic extension.
long long spacing_sp1(const SortingNetwork& net, int k, long long a = 0);

// One draw of the conditional spacing via the tableau reduction: the first
// step at which the truncated removal process of a uniform SYT of
// Delta_n minus (n-k, k) clears a neighbor cell of the removed corner.
long long sample_conditional_spacing(int n, int k, Rng& rng);

// Exact mode enumerates Omega_n (n <= 5); MC mode accumulates num_samples
// anchor-0 draws.
CircleProcess circle_from_networks(int n, int k, CircleMode mode, long long num_samples = 0,
                                   Rng* rng = nullptr);

SpacingReport circle_stats(const CircleProcess& p);

ResidualReport check_circle_relations(const SpacingReport& r);

// P(s_t = k) = count_syt(Delta_n minus (n-k,k)) / count_syt(Delta_n),
// computed as the hook-length ratio (1/N) * prod hook/(hook-1) over the
// removed corner's row and column.
BigRat rho_exact(int n, int k);

// 4 / (sqrt(pi) n^{3/2}) * (2k-1)!!/(2k-2)!!
double rho_asym(int n, int k);

}  // namespace rsn
