#pragma once

#include <string>
#include <vector>

#include "rsnlab/tableau.hpp"

namespace rsn {

// Reduced word for the reverse permutation: N = n(n-1)/2 adjacent swap
// indices in 1..n-1 whose left-to-right product reverses (1, ..., n).
class SortingNetwork {
 public:
  SortingNetwork(int n, std::vector<int> swaps);

  int n() const { return n_; }
  long long N() const { return static_cast<long long>(swaps_.size()); }
  const std::vector<int>& swaps() const { return swaps_; }

  // 2N-periodic extension with s_{t+N} = n - s_t, defined for every integer t.
  int periodic_lookup(long long t) const;

  // (s_2, ..., s_N, n - s_1); stays a sorting network.
  SortingNetwork shifted() const;

  std::string to_json() const;
  static SortingNetwork from_json(const std::string& text);

  friend bool operator==(const SortingNetwork&, const SortingNetwork&) = default;
  friend auto operator<=>(const SortingNetwork&, const SortingNetwork&) = default;

 private:
  int n_ = 0;
  std::vector<int> swaps_;
};

// True iff swaps has length n(n-1)/2 and multiplies to the reverse
// permutation; swap values outside 1..n-1 are a domain error.
bool is_sorting_network(int n, const std::vector<int>& swaps);

// C(n,2)! / prod_{j=1}^{n-1} (2n-1-2j)^j, exact.
BigInt stanley_count(int n);

// All sorting networks via inversion-increasing depth-first search.
std::vector<SortingNetwork> enumerate_networks(int n, int cap = 5);

// The sliding bijection from staircase SYT to sorting networks.
SortingNetwork edelman_greene(const StandardTableau& t);

// Uniform sorting network: edelman_greene of a uniform staircase SYT.
SortingNetwork sample_network(int n, Rng& rng);

// Wiring diagram as a standalone SVG document; byte-deterministic.
std::string wiring_svg(const SortingNetwork& net);

}  // namespace rsn
