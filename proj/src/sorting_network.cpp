#include "rsnlab/sorting_network.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace rsn {

SortingNetwork::SortingNetwork(int n, std::vector<int> swaps) : n_(n), swaps_(std::move(swaps)) {
  if (!is_sorting_network(n_, swaps_))
    throw DomainError("SortingNetwork: sequence is not a reduced word for the reverse permutation");
}

bool is_sorting_network(int n, const std::vector<int>& swaps) {
  if (n < 2) throw DomainError("is_sorting_network: need n >= 2");
  for (int s : swaps)
    if (s < 1 || s > n - 1)
      throw DomainError("is_sorting_network: swap index " + std::to_string(s) + " outside 1..n-1");
  if (static_cast<long long>(swaps.size()) != static_cast<long long>(n) * (n - 1) / 2) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int s : swaps) std::swap(perm[static_cast<std::size_t>(s - 1)], perm[static_cast<std::size_t>(s)]);
  for (int i = 0; i < n; ++i)
    if (perm[static_cast<std::size_t>(i)] != n - i) return false;
  return true;
}

int SortingNetwork::periodic_lookup(long long t) const {
  const long long period = 2 * N();
  long long r = ((t - 1) % period + period) % period + 1;  // in 1..2N
  if (r <= N()) return swaps_[static_cast<std::size_t>(r - 1)];
  return n_ - swaps_[static_cast<std::size_t>(r - N() - 1)];
}

SortingNetwork SortingNetwork::shifted() const {
  std::vector<int> s(swaps_.begin() + 1, swaps_.end());
  s.push_back(n_ - swaps_.front());
  return SortingNetwork(n_, std::move(s));
}

std::string SortingNetwork::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["swaps"] = swaps_;
  return j.dump();
}

SortingNetwork SortingNetwork::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return SortingNetwork(j.at("n").get<int>(), j.at("swaps").get<std::vector<int>>());
}

BigInt stanley_count(int n) {
  if (n < 2) throw DomainError("stanley_count: need n >= 2");
  const long long N = static_cast<long long>(n) * (n - 1) / 2;
  BigInt numer = factorial_big(N);
  BigInt denom = 1;
  for (long long j = 1; j <= n - 1; ++j) {
    BigInt base = 2 * n - 1 - 2 * j;
    for (long long p = 0; p < j; ++p) denom *= base;
  }
  BigInt q = numer / denom;
  if (q * denom != numer) throw NumericError("stanley_count: denominator does not divide N!");
  return q;
}

std::vector<SortingNetwork> enumerate_networks(int n, int cap) {
  if (n < 2) throw DomainError("enumerate_networks: need n >= 2");
  if (n > cap)
    throw ResourceError("enumerate_networks: n = " + std::to_string(n) +
                        " exceeds the enumeration cap of " + std::to_string(cap));
  const long long N = static_cast<long long>(n) * (n - 1) / 2;
  std::vector<SortingNetwork> out;
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(N));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);

  // Each appended swap must increase the inversion count; words of length N
  // built this way are exactly the reduced words for the reverse permutation.
  std::function<void()> rec = [&]() {
    if (static_cast<long long>(word.size()) == N) {
      out.emplace_back(n, word);
      return;
    }
    for (int k = 1; k <= n - 1; ++k) {
      auto& a = perm[static_cast<std::size_t>(k - 1)];
      auto& b = perm[static_cast<std::size_t>(k)];
      if (a < b) {
        std::swap(a, b);
        word.push_back(k);
        rec();
        word.pop_back();
        std::swap(a, b);
      }
    }
  };
  rec();
  return out;
}

SortingNetwork edelman_greene(const StandardTableau& t) {
  int n = 0;
  if (!t.shape().is_staircase(&n))
    throw DomainError("edelman_greene: tableau shape must be a staircase");
  const long long N = t.shape().size();

  // Offset trick: stored keys stay constant while the true entry equals
  // key + (r - 1) during iteration r, so the global "+1 to every entry" step
  // costs nothing. The true maximum N is always the cell holding key N-r+1.
  std::vector<int> grid(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  auto gat = [&](int i, int j) -> int& { return grid[static_cast<std::size_t>(i * (n + 1) + j)]; };
  std::vector<Cell> where(static_cast<std::size_t>(2 * N), Cell{});
  auto wat = [&](long long key) -> Cell& { return where[static_cast<std::size_t>(key + N - 1)]; };

  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - i; ++j) {
      gat(i, j) = t.at(i, j);
      wat(t.at(i, j)) = {i, j};
    }

  std::vector<int> swaps(static_cast<std::size_t>(N), 0);
  for (long long r = 1; r <= N; ++r) {
    Cell hole = wat(N - r + 1);
    if (hole.i + hole.j != n)
      throw NumericError("edelman_greene: maximum entry is not at a staircase corner");
    swaps[static_cast<std::size_t>(r - 1)] = hole.j;
    while (!(hole.i == 1 && hole.j == 1)) {
      Cell next{};
      if (hole.i >= 2 && hole.j >= 2)
        next = gat(hole.i - 1, hole.j) > gat(hole.i, hole.j - 1) ? Cell{hole.i - 1, hole.j}
                                                                 : Cell{hole.i, hole.j - 1};
      else if (hole.i >= 2)
        next = {hole.i - 1, hole.j};
      else
        next = {hole.i, hole.j - 1};
      const int key = gat(next.i, next.j);
      gat(hole.i, hole.j) = key;
      wat(key) = hole;
      hole = next;
    }
    gat(1, 1) = static_cast<int>(1 - r);
    wat(1 - r) = {1, 1};
  }
  return SortingNetwork(n, std::move(swaps));
}

SortingNetwork sample_network(int n, Rng& rng) {
  return edelman_greene(sample_syt(Shape::staircase(n), rng));
}

std::string wiring_svg(const SortingNetwork& net) {
  const int n = net.n();
  const auto N = static_cast<int>(net.N());
  const int margin = 30, dx = 40, dy = 30;
  const int width = 2 * margin + N * dx;
  const int height = 2 * margin + (n - 1) * dy;
  // Track 1 is drawn at the bottom; swap k crosses tracks k and k+1.
  auto ty = [&](double track) { return margin + (n - track) * dy; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";

  std::vector<int> track(static_cast<std::size_t>(n + 1));  // wire -> track
  for (int w = 1; w <= n; ++w) track[static_cast<std::size_t>(w)] = w;
  std::vector<std::vector<double>> path(static_cast<std::size_t>(n + 1));
  for (int w = 1; w <= n; ++w) path[static_cast<std::size_t>(w)].push_back(ty(track[static_cast<std::size_t>(w)]));
  for (int t = 1; t <= N; ++t) {
    const int k = net.swaps()[static_cast<std::size_t>(t - 1)];
    for (int w = 1; w <= n; ++w) {
      auto& tr = track[static_cast<std::size_t>(w)];
      if (tr == k)
        tr = k + 1;
      else if (tr == k + 1)
        tr = k;
      path[static_cast<std::size_t>(w)].push_back(ty(tr));
    }
  }
  for (int w = 1; w <= n; ++w) {
    svg << "<polyline fill=\"none\" stroke=\"" << palette[(w - 1) % 8]
        << "\" stroke-width=\"2\" points=\"";
    for (int t = 0; t <= N; ++t)
      svg << (t ? " " : "") << margin + t * dx << "," << path[static_cast<std::size_t>(w)][static_cast<std::size_t>(t)];
    svg << "\"/>\n";
  }
  for (int t = 1; t <= N; ++t) {
    const int k = net.swaps()[static_cast<std::size_t>(t - 1)];
    svg << "<circle cx=\"" << margin + t * dx - dx / 2 << "\" cy=\"" << ty(k + 0.5)
        << "\" r=\"3\" fill=\"black\"/>\n";
  }
  for (int w = 1; w <= n; ++w)
    svg << "<text x=\"" << margin - 22 << "\" y=\"" << ty(w) + 4 << "\" font-size=\"12\">" << w
        << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rsn
