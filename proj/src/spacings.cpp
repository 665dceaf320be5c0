#include "rsnlab/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rsnlab/tableau.hpp"

namespace rsn {

namespace {

std::string rat_str(const BigRat& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

void check_k(int n, int k, const char* who) {
  if (k < 1 || k > n - 1)
    throw DomainError(std::string(who) + ": k = " + std::to_string(k) + " outside 1..n-1");
}

}  // namespace

int first_swap_time(const SortingNetwork& net, int k) {
  check_k(net.n(), k, "first_swap_time");
  const auto& s = net.swaps();
  for (std::size_t t = 0; t < s.size(); ++t)
    if (s[t] == k) return static_cast<int>(t + 1);
  throw NumericError("first_swap_time: swap never occurs");
}

long long spacing_sp1(const SortingNetwork& net, int k, long long a) {
  check_k(net.n(), k, "spacing_sp1");
  const long long period = 2 * net.N();
  long long y = 0, x = 0;
  bool found_y = false, found_x = false;
  for (long long t = a + 1; t <= a + period; ++t)
    if (net.periodic_lookup(t) == k) {
      y = t;
      found_y = true;
      break;
    }
  for (long long t = a; t > a - period; --t)
    if (net.periodic_lookup(t) == k) {
      x = t;
      found_x = true;
      break;
    }
  if (!found_y || !found_x) throw NumericError("spacing_sp1: swap never occurs");
  return y - x;
}

long long sample_conditional_spacing(int n, int k, Rng& rng) {
  if (n < 2) throw DomainError("sample_conditional_spacing: need n >= 2");
  check_k(n, k, "sample_conditional_spacing");
  const long long N = static_cast<long long>(n) * (n - 1) / 2;
  // Conditioning on a swap at the anchor reduces the spacing to the first
  // removal step that clears a neighbor of the removed staircase corner in a
  // uniform SYT of the punctured shape (missing neighbors count as removed at
  // step N).
  std::vector<Cell> watch;
  if (k >= 2) watch.push_back({n - k, k - 1});
  if (k <= n - 2) watch.push_back({n - k - 1, k});
  if (watch.empty()) return N;  // n = 2: the single swap occupies every slot
  std::vector<long long> steps = removal_steps(Shape::staircase_minus(n, k), watch, rng);
  return *std::min_element(steps.begin(), steps.end());
}

CircleProcess circle_from_networks(int n, int k, CircleMode mode, long long num_samples,
                                   Rng* rng) {
  if (n < 2) throw DomainError("circle_from_networks: need n >= 2");
  check_k(n, k, "circle_from_networks");
  CircleProcess p;
  p.n = n;
  p.k = k;
  p.K = static_cast<long long>(n) * (n - 1);

  if (mode == CircleMode::Exact) {
    if (n > 5) throw ResourceError("circle_from_networks: exact mode requires n <= 5");
    p.exact = true;
    std::vector<SortingNetwork> nets = enumerate_networks(n);
    const BigRat w(1, static_cast<long long>(nets.size()));
    for (const SortingNetwork& net : nets) {
      CircleProcess::ExactConfig cfg;
      cfg.occupied.resize(static_cast<std::size_t>(p.K));
      for (long long t = 1; t <= p.K; ++t)
        cfg.occupied[static_cast<std::size_t>(t - 1)] = net.periodic_lookup(t) == k ? 1 : 0;
      cfg.weight = w;
      p.configs.push_back(std::move(cfg));
    }
    return p;
  }

  if (num_samples <= 0) throw DomainError("circle_from_networks: MC mode needs num_samples > 0");
  if (rng == nullptr) throw DomainError("circle_from_networks: MC mode needs an RNG");
  p.count_w.assign(static_cast<std::size_t>(p.K + 1), 0);
  p.count_sp1.assign(static_cast<std::size_t>(p.K + 1), 0);
  p.count_sp2.assign(static_cast<std::size_t>(p.K + 1), 0);
  for (long long s = 0; s < num_samples; ++s) {
    SortingNetwork net = sample_network(n, *rng);
    const long long w = first_swap_time(net, k);  // positions 1..N are the base word
    const long long sp1 = spacing_sp1(net, k, 0);
    ++p.count_w[static_cast<std::size_t>(w)];
    ++p.count_sp1[static_cast<std::size_t>(sp1)];
    if (net.periodic_lookup(0) == k) {
      ++p.anchor_occupied;
      ++p.count_sp2[static_cast<std::size_t>(w)];
    }
  }
  p.num_samples = num_samples;
  return p;
}

SpacingReport circle_stats(const CircleProcess& p) {
  SpacingReport r;
  r.K = p.K;
  r.exact = p.exact;
  const auto sz = static_cast<std::size_t>(p.K + 1);
  r.g_d.assign(sz, 0.0);
  r.f1_d.assign(sz, 0.0);
  r.f2_d.assign(sz, 0.0);

  if (p.exact) {
    r.g.assign(sz, BigRat(0));
    r.f1.assign(sz, BigRat(0));
    r.f2.assign(sz, BigRat(0));
    for (const auto& cfg : p.configs) {
      if (std::find(cfg.occupied.begin(), cfg.occupied.end(), 1) == cfg.occupied.end())
        throw DomainError("circle_stats: empty configuration");
      auto occ = [&](long long t) {
        long long idx = ((t - 1) % p.K + p.K) % p.K;  // position t on the circle
        return cfg.occupied[static_cast<std::size_t>(idx)] != 0;
      };
      long long w = 1;
      while (!occ(w)) ++w;
      long long x = 0;
      while (!occ(x)) --x;
      r.g[static_cast<std::size_t>(w)] += cfg.weight;
      r.f1[static_cast<std::size_t>(w - x)] += cfg.weight;
      if (occ(0)) {
        r.rho += cfg.weight;
        r.f2[static_cast<std::size_t>(w)] += cfg.weight;
      }
    }
    if (r.rho == 0) throw DomainError("circle_stats: anchor never occupied");
    for (auto& v : r.f2) v /= r.rho;
    for (std::size_t i = 1; i < sz; ++i) {
      r.g_d[i] = big_to_double(r.g[i]);
      r.f1_d[i] = big_to_double(r.f1[i]);
      r.f2_d[i] = big_to_double(r.f2[i]);
    }
    r.rho_d = big_to_double(r.rho);
  } else {
    if (p.num_samples <= 0) throw DomainError("circle_stats: no samples");
    const double inv = 1.0 / static_cast<double>(p.num_samples);
    for (std::size_t i = 1; i < sz; ++i) {
      r.g_d[i] = static_cast<double>(p.count_w[i]) * inv;
      r.f1_d[i] = static_cast<double>(p.count_sp1[i]) * inv;
      if (p.anchor_occupied > 0)
        r.f2_d[i] = static_cast<double>(p.count_sp2[i]) / static_cast<double>(p.anchor_occupied);
    }
    r.rho_d = static_cast<double>(p.anchor_occupied) * inv;
  }

  ResidualReport rr = check_circle_relations(r);
  r.resid1 = rr.resid1;
  r.resid2 = rr.resid2;
  r.resid1_d = rr.resid1_d;
  r.resid2_d = rr.resid2_d;
  return r;
}

ResidualReport check_circle_relations(const SpacingReport& r) {
  ResidualReport out;
  const auto sz = static_cast<std::size_t>(r.K + 1);
  out.resid1_d.assign(sz, 0.0);
  out.resid2_d.assign(sz, 0.0);
  if (r.exact) {
    out.resid1.assign(sz, BigRat(0));
    out.resid2.assign(sz, BigRat(0));
    out.exact_zero = true;
    for (long long ell = 1; ell <= r.K; ++ell) {
      const auto i = static_cast<std::size_t>(ell);
      BigRat dg = (ell < r.K ? r.g[i + 1] : BigRat(0)) - r.g[i];
      out.resid1[i] = -dg * ell - r.f1[i];
      out.resid2[i] = -dg - r.rho * r.f2[i];
      if (out.resid1[i] != 0 || out.resid2[i] != 0) out.exact_zero = false;
      out.resid1_d[i] = big_to_double(out.resid1[i]);
      out.resid2_d[i] = big_to_double(out.resid2[i]);
    }
  } else {
    for (long long ell = 1; ell <= r.K; ++ell) {
      const auto i = static_cast<std::size_t>(ell);
      double dg = (ell < r.K ? r.g_d[i + 1] : 0.0) - r.g_d[i];
      out.resid1_d[i] = -dg * static_cast<double>(ell) - r.f1_d[i];
      out.resid2_d[i] = -dg - r.rho_d * r.f2_d[i];
    }
  }
  for (std::size_t i = 1; i < sz; ++i)
    out.max_abs = std::max({out.max_abs, std::abs(out.resid1_d[i]), std::abs(out.resid2_d[i])});
  return out;
}

std::string SpacingReport::to_csv() const {
  std::ostringstream os;
  os << "ell,g,f1,f2,resid1,resid2\n";
  for (long long ell = 1; ell <= K; ++ell) {
    const auto i = static_cast<std::size_t>(ell);
    os << ell << ",";
    if (exact)
      os << rat_str(g[i]) << "," << rat_str(f1[i]) << "," << rat_str(f2[i]) << ","
         << rat_str(resid1[i]) << "," << rat_str(resid2[i]);
    else {
      os.precision(17);
      os << g_d[i] << "," << f1_d[i] << "," << f2_d[i] << "," << resid1_d[i] << ","
         << resid2_d[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string SpacingReport::to_json() const {
  nlohmann::json j;
  j["K"] = K;
  j["mode"] = exact ? "exact" : "mc";
  if (exact) {
    j["rho"] = rat_str(rho);
    auto dump = [&](const std::vector<BigRat>& v) {
      std::vector<std::string> out;
      for (long long ell = 1; ell <= K; ++ell)
        out.push_back(rat_str(v[static_cast<std::size_t>(ell)]));
      return out;
    };
    j["g"] = dump(g);
    j["f1"] = dump(f1);
    j["f2"] = dump(f2);
    j["resid1"] = dump(resid1);
    j["resid2"] = dump(resid2);
  } else {
    j["rho"] = rho_d;
    auto dump = [&](const std::vector<double>& v) {
      return std::vector<double>(v.begin() + 1, v.end());
    };
    j["g"] = dump(g_d);
    j["f1"] = dump(f1_d);
    j["f2"] = dump(f2_d);
    j["resid1"] = dump(resid1_d);
    j["resid2"] = dump(resid2_d);
  }
  return j.dump();
}

BigRat rho_exact(int n, int k) {
  if (n < 2) throw DomainError("rho_exact: need n >= 2");
  check_k(n, k, "rho_exact");
  const Shape full = Shape::staircase(n);
  BigRat r(1, full.size());
  // Removing corner (n-k, k) shortens the hooks of its row and column by one;
  // all other hooks cancel in the SYT-count ratio.
  for (int j = 1; j <= k - 1; ++j) {
    const int h = full.hook_length(n - k, j);
    r *= BigRat(h, h - 1);
  }
  for (int i = 1; i <= n - k - 1; ++i) {
    const int h = full.hook_length(i, k);
    r *= BigRat(h, h - 1);
  }
  return r;
}

double rho_asym(int n, int k) {
  if (n < 2) throw DomainError("rho_asym: need n >= 2");
  check_k(n, k, "rho_asym");
  double ratio = 1.0;  // (2k-1)!!/(2k-2)!! accumulated factor-by-factor
  for (int v = 3; v <= 2 * k - 1; v += 2) ratio *= static_cast<double>(v) / (v - 1);
  return 4.0 / (std::sqrt(M_PI) * std::pow(static_cast<double>(n), 1.5)) * ratio;
}

}  // namespace rsn
