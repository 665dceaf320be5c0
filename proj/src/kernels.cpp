#include "rsnlab/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "rsnlab/errors.hpp"

namespace rsn {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double lfact(long long m) { return std::lgamma(static_cast<double>(m) + 1.0); }

// 50-digit floats for residue sums whose alternating terms reach ~e^{u^2}
// while cancelling down to ~e^{-u^2}; double noise per term ruins u >~ 4.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

const BigFloat& big_fact(long long m) {
  assert(m >= 0);
  static thread_local std::vector<BigFloat> table{BigFloat(1)};
  while (static_cast<long long>(table.size()) <= m)
    table.push_back(table.back() * static_cast<long long>(table.size()));
  return table[static_cast<std::size_t>(m)];
}

// Gamma(t/2) at a non-pole integer t: factorial for even t, tgamma otherwise.
BigFloat big_gamma_half(long long t) {
  if (t > 0 && t % 2 == 0) return big_fact(t / 2 - 1);
  return boost::math::tgamma(BigFloat(t) / 2);
}

// Sign-and-log representation; products of Gamma factors stay representable
// far beyond double range.
struct LogVal {
  int sign = 0;
  double lg = 0.0;

  static LogVal one() { return {1, 0.0}; }
  static LogVal from(double v) {
    if (v == 0.0) return {0, 0.0};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
  }
  LogVal& operator*=(const LogVal& o) {
    if (sign == 0 || o.sign == 0) {
      sign = 0;
      lg = 0.0;
      return *this;
    }
    sign *= o.sign;
    lg += o.lg;
    return *this;
  }
  long double value() const {
    if (sign == 0) return 0.0L;
    if (lg > 11000.0) throw NumericError("residue term exceeds representable range");
    return sign * std::exp(static_cast<long double>(lg));
  }
};

// log|Gamma(s)| with sign; s must not be a pole.
LogVal gamma_logval(double s) {
  int sign = 1;
  if (s < 0.0) sign = (static_cast<long long>(std::floor(-s)) % 2 == 0) ? -1 : 1;
  return {sign, std::lgamma(s)};
}

// One factor of a contour integrand, a function of a single variable v that
// is only ever probed at integer points.
struct Factor {
  enum Kind {
    GammaHalf,     // Gamma((a2 v + b2)/2)
    InvGammaHalf,  // 1 / Gamma((a2 v + b2)/2)
    LinearNum,     // (a v + b)
    LinearDen,     // 1 / (a v + b)
    PolyNum,       // prefac * prod_i (v - roots[i])
    PolyDen,       // 1 / (prefac * prod_i (v - roots[i]))
    PowerBase,     // base^v, v >= 0
    ExpLin,        // exp(c v)
  };
  Kind kind;
  long long a2 = 0, b2 = 0;
  long long a = 0, b = 0;
  int prefac_sign = 1;
  std::vector<long long> roots;
  double base = 0.0;
  double c = 0.0;
};

Factor gamma_half(long long a2, long long b2) { return {Factor::GammaHalf, a2, b2, 0, 0, 1, {}, 0, 0}; }
Factor inv_gamma_half(long long a2, long long b2) { return {Factor::InvGammaHalf, a2, b2, 0, 0, 1, {}, 0, 0}; }
Factor linear_num(long long a, long long b) { return {Factor::LinearNum, 0, 0, a, b, 1, {}, 0, 0}; }
Factor linear_den(long long a, long long b) { return {Factor::LinearDen, 0, 0, a, b, 1, {}, 0, 0}; }
Factor poly_num(int prefac, std::vector<long long> roots) {
  return {Factor::PolyNum, 0, 0, 0, 0, prefac, std::move(roots), 0, 0};
}
Factor poly_den(int prefac, std::vector<long long> roots) {
  return {Factor::PolyDen, 0, 0, 0, 0, prefac, std::move(roots), 0, 0};
}
Factor power_base(double u) { return {Factor::PowerBase, 0, 0, 0, 0, 1, {}, u, 0}; }
Factor exp_lin(double c) { return {Factor::ExpLin, 0, 0, 0, 0, 1, {}, 0, c}; }

// Order of the factor at v0: -1 pole, +1 zero, 0 regular.
int factor_order(const Factor& f, long long v0) {
  switch (f.kind) {
    case Factor::GammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      return (t <= 0 && t % 2 == 0) ? -1 : 0;
    }
    case Factor::InvGammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      return (t <= 0 && t % 2 == 0) ? 1 : 0;
    }
    case Factor::LinearNum:
      return (f.a * v0 + f.b == 0) ? 1 : 0;
    case Factor::LinearDen:
      return (f.a * v0 + f.b == 0) ? -1 : 0;
    case Factor::PolyNum:
    case Factor::PolyDen: {
      int c = static_cast<int>(std::count(f.roots.begin(), f.roots.end(), v0));
      return f.kind == Factor::PolyNum ? c : -c;
    }
    default:
      return 0;
  }
}

// Leading Laurent coefficient at v0 when the factor's order there is nonzero,
// otherwise the plain value.
LogVal factor_coeff(const Factor& f, long long v0) {
  switch (f.kind) {
    case Factor::GammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      if (t <= 0 && t % 2 == 0) {
        long long j = -t / 2;  // Gamma(-j + (a2/2)(v - v0)): coeff 2(-1)^j/(j! a2)
        int sign = ((j % 2 == 0) ? 1 : -1) * (f.a2 > 0 ? 1 : -1);
        return {sign, std::log(2.0 / std::abs(static_cast<double>(f.a2))) - lfact(j)};
      }
      return gamma_logval(static_cast<double>(t) / 2.0);
    }
    case Factor::InvGammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      if (t <= 0 && t % 2 == 0) {
        long long p = -t / 2;  // leading coeff (a2/2)(-1)^p p!
        int sign = ((p % 2 == 0) ? 1 : -1) * (f.a2 > 0 ? 1 : -1);
        return {sign, std::log(std::abs(static_cast<double>(f.a2)) / 2.0) + lfact(p)};
      }
      LogVal g = gamma_logval(static_cast<double>(t) / 2.0);
      return {g.sign, -g.lg};
    }
    case Factor::LinearNum: {
      long long t = f.a * v0 + f.b;
      return LogVal::from(static_cast<double>(t == 0 ? f.a : t));
    }
    case Factor::LinearDen: {
      long long t = f.a * v0 + f.b;
      return LogVal::from(1.0 / static_cast<double>(t == 0 ? f.a : t));
    }
    case Factor::PolyNum:
    case Factor::PolyDen: {
      LogVal v{f.prefac_sign, 0.0};
      for (long long r : f.roots) {
        if (r == v0) continue;  // vanishing factor contributes to the order, not the coeff
        v *= LogVal::from(static_cast<double>(v0 - r));
      }
      if (f.kind == Factor::PolyDen) v.lg = -v.lg;
      return v;
    }
    case Factor::PowerBase: {
      assert(v0 >= 0);
      if (v0 == 0) return LogVal::one();
      if (f.base == 0.0) return {0, 0.0};
      return {1, static_cast<double>(v0) * std::log(f.base)};
    }
    case Factor::ExpLin:
      return {1, f.c * static_cast<double>(v0)};
  }
  return LogVal::one();
}

// Same contract as factor_coeff, evaluated in 50-digit arithmetic.
BigFloat factor_coeff_big(const Factor& f, long long v0) {
  switch (f.kind) {
    case Factor::GammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      if (t <= 0 && t % 2 == 0) {
        long long j = -t / 2;
        BigFloat c = 2 / (big_fact(j) * f.a2);
        return (j % 2 == 0) ? c : -c;
      }
      return big_gamma_half(t);
    }
    case Factor::InvGammaHalf: {
      long long t = f.a2 * v0 + f.b2;
      if (t <= 0 && t % 2 == 0) {
        long long p = -t / 2;
        BigFloat c = BigFloat(f.a2) / 2 * big_fact(p);
        return (p % 2 == 0) ? c : -c;
      }
      return 1 / big_gamma_half(t);
    }
    case Factor::LinearNum: {
      long long t = f.a * v0 + f.b;
      return BigFloat(t == 0 ? f.a : t);
    }
    case Factor::LinearDen: {
      long long t = f.a * v0 + f.b;
      return 1 / BigFloat(t == 0 ? f.a : t);
    }
    case Factor::PolyNum:
    case Factor::PolyDen: {
      BigFloat v(f.prefac_sign);
      for (long long r : f.roots) {
        if (r == v0) continue;
        v *= BigFloat(v0 - r);
      }
      return f.kind == Factor::PolyNum ? v : 1 / v;
    }
    case Factor::PowerBase: {
      assert(v0 >= 0);
      if (v0 == 0) return BigFloat(1);
      if (f.base == 0.0) return BigFloat(0);
      return pow(BigFloat(f.base), static_cast<int>(v0));
    }
    case Factor::ExpLin:
      return exp(BigFloat(f.c) * v0);
  }
  return BigFloat(1);
}

// Double contour integral (1/(2 pi i))^2 oint dz oint dw of
// prod(wf)(w) * prod(zf)(z) / (w + z + x2 - x1 + 1), both contours enclosing
// non-negative integers: w over [0, x1), z over the given candidate poles
// plus, when z_gamma_series is set, the pole lattice of the z-side GammaHalf
// factor (z = x2 mod 2, truncated by a relative tail rule).
struct ResidueSpec {
  std::vector<Factor> wf, zf;
  int x1 = 0, x2 = 0;
  std::vector<long long> z_seeds;
  bool z_gamma_series = false;
  int trunc = 400;
  LogVal prefactor = LogVal::one();
};

// big = false: sign-and-log terms, long double accumulation, tail cut at
// 1e-14 of the running peak. big = true: 50-digit terms and accumulation,
// tail cut at 1e-40 of the peak so the cancelled sum keeps ~10 digits even
// when the peak term is ~e^{u^2} above the result.
template <bool big>
double residue_sum_t(const ResidueSpec& s) {
  using Acc = std::conditional_t<big, BigFloat, LogVal>;
  using Real = std::conditional_t<big, BigFloat, long double>;
  auto coeff = [](const Factor& f, long long v0) -> Acc {
    if constexpr (big)
      return factor_coeff_big(f, v0);
    else
      return factor_coeff(f, v0);
  };
  auto to_real = [](const Acc& a) -> Real {
    if constexpr (big)
      return a;
    else
      return a.value();
  };
  auto mag = [](const Real& t) -> Real {
    if constexpr (big)
      return abs(t);
    else
      return std::fabs(t);
  };
  const Real tail_rel = big ? Real(1e-40) : Real(1e-14L);
  const Real max_floor = Real(1e-300);

  Real total(0);
  for (long long m = 0; m < s.x1; ++m) {
    int worder = 0;
    for (const auto& f : s.wf) worder += factor_order(f, m);
    if (worder >= 0) continue;
    if (worder <= -2)
      throw NumericError("double pole in w at " + std::to_string(m));
    Acc wc;
    if constexpr (big)
      wc = s.prefactor.sign * exp(BigFloat(s.prefactor.lg));
    else
      wc = s.prefactor;
    for (const auto& f : s.wf) wc *= coeff(f, m);

    const long long zc = s.x1 - s.x2 - 1 - m;  // cross pole of 1/(w+z+x2-x1+1)
    Real running_max(0);
    auto eval_at = [&](long long z0) -> Real {
      int zo = (z0 == zc) ? -1 : 0;
      for (const auto& f : s.zf) zo += factor_order(f, z0);
      if (zo >= 0) return Real(0);
      if (zo <= -2)
        throw NumericError("double pole in z at " + std::to_string(z0));
      Acc c = wc;
      for (const auto& f : s.zf) c *= coeff(f, z0);
      if (z0 != zc) {
        if constexpr (big)
          c *= 1 / BigFloat(z0 - zc);
        else
          c *= LogVal::from(1.0 / static_cast<double>(z0 - zc));
      }
      Real t = to_real(c);
      running_max = std::max(running_max, mag(t));
      return t;
    };

    std::set<long long> specials;
    for (long long z0 : s.z_seeds)
      if (z0 >= 0) specials.insert(z0);
    if (zc >= 0) specials.insert(zc);
    for (long long z0 : specials) total += eval_at(z0);

    if (s.z_gamma_series) {
      long long z0 = (s.x2 % 2 == 0) ? 0 : 1;
      int consecutive_small = 0;
      bool converged = false;
      for (int step = 0; step < s.trunc; ++step, z0 += 2) {
        if (specials.count(z0)) continue;
        Real t = eval_at(z0);
        total += t;
        if (mag(t) < tail_rel * std::max(running_max, max_floor)) {
          if (++consecutive_small >= 3) {
            converged = true;
            break;
          }
        } else {
          consecutive_small = 0;
        }
      }
      if (!converged)
        throw NumericError("z-residue series did not converge within " +
                           std::to_string(s.trunc) + " terms");
    }
  }
  return static_cast<double>(total);
}

double residue_sum(const ResidueSpec& s) { return residue_sum_t<false>(s); }

// I{u2 < u1, x2 < x1} (u2 - u1)^{x1-x2-1} / (x1-x2-1)!
double indicator_term(int x1, double u1, int x2, double u2) {
  if (!(u2 < u1 && x2 < x1)) return 0.0;
  int e = x1 - x2 - 1;
  double d = u1 - u2;  // > 0; (u2-u1)^e = (-1)^e d^e
  double lg = e * std::log(d) - lfact(e);
  double v = std::exp(lg);
  return (e % 2 == 0) ? v : -v;
}

// Orthonormal Hermite functions hh_j(x) = H_j(x) e^{-x^2/2} / sqrt(j! 2^j sqrt(pi))
// for j = 0..jmax; the recurrence stays O(1)-bounded at every degree.
std::vector<double> hermite_orthonormal(int jmax, double x) {
  std::vector<double> h(static_cast<std::size_t>(jmax) + 1);
  double w = std::exp(-x * x / 2.0) / std::sqrt(kSqrtPi);
  h[0] = w;
  if (jmax >= 1) h[1] = std::sqrt(2.0) * x * w;
  for (int j = 1; j < jmax; ++j)
    h[j + 1] = std::sqrt(2.0 / (j + 1.0)) * x * h[j] - std::sqrt(j / (j + 1.0)) * h[j - 1];
  return h;
}

}  // namespace

double hermite(int j, double x) {
  if (j < 0) throw DomainError("hermite: degree must be >= 0");
  double h0 = 1.0;
  if (j == 0) return h0;
  double h1 = 2.0 * x;
  for (int m = 1; m < j; ++m) {
    double h2 = 2.0 * x * h1 - 2.0 * m * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double kernel_K(int k, double u1, double u2) {
  if (k < 1) throw DomainError("kernel_K: k must be >= 1");
  double sum = 0.0;
  for (int l = 0; l < k; ++l) {
    double nj = std::exp(lfact(2 * l)) * std::ldexp(1.0, 2 * l - 1) * kSqrtPi;
    sum += hermite(2 * l, u1) * hermite(2 * l, u2) / nj;
  }
  return std::exp(-(u1 * u1 + u2 * u2) / 2.0) * sum;
}

double corners_kernel(int x, double u, int y, double v, int trunc) {
  if (x < 2 || y < 2) throw DomainError("corners_kernel: levels must be >= 2");
  if (trunc < 0) throw DomainError("corners_kernel: trunc must be >= 0");
  // Terms H_a(u)H_b(v)/N_b with a-b = x-y rewritten through orthonormal
  // Hermite functions: e^{-u^2} H_a(u)H_b(v)/N_b
  //   = 2^{1+(x-y)/2} e^{(v^2-u^2)/2} hh_a(u) hh_b(v) sqrt(a!/b!).
  int lmin = (x >= y) ? 1 : -trunc;
  int lmax = (x >= y) ? y / 2 : 0;
  if (lmin > lmax) return 0.0;
  int amax = x - 2 * lmin, bmax = y - 2 * lmin;
  std::vector<double> hu = hermite_orthonormal(amax, u);
  std::vector<double> hv = hermite_orthonormal(bmax, v);
  double scale = std::exp((v * v - u * u) / 2.0) * 2.0 * std::pow(2.0, (x - y) / 2.0);
  double sum = 0.0;
  for (int l = lmax; l >= lmin; --l) {
    int a = x - 2 * l, b = y - 2 * l;
    double ratio = std::exp(0.5 * (lfact(a) - lfact(b)));
    sum += hu[a] * hv[b] * ratio;
  }
  double result = scale * sum;
  return (x >= y) ? result : -result;
}

double limiting_kernel_series(int k, double u1, double u2, int i_max, double* tail_bound) {
  if (k < 1) throw DomainError("limiting_kernel_series: k must be >= 1");
  if (i_max < 0) throw DomainError("limiting_kernel_series: i_max must be >= 0");
  // j-block constants u1^{2j} / ((2k-2j-1)! Gamma(j+1/2-k) (2j)!), with
  // Gamma(1/2-m) = (-4)^m m! sqrt(pi)/(2m)!.
  std::vector<long double> cj(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    int m = k - j;
    long double gamma_half_neg = std::pow(-4.0L, m) *
                                 std::exp(static_cast<long double>(lfact(m) - lfact(2 * m))) *
                                 static_cast<long double>(kSqrtPi);
    cj[j] = std::pow(static_cast<long double>(u1), 2 * j) /
            (std::exp(static_cast<long double>(lfact(2 * k - 2 * j - 1))) * gamma_half_neg *
             std::exp(static_cast<long double>(lfact(2 * j))));
  }
  long double u2sq = static_cast<long double>(u2) * u2;
  auto block = [&](int i) -> long double {
    long double oddprod = 1.0L;
    for (int t = 0; t < k; ++t) oddprod *= static_cast<long double>(2 * i + 2 * t + 1);
    long double inner = 0.0L;
    for (int j = 0; j < k; ++j) inner += cj[j] / static_cast<long double>(2 * j + 2 * i + 1);
    long double sgn = ((i + k) % 2 == 0) ? 1.0L : -1.0L;
    return sgn * oddprod * inner;
  };
  long double total = 0.0L;
  long double ipow = 1.0L;  // u2^{2i} / i!
  for (int i = 0; i <= i_max; ++i) {
    total += block(i) * ipow;
    ipow *= u2sq / static_cast<long double>(i + 1);
  }
  long double scale = std::pow(2.0L, k + 1);
  if (tail_bound != nullptr)
    *tail_bound = static_cast<double>(2.0L * std::fabs(block(i_max + 1) * ipow) * scale);
  return static_cast<double>(total * scale);
}

double limiting_kernel_hermite(int k, double u1, double u2) {
  if (k < 1) throw DomainError("limiting_kernel_hermite: k must be >= 1");
  double sum = 0.0;
  for (int l = 0; l < k; ++l) {
    double nj = std::ldexp(1.0, 2 * l - 1) * std::exp(lfact(2 * l)) * kSqrtPi;
    sum += hermite(2 * l, u1) * hermite(2 * l, u2) / nj;
  }
  return std::exp(-u2 * u2) * sum;
}

double limiting_contour_kernel(int x1, double u1, int x2, double u2, int trunc, int condition_k) {
  if (x1 < 0 || x2 < 0) throw DomainError("limiting_contour_kernel: levels must be >= 0");
  if (u1 < 0 || u2 < 0) throw DomainError("limiting_contour_kernel: positions must be >= 0");
  if (condition_k < 0) throw DomainError("limiting_contour_kernel: condition_k must be >= 0");
  ResidueSpec s;
  s.x1 = x1;
  s.x2 = x2;
  s.trunc = trunc;
  s.z_gamma_series = true;
  s.wf = {gamma_half(-2, 0),                       // Gamma(-w)
          inv_gamma_half(-2, 2LL * x1),            // 1/Gamma(x1 - w)
          inv_gamma_half(1, 1LL - x1),             // 1/Gamma((w + 1 - x1)/2)
          power_base(u1)};
  s.zf = {gamma_half(2, 2LL * (x2 + 1)),           // Gamma(z + x2 + 1)
          inv_gamma_half(2, 2),                    // 1/Gamma(z + 1)
          gamma_half(-1, -static_cast<long long>(x2)),  // Gamma(-(z + x2)/2)
          power_base(u2)};
  if (condition_k >= 1) {
    long long k = condition_k;
    s.wf.push_back(linear_num(-1, x1 - 2 * k));
    s.wf.push_back(linear_den(-1, x1 - 2 * k - 1));
    s.zf.push_back(linear_num(1, x2 - 2 * k));
    s.zf.push_back(linear_den(1, x2 - 2 * k + 1));
    s.z_seeds = {2 * k - 1 - x2, 2 * k - x2};
  }
  // Beyond u ~ 2.5 the alternating z-series cancels past double-precision
  // term noise; hand those evaluations to the 50-digit path.
  double body = (std::max(u1, u2) > 2.5) ? residue_sum_t<true>(s) : residue_sum(s);
  return indicator_term(x1, u1, x2, u2) + body;
}

double conditioned_kernel(int k, int x1, double u1, int x2, double u2, int trunc) {
  if (k < 1) throw DomainError("conditioned_kernel: k must be >= 1");
  if (x1 < 2 || x2 < 2) throw DomainError("conditioned_kernel: levels must be >= 2");
  return limiting_contour_kernel(x1, u1, x2, u2, trunc, k);
}

double finite_n_kernel(const Shape& shape, int x1, double u1, int x2, double u2) {
  int n = 0, k = 0;
  bool minus = false;
  if (shape.is_staircase(&n)) {
    minus = false;
  } else if (shape.is_staircase_minus(&n, &k)) {
    minus = true;
  } else {
    throw DomainError("finite_n_kernel: shape must be a staircase, possibly minus one corner");
  }
  if (x1 < 2 || x1 > 2 * n - 2 || x2 < 2 || x2 > 2 * n - 2)
    throw DomainError("finite_n_kernel: levels must lie in [2, 2n-2]");
  if (u1 < 0 || u2 < 0) throw DomainError("finite_n_kernel: positions must be >= 0");
  double ln_n = std::log(static_cast<double>(n));
  std::vector<long long> wroots(static_cast<std::size_t>(n));
  std::vector<long long> zroots(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    wroots[i - 1] = x1 - 2 * n + 2 * i - 1;
    zroots[i - 1] = 2 * n - 2 * i - x2;
  }
  ResidueSpec s;
  s.x1 = x1;
  s.x2 = x2;
  s.z_gamma_series = false;
  s.wf = {gamma_half(-2, 0), inv_gamma_half(-2, 2LL * x1),
          poly_num(n % 2 == 0 ? 1 : -1, wroots), power_base(u1), exp_lin(-0.5 * ln_n)};
  s.zf = {gamma_half(2, 2LL * (x2 + 1)), inv_gamma_half(2, 2), poly_den(1, zroots),
          power_base(u2), exp_lin(-0.5 * ln_n)};
  s.z_seeds = zroots;
  if (minus) {
    s.wf.push_back(linear_num(-1, x1 - 2LL * k));
    s.wf.push_back(linear_den(-1, x1 - 2LL * k - 1));
    s.zf.push_back(linear_num(1, x2 - 2LL * k));
    s.zf.push_back(linear_den(1, x2 - 2LL * k + 1));
    s.z_seeds.push_back(2LL * k - 1 - x2);
    s.z_seeds.push_back(2LL * k - x2);
  }
  // n^{-1/2} from the integrand and n^{(x1-x2)/2} from the normalization.
  s.prefactor = LogVal{1, 0.5 * (x1 - x2 - 1) * ln_n};
  return indicator_term(x1, u1, x2, u2) + residue_sum(s);
}

double evaluate_kernel(const KernelQuery& q, double u1, double u2) {
  if (q.family == "K_k") return kernel_K(q.k, u1, u2);
  if (q.family == "corners") return corners_kernel(q.x1, u1, q.x2, u2, q.trunc);
  if (q.family == "limiting_series") return limiting_kernel_series(q.k, u1, u2, q.i_max);
  if (q.family == "limiting_hermite") return limiting_kernel_hermite(q.k, u1, u2);
  if (q.family == "conditioned") return conditioned_kernel(q.k, q.x1, u1, q.x2, u2, q.trunc);
  if (q.family == "finite_n") {
    Shape shape = q.minus_corner ? Shape::staircase_minus(q.n, q.k) : Shape::staircase(q.n);
    return finite_n_kernel(shape, q.x1, u1, q.x2, u2);
  }
  throw DomainError("evaluate_kernel: unknown family " + q.family);
}

void write_kernel_grid_csv(std::ostream& out, const KernelQuery& q,
                           const std::vector<double>& u1_grid,
                           const std::vector<double>& u2_grid) {
  out << "u1,u2,value\n" << std::setprecision(17);
  for (double u1 : u1_grid)
    for (double u2 : u2_grid) out << u1 << ',' << u2 << ',' << evaluate_kernel(q, u1, u2) << '\n';
}

std::string kernel_query_json(const KernelQuery& q) {
  nlohmann::json j{{"family", q.family}, {"k", q.k},       {"n", q.n},
                   {"minus_corner", q.minus_corner},       {"x1", q.x1},
                   {"x2", q.x2},         {"trunc", q.trunc}, {"i_max", q.i_max}};
  return j.dump();
}

}  // namespace rsn
