#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rsnlab/errors.hpp"
#include "rsnlab/kernels.hpp"
#include "rsnlab/rng.hpp"
#include "rsnlab/rotate.hpp"
#include "rsnlab/tableau.hpp"

using namespace rsn;

namespace {

const double kPi = std::acos(-1.0);
const double kSqrtPi = std::sqrt(kPi);

// Trapezoid on a uniform grid; exponentially accurate for analytic integrands
// that die off inside the window.
double integrate(const std::function<double(double)>& f, double lo, double hi, int cells) {
  double h = (hi - lo) / cells;
  double s = 0.5 * (f(lo) + f(hi));
  for (int i = 1; i < cells; ++i) s += f(lo + i * h);
  return s * h;
}

// Even Hermite polynomial through the alternating exponential series
// H_{2k}(u) = e^{u^2} 2^k sum_i (-1)^{i+k} u^{2i} prod_{a=1}^k (2i+2a-1) / i!.
double even_hermite_series(int k, double u) {
  long double sum = 0.0L;
  long double upow = 1.0L;  // u^{2i} / i!
  for (int i = 0; i <= 120; ++i) {
    long double prod = 1.0L;
    for (int a = 1; a <= k; ++a) prod *= static_cast<long double>(2 * i + 2 * a - 1);
    long double term = upow * prod;
    if ((i + k) % 2 != 0) term = -term;
    sum += term;
    upow *= static_cast<long double>(u) * u / (i + 1);
  }
  long double scale = std::exp(static_cast<long double>(u) * u) * std::pow(2.0L, k);
  return static_cast<double>(scale * sum);
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }

}  // namespace

TEST_CASE("hermite recurrence against hand values") {
  for (double x : {-1.3, 0.0, 0.4, 2.7}) {
    CHECK(hermite(0, x) == 1.0);
    CHECK(hermite(1, x) == doctest::Approx(2 * x).epsilon(1e-14));
    CHECK(hermite(2, x) == doctest::Approx(4 * x * x - 2).epsilon(1e-14));
    CHECK(hermite(3, x) == doctest::Approx(8 * x * x * x - 12 * x).epsilon(1e-14));
    CHECK(hermite(4, x) ==
          doctest::Approx(16 * std::pow(x, 4) - 48 * x * x + 12).epsilon(1e-14));
  }
  CHECK(hermite(10, 0.0) == doctest::Approx(-30240.0).epsilon(1e-14));
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
}

TEST_CASE("hermite orthogonality under the gaussian weight") {
  // int H_i H_j e^{-x^2} = delta_ij i! 2^i sqrt(pi), checked by quadrature.
  for (int i = 0; i <= 12; ++i)
    for (int j = i; j <= 12; ++j) {
      double val = integrate(
          [&](double x) { return hermite(i, x) * hermite(j, x) * std::exp(-x * x); }, -14.0,
          14.0, 5600);
      double norm = std::tgamma(i + 1.0) * std::pow(2.0, i) * kSqrtPi;
      if (i == j)
        CHECK(val == doctest::Approx(norm).epsilon(1e-8));
      else
        CHECK(std::fabs(val) < 1e-8 * norm);
    }
}

TEST_CASE("even hermite exponential series identity") {
  for (int k = 0; k <= 4; ++k)
    for (double u = 0.0; u <= 3.0 + 1e-9; u += 0.25) {
      double ref = hermite(2 * k, u);
      CHECK(even_hermite_series(k, u) ==
            doctest::Approx(ref).epsilon(1e-8).scale(std::max(1.0, std::fabs(ref))));
    }
}

TEST_CASE("closed forms of the projection kernel") {
  for (double u1 : {0.0, 0.3, 1.1, 2.4})
    for (double u2 : {0.0, 0.7, 1.9}) {
      double gauss = std::exp(-(u1 * u1 + u2 * u2) / 2);
      CHECK(kernel_K(1, u1, u2) == doctest::Approx(2 / kSqrtPi * gauss).epsilon(1e-12));
      double k2 = ((1 - 2 * u1 * u1) * (1 - 2 * u2 * u2) + 2) / kSqrtPi * gauss;
      CHECK(kernel_K(2, u1, u2) == doctest::Approx(k2).epsilon(1e-12));
      CHECK(kernel_K(3, u1, u2) == doctest::Approx(kernel_K(3, u2, u1)).epsilon(1e-12));
    }
  CHECK_THROWS_AS(kernel_K(0, 0.0, 0.0), DomainError);
}

TEST_CASE("kernel diagonal at the origin is a double factorial ratio") {
  double dfo = 1.0, dfe = 1.0;  // (2k-1)!!, (2k-2)!!
  for (int k = 1; k <= 5; ++k) {
    dfo *= 2 * k - 1;
    if (k > 1) dfe *= 2 * k - 2;
    CHECK(kernel_K(k, 0.0, 0.0) == doctest::Approx(2 / kSqrtPi * dfo / dfe).epsilon(1e-12));
  }
}

TEST_CASE("projection kernel two-point determinants are nonnegative") {
  Rng g = make_rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    int k = 1 + static_cast<int>(rng_below(g, 4));
    double u1 = 3.0 * rng_unit(g), u2 = 3.0 * rng_unit(g);
    double d = det2(kernel_K(k, u1, u1), kernel_K(k, u1, u2), kernel_K(k, u2, u1),
                    kernel_K(k, u2, u2));
    CHECK(d >= -1e-10);
  }
}

TEST_CASE("corner kernel descending branch is an exact finite sum") {
  for (double u : {0.1, 0.8, 1.7})
    for (double v : {0.0, 0.5, 2.2}) {
      // (x, y) = (4, 2) keeps one term: e^{-u^2} H_2(u) H_0(v) / N_0.
      double expect = std::exp(-u * u) * (4 * u * u - 2) / (kSqrtPi / 2);
      CHECK(corners_kernel(4, u, 2, v) == doctest::Approx(expect).epsilon(1e-12));
      // The descending branch never touches the truncation order.
      CHECK(corners_kernel(4, u, 2, v, 7) == corners_kernel(4, u, 2, v, 500));
      CHECK(corners_kernel(2, u, 2, v) ==
            doctest::Approx(2 / kSqrtPi * std::exp(-u * u)).epsilon(1e-12));
    }
}

TEST_CASE("corner and projection kernels agree through gauge-free determinants") {
  // Same-level two-point minors are conjugation invariant, so the two kernel
  // normalizations must give identical values.
  for (int k = 1; k <= 3; ++k)
    for (double u : {0.2, 0.9})
      for (double v : {0.5, 1.6}) {
        int x = 2 * k;
        double dc = det2(corners_kernel(x, u, x, u), corners_kernel(x, u, x, v),
                         corners_kernel(x, v, x, u), corners_kernel(x, v, x, v));
        double dk = det2(kernel_K(k, u, u), kernel_K(k, u, v), kernel_K(k, v, u),
                         kernel_K(k, v, v));
        CHECK(dc == doctest::Approx(dk).epsilon(1e-12).scale(std::max(1.0, std::fabs(dk))));
        // Diagonals are gauge free on their own.
        CHECK(corners_kernel(x, u, x, u) == doctest::Approx(kernel_K(k, u, u)).epsilon(1e-12));
      }
}

TEST_CASE("ascending corner branch settles as the truncation grows") {
  double coarse = corners_kernel(2, 0.4, 4, 0.9, 100);
  double mid = corners_kernel(2, 0.4, 4, 0.9, 1000);
  double fine = corners_kernel(2, 0.4, 4, 0.9, 8000);
  CHECK(std::isfinite(coarse));
  CHECK(std::fabs(mid - fine) < std::fabs(coarse - fine) + 1e-15);
  CHECK(std::fabs(mid - fine) < 1e-3);
}

TEST_CASE("series and resummed forms of the limiting slice coincide") {
  for (int k = 1; k <= 4; ++k)
    for (double u1 = 0.0; u1 <= 3.0 + 1e-9; u1 += 0.5)
      for (double u2 = 0.0; u2 <= 3.0 + 1e-9; u2 += 0.5) {
        double a = limiting_kernel_series(k, u1, u2);
        double b = limiting_kernel_hermite(k, u1, u2);
        CHECK(a == doctest::Approx(b).epsilon(1e-8).scale(std::max(1.0, std::fabs(b))));
      }
  // At u2 = 0 only the i = 0 block survives, so the cutoff is irrelevant.
  for (double u1 : {0.0, 1.0, 2.5})
    CHECK(limiting_kernel_series(2, u1, 0.0, 1) ==
          doctest::Approx(limiting_kernel_series(2, u1, 0.0, 80)).epsilon(1e-14));
  double tail = -1.0;
  limiting_kernel_series(2, 1.0, 1.0, 80, &tail);
  CHECK(tail >= 0.0);
  CHECK(tail < 1e-10);
}

TEST_CASE("residue evaluation matches the resummed slice on even diagonals") {
  for (int k = 1; k <= 3; ++k)
    for (double u : {0.0, 0.6, 1.4, 2.2, 3.2}) {
      double a = limiting_contour_kernel(2 * k, u, 2 * k, u);
      double b = limiting_kernel_hermite(k, u, u);
      CHECK(a == doctest::Approx(b).epsilon(1e-8).scale(std::max(1.0, std::fabs(b))));
    }
  // Gauge-free two-point minors at one even level.
  for (int k = 1; k <= 2; ++k) {
    int x = 2 * k;
    double u = 0.7, v = 1.8;
    double dc = det2(limiting_contour_kernel(x, u, x, u), limiting_contour_kernel(x, u, x, v),
                     limiting_contour_kernel(x, v, x, u), limiting_contour_kernel(x, v, x, v));
    double dk = det2(limiting_kernel_hermite(k, u, u), limiting_kernel_hermite(k, u, v),
                     limiting_kernel_hermite(k, v, u), limiting_kernel_hermite(k, v, v));
    CHECK(dc == doctest::Approx(dk).epsilon(1e-8).scale(std::max(1.0, std::fabs(dk))));
  }
  CHECK_THROWS_AS(limiting_contour_kernel(4, 1.5, 4, 1.5, 1), NumericError);
}

TEST_CASE("pinned-particle kernel probes") {
  // Level-3 diagonal of the k = 1 pinned process is 2 u e^{-u^2}.
  for (double u : {0.05, 0.3, 1.0, 2.0, 3.0})
    CHECK(conditioned_kernel(1, 3, u, 3, u) ==
          doctest::Approx(2 * u * std::exp(-u * u)).epsilon(1e-8).scale(1.0));
  CHECK_THROWS_AS(conditioned_kernel(0, 3, 0.5, 3, 0.5), DomainError);
  CHECK_THROWS_AS(conditioned_kernel(1, 1, 0.5, 3, 0.5), DomainError);
  CHECK_THROWS_AS(conditioned_kernel(1, 3, 1.5, 3, 1.5, 1), NumericError);
}

TEST_CASE("pinned-particle kernel counts particles per level") {
  struct Probe {
    int k, level;
    double count;
  };
  // Pinning eats one particle at its own even level and leaves odd neighbors.
  for (const Probe& p : {Probe{2, 4, 1.0}, Probe{3, 6, 2.0}, Probe{1, 3, 1.0}, Probe{2, 5, 2.0}}) {
    double val = integrate(
        [&](double u) { return conditioned_kernel(p.k, p.level, u, p.level, u); }, 0.0, 6.0,
        600);
    // Tolerance is set by the trapezoid rule, not the kernel.
    CHECK(val == doctest::Approx(p.count).epsilon(1e-4));
  }
}

TEST_CASE("finite kernel reproduces the single-cell uniform law") {
  // One cell at n = 2: the rescaled entry is uniform on [0, sqrt(2)].
  // The kernel is meaningful on the scaling window [0, sqrt(n)] only.
  Shape d2 = Shape::staircase(2);
  for (double u : {0.0, 0.4, 1.0, 1.4})
    CHECK(finite_n_kernel(d2, 2, u, 2, u) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK_THROWS_AS(finite_n_kernel(d2, 3, 0.5, 2, 0.5), DomainError);
  CHECK_THROWS_AS(finite_n_kernel(d2, 2, -0.5, 2, 0.5), DomainError);
  CHECK_THROWS_AS(finite_n_kernel(Shape({2, 2}), 2, 0.5, 2, 0.5), DomainError);
}

TEST_CASE("finite kernel diagonal integrates to the particle count per level") {
  Shape d6 = Shape::staircase(6);
  double lim = std::sqrt(6.0);
  for (int l = 2; l <= 10; ++l) {
    double val =
        integrate([&](double u) { return finite_n_kernel(d6, l, u, l, u); }, 0.0, lim, 800);
    // Tolerance is set by the trapezoid rule, not the kernel.
    CHECK(val == doctest::Approx(static_cast<double>(level_count(6, l))).epsilon(1e-4));
  }
}

TEST_CASE("finite kernel on corner-removed shapes") {
  // Removing corner (5, 1) empties level 2 entirely.
  Shape m61 = Shape::staircase_minus(6, 1);
  for (double u : {0.0, 0.5, 1.3, 2.0})
    CHECK(std::fabs(finite_n_kernel(m61, 2, u, 2, u)) < 1e-10);
  // Removing corner (4, 2) leaves one particle on level 4.
  Shape m62 = Shape::staircase_minus(6, 2);
  double val = integrate([&](double u) { return finite_n_kernel(m62, 4, u, 4, u); }, 0.0,
                         std::sqrt(6.0), 800);
  CHECK(val == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("finite kernel converges to the limiting one") {
  Shape d400 = Shape::staircase(400);
  for (double u : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    double fin = finite_n_kernel(d400, 2, u, 2, u);
    double lim = 2 / kSqrtPi * std::exp(-u * u);
    CHECK(std::fabs(fin - lim) < 0.01);
  }
  // A mixed-level probe against the residue form of the limit.
  double fin = finite_n_kernel(d400, 3, 0.4, 2, 0.8);
  double lim = limiting_contour_kernel(3, 0.4, 2, 0.8);
  CHECK(std::fabs(fin - lim) < 0.05);
}

TEST_CASE("finite kernel diagonal matches simulated one-point densities") {
  // Empirical bin counts of the rescaled level-6 particles at n = 6 against
  // the integrated kernel diagonal, three standard errors.
  Shape d6 = Shape::staircase(6);
  Rng g = make_rng(606);
  const int samples = 100000;
  const double edges[4] = {0.0, 0.7, 1.4, 2.1};
  double counts[3] = {0, 0, 0};
  for (int s = 0; s < samples; ++s) {
    StandardTableau t = sample_syt(d6, g);
    PointConfig cfg = project_points(syt_to_pyt(t, g), 6);
    for (double u : cfg.levels.at(6))
      for (int b = 0; b < 3; ++b)
        if (u >= edges[b] && u < edges[b + 1]) counts[b] += 1;
  }
  for (int b = 0; b < 3; ++b) {
    double expect = integrate([&](double u) { return finite_n_kernel(d6, 6, u, 6, u); },
                              edges[b], edges[b + 1], 400);
    double got = counts[b] / samples;
    // Bin-count variance of a determinantal field is at most its mean.
    double se = std::sqrt(expect / samples);
    CHECK(std::fabs(got - expect) < 3 * se + 1e-12);
  }
}

TEST_CASE("query dispatch, grids and json") {
  KernelQuery q;
  q.family = "K_k";
  q.k = 2;
  CHECK(evaluate_kernel(q, 0.3, 0.7) == kernel_K(2, 0.3, 0.7));
  q.family = "limiting_hermite";
  CHECK(evaluate_kernel(q, 0.3, 0.7) == limiting_kernel_hermite(2, 0.3, 0.7));
  q.family = "corners";
  q.x1 = 4;
  q.x2 = 2;
  CHECK(evaluate_kernel(q, 0.3, 0.7) == corners_kernel(4, 0.3, 2, 0.7, q.trunc));
  q.family = "finite_n";
  q.n = 6;
  q.k = 2;
  q.minus_corner = true;
  q.x1 = 4;
  q.x2 = 4;
  CHECK(evaluate_kernel(q, 0.3, 0.7) ==
        finite_n_kernel(Shape::staircase_minus(6, 2), 4, 0.3, 4, 0.7));
  q.family = "cheese";
  CHECK_THROWS_AS(evaluate_kernel(q, 0.0, 0.0), DomainError);

  KernelQuery qk;
  qk.family = "K_k";
  qk.k = 1;
  std::ostringstream os;
  write_kernel_grid_csv(os, qk, {0.0, 1.0}, {0.0, 0.5, 1.0});
  std::string text = os.str();
  CHECK(text.rfind("u1,u2,value", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 3);
  std::string js = kernel_query_json(qk);
  CHECK(js.find("\"family\":\"K_k\"") != std::string::npos);
  CHECK(js.find("\"k\":1") != std::string::npos);
}
