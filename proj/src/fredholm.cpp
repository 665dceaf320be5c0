#include "rsnlab/fredholm.hpp"

#include <cmath>
#include <functional>
#include <iomanip>

#include <boost/math/quadrature/gauss.hpp>
#include <json.hpp>

#include "rsnlab/errors.hpp"
#include "rsnlab/kernels.hpp"

namespace rsn {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kQuadRelTol = 1e-12;
constexpr double kDiffStep = 1e-4;

double gl_panel(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 15>::integrate(f, a, b);
}

double adaptive_gl(const std::function<double(double)>& f, double a, double b, double whole,
                   int depth) {
  if (depth > 48) throw NumericError("adaptive quadrature did not converge");
  double m = 0.5 * (a + b);
  double left = gl_panel(f, a, m);
  double right = gl_panel(f, m, b);
  double sum = left + right;
  if (std::abs(sum - whole) <= kQuadRelTol * std::abs(sum) + 1e-16) return sum;
  return adaptive_gl(f, a, m, left, depth + 1) + adaptive_gl(f, m, b, right, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) return 0.0;
  return adaptive_gl(f, a, b, gl_panel(f, a, b), 0);
}

Eigen::VectorXd phi_vector(int k, double u) {
  Eigen::VectorXd v(k);
  for (int a = 0; a < k; ++a) v(a) = hermite_phi(a, u);
  return v;
}

// F'(t) = -F(t) phi(t)^T (I-G)^{-1} phi(t) = -phi^T adj(I-G) phi, the
// rank-one derivative of the Gram determinant; the adjugate form stays
// finite even when I - G is numerically singular at large t.
double survival_derivative(const GramState& s) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(s.k, s.k) - s.G;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw NumericError("eigensolver failed on I - G; t too large");
  Eigen::VectorXd c = es.eigenvectors().transpose() * phi_vector(s.k, s.t);
  double fp = 0.0;
  for (int i = 0; i < s.k; ++i) {
    double adj = 1.0;
    for (int j = 0; j < s.k; ++j)
      if (j != i) adj *= es.eigenvalues()(j);
    fp -= c(i) * c(i) * adj;
  }
  return fp;
}

double survival_derivative_at(int k, double t) { return survival_derivative(gram_state(k, t)); }

// Central difference of the analytic first derivative, Richardson
// extrapolated once; the step shrinks near 0 to stay inside the domain.
double survival_second_derivative(int k, double x) {
  double h = std::min(kDiffStep, x / 4.0);
  auto central = [&](double step) {
    return (survival_derivative_at(k, x + step) - survival_derivative_at(k, x - step)) /
           (2.0 * step);
  };
  double d_h = central(h);
  double d_half = central(h / 2.0);
  return (4.0 * d_half - d_h) / 3.0;
}

double ghat_prefactor(int k) {
  // (sqrt(pi)/2) (2k-2)!!/(2k-1)!!
  double r = kSqrtPi / 2.0;
  for (int j = 1; j < 2 * k; ++j) {
    if (j % 2 == 0)
      r *= j;
    else
      r /= j;
  }
  return r;
}

}  // namespace

double hermite_phi(int a, double u) {
  if (a < 0) throw DomainError("hermite_phi: index must be >= 0");
  double norm = std::sqrt(kSqrtPi * std::exp(std::lgamma(2 * a + 1.0)) * std::ldexp(1.0, 2 * a - 1));
  return std::exp(-u * u / 2.0) * hermite(2 * a, u) / norm;
}

GramState gram_state(int k, double t) {
  if (k < 1) throw DomainError("gram_state: k must be >= 1");
  if (t < 0) throw DomainError("gram_state: t must be >= 0");
  GramState s;
  s.k = k;
  s.t = t;
  s.G = Eigen::MatrixXd::Zero(k, k);
  double mid = t / 2.0;
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      auto f = [a, b](double u) { return hermite_phi(a, u) * hermite_phi(b, u); };
      double v = integrate(f, 0.0, mid) + integrate(f, mid, t);
      s.G(a, b) = v;
      s.G(b, a) = v;
    }
  return s;
}

double survival_tfs(int k, double t) {
  GramState s = gram_state(k, t);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(k, k) - s.G;
  return a.determinant();
}

double survival_derivative(int k, double t) { return survival_derivative_at(k, t); }

double density_g(int k, double x) {
  if (k < 1) throw DomainError("density_g: k must be >= 1");
  if (!(x > 0)) throw DomainError("density_g: x must be > 0");
  return x * survival_second_derivative(k, x);
}

double density_ghat(int k, double x) {
  if (k < 1) throw DomainError("density_ghat: k must be >= 1");
  if (!(x > 0)) throw DomainError("density_ghat: x must be > 0");
  return ghat_prefactor(k) * survival_second_derivative(k, x);
}

void write_limit_law_csv(std::ostream& out, int k, const std::vector<double>& grid) {
  out << "t,F,g,ghat\n" << std::setprecision(17);
  double pref = ghat_prefactor(k);
  for (double t : grid) {
    double f = survival_tfs(k, t);
    double fpp = (t > 0) ? survival_second_derivative(k, t) : 0.0;
    out << t << ',' << f << ',' << t * fpp << ',' << pref * fpp << '\n';
  }
}

std::string limit_law_json(int k) {
  nlohmann::json j{{"k", k},
                   {"quad_rel_tol", kQuadRelTol},
                   {"diff_step", kDiffStep},
                   {"ghat_prefactor", ghat_prefactor(k)}};
  return j.dump();
}

}  // namespace rsn
