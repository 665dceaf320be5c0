#include "rsnlab/ague.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "rsnlab/errors.hpp"

namespace rsn {

AntisymRealMatrix sample_antisym(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("sample_antisym: dim must be >= 1");
  Eigen::MatrixXd y(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) y(i, j) = rng_normal(rng);
  AntisymRealMatrix m;
  m.dim = dim;
  m.a = Eigen::MatrixXd(dim, dim);
  // Build from the strictly-lower triangle so antisymmetry is exact.
  for (int i = 0; i < dim; ++i) {
    m.a(i, i) = 0.0;
    for (int j = 0; j < i; ++j) {
      double v = 0.5 * (y(i, j) - y(j, i));
      m.a(i, j) = v;
      m.a(j, i) = -v;
    }
  }
  return m;
}

namespace {

// Positive spectrum of the leading dim x dim corner of a.
std::vector<double> corner_positive_spectrum(const Eigen::MatrixXd& a, int dim) {
  Eigen::MatrixXd block = a.topLeftCorner(dim, dim);
  Eigen::MatrixXd s = -(block * block);
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("positive_spectrum: eigensolver failed at dim " + std::to_string(dim));
  const auto& mu = solver.eigenvalues();  // ascending
  std::vector<double> out;
  out.reserve(dim / 2);
  for (int idx = dim - 1; idx >= 1; idx -= 2) {
    double hi = mu(idx);
    assert(hi - mu(idx - 1) <= 1e-6 * (std::abs(hi) + 1e-12) && "squared spectrum must pair up");
    out.push_back(std::sqrt(std::max(hi, 0.0)));
  }
  return out;
}

}  // namespace

std::vector<double> positive_spectrum(const AntisymRealMatrix& m) {
  if (m.dim < 1 || m.a.rows() != m.dim || m.a.cols() != m.dim)
    throw DomainError("positive_spectrum: malformed matrix");
  return corner_positive_spectrum(m.a, m.dim);
}

bool CornersConfig::interlaces(double tol) const {
  for (const auto& [l, vals] : levels) {
    auto up = levels.find(l + 1);
    if (up == levels.end()) continue;
    const auto& upper = up->second;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (j >= upper.size()) return false;  // corner spectra never shrink upward
      if (vals[j] > upper[j] + tol) return false;
      double lower = (j + 1 < upper.size()) ? upper[j + 1] : 0.0;
      if (vals[j] < lower - tol) return false;
    }
  }
  return true;
}

CornersConfig corners_config(const AntisymRealMatrix& m, int L) {
  if (L < 2) throw DomainError("corners_config: L must be >= 2");
  if (m.dim < L) throw DomainError("corners_config: matrix smaller than L");
  CornersConfig cfg;
  cfg.L = L;
  for (int l = 2; l <= L; ++l) cfg.levels[l] = corner_positive_spectrum(m.a, l);
  return cfg;
}

CornersConfig corners_config(int L, Rng& rng) {
  if (L < 2) throw DomainError("corners_config: L must be >= 2");
  return corners_config(sample_antisym(L, rng), L);
}

double sample_tfs(int k, Rng& rng) {
  if (k < 1) throw DomainError("sample_tfs: k must be >= 1");
  AntisymRealMatrix m = sample_antisym(2 * k, rng);
  return positive_spectrum(m).back();
}

double joint_density_unnormalized(const std::vector<double>& values, int dim) {
  if (dim < 2) throw DomainError("joint_density_unnormalized: dim must be >= 2");
  std::size_t want = static_cast<std::size_t>(dim / 2);
  if (values.size() != want)
    throw DomainError("joint_density_unnormalized: expected " + std::to_string(want) +
                      " values, got " + std::to_string(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0)
      throw DomainError("joint_density_unnormalized: values must be nonnegative");
    if (i + 1 < values.size() && values[i] < values[i + 1])
      throw DomainError("joint_density_unnormalized: values must be descending");
  }
  double d = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      double diff = values[i] * values[i] - values[j] * values[j];
      d *= diff * diff;
    }
  }
  for (double v : values) {
    d *= std::exp(-v * v);
    if (dim % 2 == 1) d *= v * v;
  }
  return d;
}

void write_corners_csv(std::ostream& out, const std::vector<CornersConfig>& configs) {
  out << "sample_id,level,rank,value\n";
  out << std::setprecision(17);
  for (std::size_t s = 0; s < configs.size(); ++s)
    for (const auto& [l, vals] : configs[s].levels)
      for (std::size_t j = 0; j < vals.size(); ++j)
        out << s << ',' << l << ',' << (j + 1) << ',' << vals[j] << '\n';
}

}  // namespace rsn
