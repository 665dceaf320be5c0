#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <map>
#include <vector>

#include "rsnlab/rng.hpp"

namespace rsn {

// Real representation of an antisymmetric Gaussian matrix: a = (Y - Y^T)/2
// for Y with i.i.d. standard normal entries. The Hermitian matrix of interest
// is i*a; its spectrum is read off the symmetric PSD matrix -a*a, so no
// complex arithmetic is ever needed.
struct AntisymRealMatrix {
  int dim = 0;
  Eigen::MatrixXd a;
};

AntisymRealMatrix sample_antisym(int dim, Rng& rng);

// The floor(dim/2) positive eigenvalues of i*a, descending. Eigenvalues of
// -a*a come in near-equal pairs (plus one structural zero at odd dim); taking
// every second value from the top keeps one representative per pair and drops
// the odd-dimension zero by count, not by thresholding.
std::vector<double> positive_spectrum(const AntisymRealMatrix& m);

// Nested corner spectra of one underlying matrix. levels[l] holds the
// positive eigenvalues of the top-left l x l corner, descending, for
// l = 2..L; rank j means the j-th largest.
struct CornersConfig {
  int L = 0;
  std::map<int, std::vector<double>> levels;

  // lam^{l+1}_{j+1} <= lam^l_j <= lam^{l+1}_j for all stored ranks, reading
  // an implicit zero when j+1 exceeds the upper level's count.
  bool interlaces(double tol = 0.0) const;
};

CornersConfig corners_config(const AntisymRealMatrix& m, int L);
CornersConfig corners_config(int L, Rng& rng);

// Smallest positive eigenvalue of a fresh 2k x 2k sample.
double sample_tfs(int k, Rng& rng);

// Unnormalized joint density of the positive eigenvalues at one dimension:
// squared Vandermonde in the squared variables times Gaussian weights, with
// an extra lam^2 factor per value at odd dim. values must be descending,
// positive, of length floor(dim/2).
double joint_density_unnormalized(const std::vector<double>& values, int dim);

// Rows sample_id,level,rank,value; rank 1 is the largest value of its level.
void write_corners_csv(std::ostream& out, const std::vector<CornersConfig>& configs);

}  // namespace rsn
