#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rsn {

// phi_a(u) = e^{-u^2/2} H_{2a}(u) / sqrt(sqrt(pi) (2a)! 2^{2a-1}); the family
// is orthonormal on [0, infinity) and spans the rank-k kernel, so the gap
// probability is an exact k x k determinant.
double hermite_phi(int a, double u);

// G_ab(t) = integral_0^t phi_a phi_b du; 0 <= G <= I, G(0) = 0.
struct GramState {
  int k = 0;
  double t = 0.0;
  Eigen::MatrixXd G;
};

GramState gram_state(int k, double t);

// P(smallest positive point > t) = det(I - G(t)).
double survival_tfs(int k, double t);

// Analytic F'(t) = -phi(t)^T adj(I - G(t)) phi(t); finite for every t >= 0,
// with -F'(0) equal to the full kernel diagonal at the origin.
double survival_derivative(int k, double t);

// x F''(x), the density of the scaled spacing limit.
double density_g(int k, double x);

// (sqrt(pi)/2) ((2k-2)!!/(2k-1)!!) F''(x), the conditional spacing limit.
double density_ghat(int k, double x);

// One row per grid point: t, F, g, ghat.
void write_limit_law_csv(std::ostream& out, int k, const std::vector<double>& grid);
std::string limit_law_json(int k);

}  // namespace rsn
