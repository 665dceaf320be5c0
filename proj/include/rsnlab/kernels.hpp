#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsnlab/shape.hpp"

namespace rsn {

// Physicist's Hermite polynomial H_j (leading coefficient 2^j) by the
// three-term recurrence.
double hermite(int j, double x);

// Projection kernel onto the first k even Hermite levels, symmetric gauge:
// exp(-(u1^2+u2^2)/2) sum_{l<k} H_{2l}(u1)H_{2l}(u2) / ((2l)! 2^{2l-1} sqrt(pi)).
double kernel_K(int k, double u1, double u2);

// Extended two-level kernel of the corner process, normalizer
// N_j = j! 2^{j-1} sqrt(pi). x >= y is an exact finite sum over l = 1..y/2;
// x < y is an infinite sum with the opposite sign truncated after `trunc`
// terms. That tail decays only polynomially, so the x < y branch is
// exploratory; nothing downstream depends on it.
double corners_kernel(int x, double u, int y, double v, int trunc = 200);

// Level-2k slice of the limiting kernel as an explicit alternating double
// series, i truncated at i_max. If tail_bound is non-null it receives twice
// the magnitude of the first omitted i-block.
double limiting_kernel_series(int k, double u1, double u2, int i_max = 80,
                              double* tail_bound = nullptr);

// Same slice resummed in Hermite form:
// exp(-u2^2) sum_{l<k} H_{2l}(u1)H_{2l}(u2) / (2^{2l-1} (2l)! sqrt(pi)).
double limiting_kernel_hermite(int k, double u1, double u2);

// Limiting kernel at general levels, evaluated as a deterministic residue
// sum. condition_k = 0 gives the plain kernel; condition_k = k >= 1 pins an
// extra particle at level 2k, position 0. trunc caps the z-residue series;
// failing to converge within the cap or meeting a double pole raises
// NumericError.
double limiting_contour_kernel(int x1, double u1, int x2, double u2, int trunc = 400,
                               int condition_k = 0);

// Kernel of the pinned-particle process at levels >= 2.
double conditioned_kernel(int k, int x1, double u1, int x2, double u2, int trunc = 400);

// Finite-n kernel of the rescaled point field u = sqrt(n)(1 - entry) of a
// staircase (or one-corner-removed staircase) tableau; levels 2..2n-2.
// Off-diagonal values carry the determinant-preserving n^{(x1-x2)/2}
// normalization, so they converge to limiting_contour_kernel as n grows.
double finite_n_kernel(const Shape& shape, int x1, double u1, int x2, double u2);

// Grid evaluation request, used by the CLI and serialized next to results.
struct KernelQuery {
  std::string family;  // K_k | corners | limiting_series | limiting_hermite | conditioned | finite_n
  int k = 1;
  int n = 0;                  // finite_n only
  bool minus_corner = false;  // finite_n shape selector
  int x1 = 0;                 // levels for corners / conditioned / finite_n
  int x2 = 0;
  int trunc = 400;
  int i_max = 80;
};

double evaluate_kernel(const KernelQuery& q, double u1, double u2);

// CSV rows u1,u2,value over the product grid.
void write_kernel_grid_csv(std::ostream& out, const KernelQuery& q,
                           const std::vector<double>& u1_grid,
                           const std::vector<double>& u2_grid);

// JSON object with the family, parameters and truncation orders.
std::string kernel_query_json(const KernelQuery& q);

}  // namespace rsn
