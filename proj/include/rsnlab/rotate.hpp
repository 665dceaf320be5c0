#pragma once

#include <map>
#include <string>
#include <vector>

#include "rsnlab/tableau.hpp"

namespace rsn {

// Diagonal coordinates of the staircase family: level l = n - i + j indexes
// anti-diagonals, m counts cells along a level starting from the deep end.
struct RotatedCoord {
  int l = 0;
  int m = 0;
  friend bool operator==(const RotatedCoord&, const RotatedCoord&) = default;
  friend auto operator<=>(const RotatedCoord&, const RotatedCoord&) = default;
};

// Number of cells of Δ_n on level l; 0 outside 2..2n-2.
int level_count(int n, int l);

RotatedCoord rotate_coord(int n, int i, int j);
Cell unrotate_coord(int n, int l, int m);

// Real-filled tableau with entries in (0,1), strictly increasing along rows
// and columns; storage row-major like StandardTableau.
class PoissonizedTableau {
 public:
  PoissonizedTableau(Shape shape, std::vector<double> row_major_entries);
  const Shape& shape() const { return shape_; }
  double at(int i, int j) const;
  const std::vector<double>& flat() const { return flat_; }

 private:
  Shape shape_;
  std::vector<double> flat_;
  std::vector<int> row_offsets_;
};

// Entry k of T becomes the k-th order statistic of |λ| iid uniforms on (0,1).
PoissonizedTableau syt_to_pyt(const StandardTableau& t, Rng& rng);

// Reverse reconstruction: the k-th largest entry becomes |λ|+1-k... i.e. ranks.
StandardTableau pyt_to_syt(const PoissonizedTableau& t);

// Projected configuration: per level, particle positions ascending. The
// rotated coordinate of levels[l][idx] is (l, first_m(l) + idx); first_m is 1
// except on the shortened level of a minus-corner shape, where it is 2.
struct PointConfig {
  std::map<int, std::vector<double>> levels;
  std::map<int, int> m_offset;  // levels absent from this map start at m = 1

  int first_m(int l) const;

  // Neighbor-wise interlacing transported from row/column monotonicity:
  // odd l:  u(l+1,m)   < u(l,m) < u(l+1,m+1)
  // even l: u(l+1,m-1) < u(l,m) < u(l+1,m)
  // where only constraints between existing particles are checked.
  bool interlaces(double tol = 0.0) const;
};

// Particle at (l, sqrt(n) * (1 - 𝒯(l,m))) for every cell of the shape, which
// must be Δ_n or Δ_n minus a corner.
PointConfig project_points(const PoissonizedTableau& t, int n);

}  // namespace rsn
