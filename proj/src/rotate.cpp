#include "rsnlab/rotate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rsn {

int level_count(int n, int l) {
  if (l < 2 || l > 2 * n - 2) return 0;
  return std::min(l, 2 * n - l) / 2;
}

RotatedCoord rotate_coord(int n, int i, int j) {
  if (n < 2) throw DomainError("rotate_coord: need n >= 2");
  if (i < 1 || j < 1 || i + j > n)
    throw DomainError("rotate_coord: cell outside the staircase");
  const int l = n - i + j;
  const int d = n - i - j;
  const int m = (d % 2 == 0) ? d / 2 + 1 : (d + 1) / 2;
  return {l, m};
}

Cell unrotate_coord(int n, int l, int m) {
  if (n < 2) throw DomainError("unrotate_coord: need n >= 2");
  if (l < 2 || l > 2 * n - 2 || m < 1 || m > level_count(n, l))
    throw DomainError("unrotate_coord: (l,m) outside the staircase range");
  int i, j;
  if (l % 2 == 0) {
    i = n - l / 2 - m + 1;
    j = l / 2 - m + 1;
  } else {
    i = n - (l - 1) / 2 - m;
    j = (l + 1) / 2 - m;
  }
  return {i, j};
}

namespace {

std::vector<int> make_row_offsets(const Shape& shape) {
  std::vector<int> off(static_cast<std::size_t>(shape.num_rows()) + 1, 0);
  for (int i = 1; i <= shape.num_rows(); ++i)
    off[static_cast<std::size_t>(i)] = off[static_cast<std::size_t>(i - 1)] + shape.row_len(i);
  return off;
}

}  // namespace

PoissonizedTableau::PoissonizedTableau(Shape shape, std::vector<double> row_major_entries)
    : shape_(std::move(shape)), flat_(std::move(row_major_entries)), row_offsets_(make_row_offsets(shape_)) {
  if (static_cast<long long>(flat_.size()) != shape_.size())
    throw DomainError("PoissonizedTableau: entry count does not match shape size");
  for (double v : flat_)
    if (!(v > 0.0 && v < 1.0)) throw DomainError("PoissonizedTableau: entries must lie in (0,1)");
  for (int i = 1; i <= shape_.num_rows(); ++i) {
    for (int j = 1; j <= shape_.row_len(i); ++j) {
      if (j > 1 && at(i, j - 1) >= at(i, j))
        throw NumericError("PoissonizedTableau: tie or row order violation");
      if (i > 1 && shape_.contains(i - 1, j) && at(i - 1, j) >= at(i, j))
        throw NumericError("PoissonizedTableau: tie or column order violation");
    }
  }
}

double PoissonizedTableau::at(int i, int j) const {
  if (!shape_.contains(i, j)) throw DomainError("PoissonizedTableau::at: cell outside shape");
  return flat_[static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(i - 1)] + j - 1)];
}

PoissonizedTableau syt_to_pyt(const StandardTableau& t, Rng& rng) {
  const auto m = static_cast<std::size_t>(t.shape().size());
  std::vector<double> order(m);
  for (auto& v : order) v = rng_unit(rng);
  std::sort(order.begin(), order.end());
  std::vector<double> flat(m);
  for (std::size_t idx = 0; idx < m; ++idx)
    flat[idx] = order[static_cast<std::size_t>(t.flat()[idx] - 1)];
  return PoissonizedTableau(t.shape(), std::move(flat));
}

StandardTableau pyt_to_syt(const PoissonizedTableau& t) {
  const auto m = static_cast<std::size_t>(t.shape().size());
  std::vector<std::size_t> idx(m);
  for (std::size_t q = 0; q < m; ++q) idx[q] = q;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return t.flat()[a] < t.flat()[b]; });
  std::vector<int> flat(m, 0);
  for (std::size_t rank = 0; rank < m; ++rank) flat[idx[rank]] = static_cast<int>(rank + 1);
  return StandardTableau(t.shape(), std::move(flat));
}

int PointConfig::first_m(int l) const {
  auto it = m_offset.find(l);
  return it == m_offset.end() ? 1 : it->second;
}

bool PointConfig::interlaces(double tol) const {
  for (const auto& [l, a] : levels) {
    auto it = levels.find(l + 1);
    if (it == levels.end()) continue;
    const auto& b = it->second;
    const int base_a = first_m(l);
    const int base_b = first_m(l + 1);
    const auto cb = static_cast<int>(b.size());
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
      const int m = base_a + static_cast<int>(idx);
      // Rotated coordinates of the level-(l+1) partners of (l, m).
      const int lo_m = (l % 2 != 0) ? m : m - 1;
      const int hi_m = (l % 2 != 0) ? m + 1 : m;
      const double u = a[idx];
      const int lo = lo_m - base_b;  // 0-based index into b
      const int hi = hi_m - base_b;
      if (lo >= 0 && lo < cb && !(b[static_cast<std::size_t>(lo)] <= u + tol)) return false;
      if (hi >= 0 && hi < cb && !(u <= b[static_cast<std::size_t>(hi)] + tol)) return false;
    }
  }
  return true;
}

PointConfig project_points(const PoissonizedTableau& t, int n) {
  int sn = 0, mn = 0, mk = 0;
  const bool full = t.shape().is_staircase(&sn);
  const bool minus = !full && t.shape().is_staircase_minus(&mn, &mk);
  if (!(full && sn == n) && !(minus && mn == n))
    throw DomainError("project_points: shape is not a staircase family member for this n");
  PointConfig cfg;
  const double scale = std::sqrt(static_cast<double>(n));
  for (int l = 2; l <= 2 * n - 2; ++l) {
    std::vector<double> pos;
    for (int m = 1; m <= level_count(n, l); ++m) {
      Cell c = unrotate_coord(n, l, m);
      if (!t.shape().contains(c.i, c.j)) {
        // Removed corner of the minus shape: it is always the deepest cell
        // (m = 1) of its level, so the stored positions start at m = 2.
        cfg.m_offset[l] = m + 1;
        continue;
      }
      pos.push_back(scale * (1.0 - t.at(c.i, c.j)));
    }
    // Entries decrease with m along a level, so positions are ascending.
    if (!std::is_sorted(pos.begin(), pos.end()))
      throw NumericError("project_points: positions within a level are not ascending");
    cfg.levels[l] = std::move(pos);
  }
  return cfg;
}

}  // namespace rsn
