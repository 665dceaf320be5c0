#include "rsnlab/shape.hpp"

#include <algorithm>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rsn {

Shape::Shape(std::vector<int> rows) : rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r] < 0) throw DomainError("Shape: negative row length");
    if (r > 0 && rows_[r] > rows_[r - 1]) throw DomainError("Shape: rows must be weakly decreasing");
  }
}

Shape Shape::staircase(int n) {
  if (n < 2) throw DomainError("staircase: need n >= 2, got " + std::to_string(n));
  std::vector<int> rows(static_cast<std::size_t>(n - 1));
  for (int i = 1; i <= n - 1; ++i) rows[static_cast<std::size_t>(i - 1)] = n - i;
  return Shape(std::move(rows));
}

Shape Shape::staircase_minus(int n, int k) {
  if (n < 2) throw DomainError("staircase_minus: need n >= 2");
  if (k < 1 || k > n - 1)
    throw DomainError("staircase_minus: need 1 <= k <= n-1, got k = " + std::to_string(k));
  std::vector<int> rows(static_cast<std::size_t>(n - 1));
  for (int i = 1; i <= n - 1; ++i) rows[static_cast<std::size_t>(i - 1)] = n - i;
  rows[static_cast<std::size_t>(n - k - 1)] = k - 1;
  return Shape(std::move(rows));
}

int Shape::row_len(int i) const {
  if (i < 1) throw DomainError("Shape::row_len: row index must be >= 1");
  if (i > num_rows()) return 0;
  return rows_[static_cast<std::size_t>(i - 1)];
}

long long Shape::size() const {
  long long s = 0;
  for (int r : rows_) s += r;
  return s;
}

bool Shape::contains(int i, int j) const {
  return i >= 1 && j >= 1 && i <= num_rows() && j <= rows_[static_cast<std::size_t>(i - 1)];
}

int Shape::col_len(int j) const {
  if (j < 1) throw DomainError("Shape::col_len: column index must be >= 1");
  // rows_ is weakly decreasing: find the last row with length >= j.
  auto it = std::partition_point(rows_.begin(), rows_.end(), [j](int len) { return len >= j; });
  return static_cast<int>(it - rows_.begin());
}

int Shape::arm(int i, int j) const {
  if (!contains(i, j)) throw DomainError("Shape::arm: cell outside shape");
  return rows_[static_cast<std::size_t>(i - 1)] - j;
}

int Shape::leg(int i, int j) const {
  if (!contains(i, j)) throw DomainError("Shape::leg: cell outside shape");
  return col_len(j) - i;
}

int Shape::hook_length(int i, int j) const {
  if (!contains(i, j)) throw DomainError("Shape::hook_length: cell outside shape");
  return arm(i, j) + leg(i, j) + 1;
}

std::vector<Cell> Shape::cells_row_major() const {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int i = 1; i <= num_rows(); ++i)
    for (int j = 1; j <= row_len(i); ++j) out.push_back({i, j});
  return out;
}

std::vector<Cell> Shape::corners() const {
  std::vector<Cell> out;
  for (int i = 1; i <= num_rows(); ++i) {
    if (row_len(i) > 0 && row_len(i) > row_len(i + 1)) out.push_back({i, row_len(i)});
  }
  return out;
}

bool Shape::is_staircase(int* n_out) const {
  int n = num_rows() + 1;
  if (n < 2) return false;
  for (int i = 1; i <= num_rows(); ++i)
    if (row_len(i) != n - i) return false;
  if (n_out) *n_out = n;
  return true;
}

bool Shape::is_staircase_minus(int* n_out, int* k_out) const {
  // Two candidate n: the corner removed from row n-1 shortens the last row to
  // zero, so num_rows can be n-1 or n-2.
  for (int n : {num_rows() + 1, num_rows() + 2}) {
    if (n < 2) continue;
    for (int k = 1; k <= n - 1; ++k) {
      if (*this == staircase_minus(n, k)) {
        if (n_out) *n_out = n;
        if (k_out) *k_out = k;
        return true;
      }
    }
  }
  return false;
}

BigInt factorial_big(long long m) {
  if (m < 0) throw DomainError("factorial_big: negative argument");
  BigInt r = 1;
  for (long long v = 2; v <= m; ++v) r *= v;
  return r;
}

BigInt double_factorial_big(long long m) {
  if (m < -1) throw DomainError("double_factorial_big: argument must be >= -1");
  BigInt r = 1;
  for (long long v = m; v >= 2; v -= 2) r *= v;
  return r;
}

double big_to_double(const BigRat& r) {
  using boost::multiprecision::cpp_bin_float_50;
  cpp_bin_float_50 num(boost::multiprecision::numerator(r));
  cpp_bin_float_50 den(boost::multiprecision::denominator(r));
  return static_cast<double>(num / den);
}

BigInt count_syt(const Shape& shape) {
  BigInt numer = factorial_big(shape.size());
  BigInt denom = 1;
  for (const Cell& c : shape.cells_row_major()) denom *= shape.hook_length(c.i, c.j);
  BigInt q = numer / denom;
  if (q * denom != numer)
    throw NumericError("count_syt: hook product does not divide |shape|!");
  return q;
}

}  // namespace rsn
