#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsnlab/errors.hpp"

namespace rsn {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// 1-based (row, column) cell coordinate.
struct Cell {
  int i = 0;
  int j = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Integer partition with weakly decreasing rows; trailing zeros stripped.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> rows);

  // Rows (n-1, n-2, ..., 1).
  static Shape staircase(int n);
  // Staircase with corner cell (n-k, k) removed: row n-k has length k-1.
  static Shape staircase_minus(int n, int k);

  int num_rows() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& rows() const { return rows_; }
  int row_len(int i) const;  // 0 when i exceeds num_rows
  long long size() const;
  bool contains(int i, int j) const;
  int col_len(int j) const;  // number of rows with at least j cells

  int arm(int i, int j) const;
  int leg(int i, int j) const;
  int hook_length(int i, int j) const;

  std::vector<Cell> cells_row_major() const;
  // Removable cells: (i, λ_i) with λ_i > λ_{i+1}.
  std::vector<Cell> corners() const;

  // True iff rows equal (n-1, ..., 1); outputs n.
  bool is_staircase(int* n_out = nullptr) const;
  // True iff rows equal staircase_minus(n, k); outputs n and k.
  bool is_staircase_minus(int* n_out = nullptr, int* k_out = nullptr) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> rows_;
};

BigInt factorial_big(long long m);
BigInt double_factorial_big(long long m);  // m!! with (-1)!! = 0!! = 1

// Rounded double of p/q; safe when p, q separately overflow double range.
double big_to_double(const BigRat& r);

// Hook length formula: |λ|! / Π hooks, exact.
BigInt count_syt(const Shape& shape);

}  // namespace rsn
