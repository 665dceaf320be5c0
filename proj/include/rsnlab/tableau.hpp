#pragma once

#include <string>
#include <vector>

#include "rsnlab/rng.hpp"
#include "rsnlab/shape.hpp"

namespace rsn {

// Bijective filling of a shape by 1..|λ|, strictly increasing along rows and
// columns. Storage is row-major over the shape's cells.
class StandardTableau {
 public:
  StandardTableau(Shape shape, std::vector<int> row_major_entries);
  static StandardTableau from_rows(const std::vector<std::vector<int>>& rows);

  const Shape& shape() const { return shape_; }
  int at(int i, int j) const;
  const std::vector<int>& flat() const { return flat_; }

  std::string to_json() const;
  static StandardTableau from_json(const std::string& text);

  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;

 private:
  Shape shape_;
  std::vector<int> flat_;
  std::vector<int> row_offsets_;  // start of each row in flat_
};

// All SYT of the shape, in lexicographic order of their row-major fillings.
// Refuses shapes with more than `cap` cells.
std::vector<StandardTableau> enumerate_syt(const Shape& shape, long long cap = 12);

// Uniform sample via the hook-walk construction.
StandardTableau sample_syt(const Shape& shape, Rng& rng);

// Max-removal process driven by hook walks: step r removes the cell holding
// |λ|+1-r in a uniform SYT. Returns the removal step of every watched cell,
// stopping as soon as all watched cells have been removed.
std::vector<long long> removal_steps(const Shape& shape, const std::vector<Cell>& watch, Rng& rng);

}  // namespace rsn
