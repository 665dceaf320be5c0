#include "rsnlab/tableau.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

namespace rsn {

namespace {

std::vector<int> make_row_offsets(const Shape& shape) {
  std::vector<int> off(static_cast<std::size_t>(shape.num_rows()) + 1, 0);
  for (int i = 1; i <= shape.num_rows(); ++i)
    off[static_cast<std::size_t>(i)] = off[static_cast<std::size_t>(i - 1)] + shape.row_len(i);
  return off;
}

}  // namespace

StandardTableau::StandardTableau(Shape shape, std::vector<int> row_major_entries)
    : shape_(std::move(shape)), flat_(std::move(row_major_entries)), row_offsets_(make_row_offsets(shape_)) {
  const long long m = shape_.size();
  if (static_cast<long long>(flat_.size()) != m)
    throw DomainError("StandardTableau: entry count does not match shape size");
  std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
  for (int v : flat_) {
    if (v < 1 || v > m || seen[static_cast<std::size_t>(v)])
      throw DomainError("StandardTableau: entries must be a bijection onto 1..|shape|");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (int i = 1; i <= shape_.num_rows(); ++i) {
    for (int j = 1; j <= shape_.row_len(i); ++j) {
      if (j > 1 && at(i, j - 1) >= at(i, j))
        throw DomainError("StandardTableau: rows must strictly increase");
      if (i > 1 && shape_.contains(i - 1, j) && at(i - 1, j) >= at(i, j))
        throw DomainError("StandardTableau: columns must strictly increase");
    }
  }
}

StandardTableau StandardTableau::from_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<int> lens;
  std::vector<int> flat;
  for (const auto& r : rows) {
    lens.push_back(static_cast<int>(r.size()));
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return StandardTableau(Shape(std::move(lens)), std::move(flat));
}

int StandardTableau::at(int i, int j) const {
  if (!shape_.contains(i, j)) throw DomainError("StandardTableau::at: cell outside shape");
  return flat_[static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(i - 1)] + j - 1)];
}

std::string StandardTableau::to_json() const {
  nlohmann::json j;
  j["shape"] = shape_.rows();
  auto entries = nlohmann::json::array();
  for (const Cell& c : shape_.cells_row_major())
    entries.push_back(nlohmann::json::array({c.i, c.j, at(c.i, c.j)}));
  j["entries"] = entries;
  return j.dump();
}

StandardTableau StandardTableau::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Shape shape(j.at("shape").get<std::vector<int>>());
  std::vector<int> flat(static_cast<std::size_t>(shape.size()), 0);
  auto off = make_row_offsets(shape);
  for (const auto& e : j.at("entries")) {
    int i = e.at(0).get<int>(), jj = e.at(1).get<int>(), v = e.at(2).get<int>();
    if (!shape.contains(i, jj)) throw DomainError("StandardTableau::from_json: cell outside shape");
    flat[static_cast<std::size_t>(off[static_cast<std::size_t>(i - 1)] + jj - 1)] = v;
  }
  return StandardTableau(std::move(shape), std::move(flat));
}

std::vector<StandardTableau> enumerate_syt(const Shape& shape, long long cap) {
  const long long m = shape.size();
  if (m > cap)
    throw ResourceError("enumerate_syt: shape has " + std::to_string(m) +
                        " cells, exceeding the cap of " + std::to_string(cap));
  std::vector<StandardTableau> out;
  const int nrows = shape.num_rows();
  std::vector<int> fill(static_cast<std::size_t>(nrows), 0);  // filled prefix per row
  std::vector<int> flat(static_cast<std::size_t>(m), 0);
  auto off = make_row_offsets(shape);

  std::function<void(int)> rec = [&](int t) {
    if (t > m) {
      out.emplace_back(shape, flat);
      return;
    }
    for (int i = 1; i <= nrows; ++i) {
      const int filled = fill[static_cast<std::size_t>(i - 1)];
      if (filled >= shape.row_len(i)) continue;
      if (i > 1 && fill[static_cast<std::size_t>(i - 2)] <= filled) continue;
      flat[static_cast<std::size_t>(off[static_cast<std::size_t>(i - 1)] + filled)] = t;
      fill[static_cast<std::size_t>(i - 1)] = filled + 1;
      rec(t + 1);
      fill[static_cast<std::size_t>(i - 1)] = filled;
    }
  };
  rec(1);
  // The row-choice recursion is not flat-lexicographic once three or more
  // rows can accept the same value; sort to honor the documented order.
  std::sort(out.begin(), out.end(),
            [](const StandardTableau& a, const StandardTableau& b) { return a.flat() < b.flat(); });
  return out;
}

namespace {

// Shrinking shape supporting uniform cell selection (Fenwick tree over row
// lengths) and hook walks to a removable corner.
class HookWalkRemover {
 public:
  explicit HookWalkRemover(const Shape& shape)
      : rows_(shape.rows()), tree_(rows_.size() + 1, 0), remaining_(shape.size()) {
    for (std::size_t r = 0; r < rows_.size(); ++r) add(static_cast<int>(r), rows_[r]);
  }

  long long remaining() const { return remaining_; }

  // One hook-walk step: returns the removed corner.
  Cell remove_one(Rng& rng) {
    long long pick = static_cast<long long>(rng_below(rng, static_cast<std::uint64_t>(remaining_)));
    int i = locate(pick);                 // 0-based row with prefix(i) > pick
    int j = static_cast<int>(pick - prefix(i)) + 1;
    ++i;                                  // to 1-based
    for (;;) {
      const int arm = rows_[static_cast<std::size_t>(i - 1)] - j;
      const int leg = col_len(j) - i;
      if (arm + leg == 0) break;
      const auto u = static_cast<long long>(rng_below(rng, static_cast<std::uint64_t>(arm + leg)));
      if (u < arm)
        j += 1 + static_cast<int>(u);
      else
        i += 1 + static_cast<int>(u - arm);
    }
    rows_[static_cast<std::size_t>(i - 1)] -= 1;
    add(i - 1, -1);
    --remaining_;
    return {i, rows_[static_cast<std::size_t>(i - 1)] + 1};
  }

 private:
  int col_len(int j) const {
    auto it = std::partition_point(rows_.begin(), rows_.end(), [j](int len) { return len >= j; });
    return static_cast<int>(it - rows_.begin());
  }

  void add(int idx0, int delta) {
    for (std::size_t i = static_cast<std::size_t>(idx0) + 1; i < tree_.size(); i += i & (~i + 1))
      tree_[i] += delta;
  }

  long long prefix(int rows_before) const {  // cells in rows [0, rows_before)
    long long s = 0;
    for (std::size_t i = static_cast<std::size_t>(rows_before); i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Smallest 0-based row index i with prefix(i+1) > pick.
  int locate(long long pick) const {
    std::size_t pos = 0;
    long long rest = pick;
    std::size_t mask = 1;
    while ((mask << 1) < tree_.size()) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] <= rest) {
        rest -= tree_[next];
        pos = next;
      }
    }
    return static_cast<int>(pos);
  }

  std::vector<int> rows_;
  std::vector<long long> tree_;
  long long remaining_;
};

}  // namespace

StandardTableau sample_syt(const Shape& shape, Rng& rng) {
  const long long m = shape.size();
  HookWalkRemover remover(shape);
  std::vector<int> flat(static_cast<std::size_t>(m), 0);
  auto off = make_row_offsets(shape);
  for (long long step = 1; step <= m; ++step) {
    Cell c = remover.remove_one(rng);
    flat[static_cast<std::size_t>(off[static_cast<std::size_t>(c.i - 1)] + c.j - 1)] =
        static_cast<int>(m + 1 - step);
  }
  return StandardTableau(shape, std::move(flat));
}

std::vector<long long> removal_steps(const Shape& shape, const std::vector<Cell>& watch, Rng& rng) {
  for (const Cell& c : watch)
    if (!shape.contains(c.i, c.j)) throw DomainError("removal_steps: watched cell outside shape");
  std::vector<long long> out(watch.size(), 0);
  std::size_t left = watch.size();
  HookWalkRemover remover(shape);
  const long long m = shape.size();
  for (long long step = 1; step <= m && left > 0; ++step) {
    Cell c = remover.remove_one(rng);
    for (std::size_t w = 0; w < watch.size(); ++w) {
      if (out[w] == 0 && watch[w] == c) {
        out[w] = step;
        --left;
      }
    }
  }
  return out;
}

}  // namespace rsn
