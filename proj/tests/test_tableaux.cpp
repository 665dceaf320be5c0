#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "rsnlab/errors.hpp"
#include "rsnlab/rng.hpp"
#include "rsnlab/rotate.hpp"
#include "rsnlab/shape.hpp"
#include "rsnlab/stats.hpp"
#include "rsnlab/tableau.hpp"

using namespace rsn;

TEST_CASE("staircase shapes and hook lengths") {
  Shape d5 = Shape::staircase(5);
  CHECK(d5.rows() == std::vector<int>{4, 3, 2, 1});
  CHECK(d5.size() == 10);
  // Staircase hooks depend only on the anti-diagonal: h(i,j) = 2(n-i-j)+1.
  for (const Cell& c : d5.cells_row_major())
    CHECK(d5.hook_length(c.i, c.j) == 2 * (5 - c.i - c.j) + 1);
  CHECK(d5.corners().size() == 4);

  Shape m42 = Shape::staircase_minus(4, 2);
  CHECK(m42.rows() == std::vector<int>{3, 1, 1});
  int n = 0, k = 0;
  CHECK(m42.is_staircase_minus(&n, &k));
  CHECK(n == 4);
  CHECK(k == 2);
  CHECK_FALSE(m42.is_staircase());
  CHECK(Shape::staircase(4).is_staircase(&n));
  CHECK(n == 4);
  CHECK_THROWS_AS(Shape({1, 2}), DomainError);
  CHECK_THROWS_AS(Shape::staircase(1), DomainError);
}

TEST_CASE("exact tableau counts") {
  CHECK(count_syt(Shape::staircase(3)) == 2);
  CHECK(count_syt(Shape::staircase(4)) == 16);
  CHECK(count_syt(Shape::staircase(5)) == 768);
  CHECK(count_syt(Shape({2, 1})) == 2);
  CHECK(count_syt(Shape({2, 2})) == 2);
  CHECK(count_syt(Shape({3, 3})) == 5);
  CHECK(count_syt(Shape::staircase_minus(4, 2)) == 6);
  CHECK(factorial_big(5) == 120);
  CHECK(double_factorial_big(5) == 15);
  CHECK(double_factorial_big(6) == 48);
  CHECK(double_factorial_big(0) == 1);
  CHECK(double_factorial_big(-1) == 1);
}

TEST_CASE("tableau construction and serialization") {
  StandardTableau t = StandardTableau::from_rows({{1, 2, 3}, {4, 5}, {6}});
  CHECK(t.at(1, 1) == 1);
  CHECK(t.at(2, 2) == 5);
  CHECK(t.at(3, 1) == 6);
  CHECK(t.flat() == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(StandardTableau::from_json(t.to_json()) == t);
  // Row or column violations are rejected.
  CHECK_THROWS_AS(StandardTableau::from_rows({{2, 1, 3}, {4, 5}, {6}}), DomainError);
  CHECK_THROWS_AS(StandardTableau::from_rows({{1, 4, 3}, {2, 5}, {6}}), DomainError);
  CHECK_THROWS_AS(StandardTableau::from_rows({{1, 2, 3}, {4, 5}, {5}}), DomainError);
}

TEST_CASE("enumeration is exhaustive, sorted and capped") {
  auto all = enumerate_syt(Shape::staircase(4));
  CHECK(all.size() == 16);
  std::set<std::vector<int>> distinct;
  for (const auto& t : all) distinct.insert(t.flat());
  CHECK(distinct.size() == 16);
  CHECK(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.flat() < b.flat();
  }));
  CHECK(all.front() == StandardTableau::from_rows({{1, 2, 3}, {4, 5}, {6}}));
  CHECK_THROWS_AS(enumerate_syt(Shape::staircase(7)), ResourceError);
}

TEST_CASE("hook walk sampler is uniform on the 16 staircase tableaux") {
  Shape d4 = Shape::staircase(4);
  auto all = enumerate_syt(d4);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i].flat()] = static_cast<int>(i);
  Rng g = make_rng(2026);
  const int trials = 16000;
  std::vector<double> freq(16, 0.0);
  for (int i = 0; i < trials; ++i) {
    auto it = index.find(sample_syt(d4, g).flat());
    REQUIRE(it != index.end());
    freq[static_cast<std::size_t>(it->second)] += 1.0;
  }
  double chi2 = 0.0;
  double expect = trials / 16.0;
  for (double f : freq) chi2 += (f - expect) * (f - expect) / expect;
  CHECK(chi_square_pvalue(chi2, 15) > 1e-3);
}

TEST_CASE("removal process visits every cell once, deepest entries first") {
  Shape d4 = Shape::staircase(4);
  auto cells = d4.cells_row_major();
  Rng g = make_rng(7);
  auto steps = removal_steps(d4, cells, g);
  std::set<long long> seen(steps.begin(), steps.end());
  CHECK(seen.size() == cells.size());
  CHECK(*seen.begin() == 1);
  CHECK(*seen.rbegin() == 6);
  for (std::size_t w = 0; w < cells.size(); ++w) {
    // Cell (1,1) always holds entry 1, so it is removed last.
    if (cells[w] == Cell{1, 1}) CHECK(steps[w] == 6);
  }
  // Removal step of a cell equals N+1-entry of the tableau grown from the
  // same stream.
  Rng g1 = make_rng(99);
  Rng g2 = make_rng(99);
  StandardTableau t = sample_syt(d4, g1);
  auto s2 = removal_steps(d4, cells, g2);
  for (std::size_t w = 0; w < cells.size(); ++w)
    CHECK(s2[w] == 6 + 1 - t.at(cells[w].i, cells[w].j));
  CHECK_THROWS_AS(removal_steps(d4, {Cell{4, 4}}, g), DomainError);
}

TEST_CASE("rotated coordinates partition the staircase") {
  for (int n : {4, 6}) {
    long long total = 0;
    for (int l = 2; l <= 2 * n - 2; ++l) {
      int cnt = level_count(n, l);
      CHECK(cnt == std::min(l, 2 * n - l) / 2);
      total += cnt;
      for (int m = 1; m <= cnt; ++m) {
        Cell c = unrotate_coord(n, l, m);
        RotatedCoord rc = rotate_coord(n, c.i, c.j);
        CHECK(rc.l == l);
        CHECK(rc.m == m);
        CHECK(l == n - c.i + c.j);
      }
    }
    CHECK(total == Shape::staircase(n).size());
    CHECK(level_count(n, 1) == 0);
    CHECK(level_count(n, 2 * n - 1) == 0);
  }
  CHECK(level_count(6, 2) == 1);
  CHECK(level_count(6, 6) == 3);
  CHECK(level_count(6, 10) == 1);
}

TEST_CASE("poissonized tableaux keep order and round-trip") {
  Shape d5 = Shape::staircase(5);
  Rng g = make_rng(31);
  StandardTableau t = sample_syt(d5, g);
  PoissonizedTableau p = syt_to_pyt(t, g);
  auto cells = d5.cells_row_major();
  for (const Cell& a : cells) {
    CHECK(p.at(a.i, a.j) > 0.0);
    CHECK(p.at(a.i, a.j) < 1.0);
    for (const Cell& b : cells)
      if (t.at(a.i, a.j) < t.at(b.i, b.j)) CHECK(p.at(a.i, a.j) < p.at(b.i, b.j));
  }
  CHECK(pyt_to_syt(p) == t);
}

TEST_CASE("projected configurations interlace") {
  Rng g = make_rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    StandardTableau t = sample_syt(Shape::staircase(6), g);
    PoissonizedTableau p = syt_to_pyt(t, g);
    PointConfig cfg = project_points(p, 6);
    CHECK(cfg.interlaces());
    for (const auto& [l, vals] : cfg.levels) {
      CHECK(static_cast<int>(vals.size()) == level_count(6, l));
      CHECK(std::is_sorted(vals.begin(), vals.end()));
      CHECK(cfg.first_m(l) == 1);
    }
  }
  // A corner-removed shape starts its shortened level at m = 2.
  Shape m62 = Shape::staircase_minus(6, 2);
  StandardTableau t = sample_syt(m62, g);
  PointConfig cfg = project_points(syt_to_pyt(t, g), 6);
  CHECK(cfg.first_m(4) == 2);
  CHECK(cfg.interlaces());
}

TEST_CASE("hand-built violations fail the interlacing check") {
  // Even level below: u(l,1) < u(l+1,1).
  PointConfig cfg;
  cfg.levels[2] = {0.5};
  cfg.levels[3] = {0.7};
  CHECK(cfg.interlaces());
  cfg.levels[3] = {0.2};
  CHECK_FALSE(cfg.interlaces());
  // Even-to-odd pair of pairs: u(4,1) < u(5,1) < u(4,2) < u(5,2).
  PointConfig cfg2;
  cfg2.levels[4] = {0.1, 0.9};
  cfg2.levels[5] = {0.5, 0.95};
  CHECK(cfg2.interlaces());
  cfg2.levels[5] = {0.05, 0.95};
  CHECK_FALSE(cfg2.interlaces());
  // Odd level strictly between its upper neighbors: u(6,1) < u(5,1) < u(6,2).
  PointConfig cfg3;
  cfg3.levels[5] = {0.5};
  cfg3.levels[6] = {0.2, 0.8};
  CHECK(cfg3.interlaces());
  cfg3.levels[6] = {0.6, 0.8};
  CHECK_FALSE(cfg3.interlaces());
  // Positive tolerance forgives small slack.
  PointConfig cfg4;
  cfg4.levels[2] = {0.5};
  cfg4.levels[3] = {0.5 - 1e-12};
  CHECK_FALSE(cfg4.interlaces());
  CHECK(cfg4.interlaces(1e-9));
}
