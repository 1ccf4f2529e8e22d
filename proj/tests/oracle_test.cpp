#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "credal/errors.hpp"
#include "credal/oracle.hpp"
#include "test_util.hpp"

using namespace credal;
using credal::oracle::GridSpec;
using testutil::lang_n;

TEST_CASE("grid_points: full simplex at n=1, d=2") {
  Language l1 = lang_n(1);
  auto pts = oracle::grid_points(ConstraintSet(l1), GridSpec{2});
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == parse_distribution("0:0 1:1", l1));
  CHECK(pts[1] == parse_distribution("0:1/2 1:1/2", l1));
  CHECK(pts[2] == parse_distribution("0:1", l1));
}

TEST_CASE("grid_points: constrained") {
  Language l1 = lang_n(1);
  ConstraintSet s(l1);
  s.constraints.push_back(parse_constraint("P(p) = 1", l1));
  auto pts = oracle::grid_points(s, GridSpec{4});
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].mass(1) == 1);  // all mass on the p-atom
  CHECK(pts[0].mass(0) == 0);
}

TEST_CASE("grid_points: stars-and-bars count and exact satisfaction") {
  testutil::Rng rng(31);
  Language l2 = lang_n(2);
  CHECK(oracle::grid_points(ConstraintSet(l2), GridSpec{6}).size() == 84);  // C(9,3)

  for (int i = 0; i < 30; ++i) {
    ConstraintSet s = testutil::random_feasible_set(rng, l2, 1 + rng.below(2));
    for (const auto& p : oracle::grid_points(s, GridSpec{8})) CHECK(satisfies(p, s));
  }
}

TEST_CASE("grid budget enforced") {
  Language l4 = lang_n(4);
  CHECK_THROWS_AS(oracle::grid_points(ConstraintSet(l4), GridSpec{400, 1000}), CapError);
}

TEST_CASE("vertices: full simplex and caps") {
  Language l1 = lang_n(1);
  auto verts = oracle::vertices(ConstraintSet(l1));
  REQUIRE(verts.size() == 2);
  CHECK(verts[0] == parse_distribution("0:0 1:1", l1));
  CHECK(verts[1] == parse_distribution("0:1", l1));

  std::vector<std::string> names{"a", "b", "c", "d", "e"};
  Language l5 = Language::make(names);
  CHECK_THROWS_AS(oracle::vertices(ConstraintSet(l5)), CapError);
}

TEST_CASE("vertices: three assassins") {
  testutil::Assassins fx;
  auto verts = oracle::vertices(fx.prior);
  REQUIRE(verts.size() == 2);
  // (alpha: 1/2, gamma: 1/2) and (beta: 1/2, gamma: 1/2), atoms 1, 2, 4
  CHECK(verts[0] == parse_distribution("2:1/2 4:1/2", fx.lang));
  CHECK(verts[1] == parse_distribution("1:1/2 4:1/2", fx.lang));
}

TEST_CASE("vertices: singleton and infeasible polytopes") {
  Language l2 = lang_n(2);
  ConstraintSet pin(l2);
  pin.constraints.push_back(parse_constraint("P(p & q) = 1/3", l2));
  pin.constraints.push_back(parse_constraint("P(p & !q) = 1/3", l2));
  pin.constraints.push_back(parse_constraint("P(!p & q) = 1/3", l2));
  auto verts = oracle::vertices(pin);
  REQUIRE(verts.size() == 1);
  CHECK(verts[0] == parse_distribution("3:1/3 1:1/3 2:1/3", l2));

  ConstraintSet bad(l2);
  bad.constraints.push_back(parse_constraint("P(p) = 1", l2));
  bad.constraints.push_back(parse_constraint("P(p) = 0", l2));
  CHECK(oracle::vertices(bad).empty());
}

TEST_CASE("kl_grid_min: trivial and forced cases") {
  Language l1 = lang_n(1);
  ProbFunction u = uniform(l1);

  ConstraintSet loose(l1);
  loose.constraints.push_back(parse_constraint("P(p) <= 1", l1));
  auto [point, obj] = oracle::kl_grid_min(u, loose, GridSpec{10});
  CHECK(point == u);
  CHECK(std::fabs(obj) <= 1e-12);

  ConstraintSet tenth(l1);
  tenth.constraints.push_back(parse_constraint("P(p) = 1/10", l1));
  auto [forced, fobj] = oracle::kl_grid_min(u, tenth, GridSpec{10});
  CHECK(forced == parse_distribution("1:1/10 0:9/10", l1));
  CHECK(fobj > 0.0);
}

TEST_CASE("kl_grid_min: Example 4 objective at resolution 400") {
  Language l2 = lang_n(2);
  ConstraintSet s(l2);
  s.constraints.push_back(parse_constraint("P(p & q) = 1/2", l2));
  auto [point, obj] = oracle::kl_grid_min(uniform(l2), s, GridSpec{400});
  // target: I((1/2,1/6,1/6,1/6), uniform)
  double expected = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  CHECK(std::fabs(obj - expected) <= 1e-3);
  CHECK(point.mass(3) == Rational(1, 2));
}

TEST_CASE("kl_grid_min: respects the prior's support") {
  Language l1 = lang_n(1);
  ProbFunction point = parse_distribution("1:1", l1);
  ConstraintSet s(l1);
  s.constraints.push_back(parse_constraint("P(p) >= 1/2", l1));
  auto [best, obj] = oracle::kl_grid_min(point, s, GridSpec{8});
  CHECK(best == point);  // any mass on !p has infinite divergence
  CHECK(std::fabs(obj) <= 1e-12);

  ConstraintSet off(l1);
  off.constraints.push_back(parse_constraint("P(!p) = 1", l1));
  CHECK_THROWS_AS(oracle::kl_grid_min(point, off, GridSpec{8}), InfeasibleError);
}
