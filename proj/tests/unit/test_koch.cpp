#include <cmath>

#include "doctest.h"
#include "linesimp/koch.hpp"
#include "linesimp/simplify.hpp"

using namespace linesimp;

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
}

TEST_CASE("koch baseline and generator") {
  const Polyline base = koch_curve({.iterations = 0});
  REQUIRE(base.size() == 2);
  CHECK(base[0].x == 0.0);
  CHECK(base[1].x == 1.0);
  CHECK(polyline_length(base) == doctest::Approx(1.0));

  const Polyline gen = koch_curve({.iterations = 1});
  REQUIRE(gen.size() == 5);
  CHECK(polyline_length(gen) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(gen[2].x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gen[2].y == doctest::Approx(kSqrt3 / 6.0).epsilon(1e-12));
}

TEST_CASE("koch counts and lengths grow as 4^n and (4/3)^n") {
  for (int n = 0; n <= 8; ++n) {
    const Polyline curve = koch_curve({.iterations = n});
    CHECK(curve.size() == (std::size_t{1} << (2 * n)) + 1);
    CHECK(polyline_length(curve) ==
          doctest::Approx(std::pow(4.0 / 3.0, n)).epsilon(1e-12));
  }
}

TEST_CASE("koch vertex budget") {
  CHECK_THROWS_AS(koch_curve({.iterations = 13}), IterationTooLarge);
  CHECK_THROWS_AS(koch_curve({.iterations = 30}), IterationTooLarge);
  CHECK_THROWS_AS(koch_curve({.iterations = 3}, 64), IterationTooLarge);
  CHECK(koch_curve({.iterations = 3}, 65).size() == 65);
}

TEST_CASE("koch spec validation") {
  CHECK_THROWS_AS(koch_curve({.iterations = -1}), InvalidParameter);
  CHECK_THROWS_AS(koch_curve({.iterations = 1, .ratio = 0.0}), InvalidParameter);
  CHECK_THROWS_AS(koch_curve({.iterations = 1, .ratio = 0.6}), InvalidParameter);
  CHECK_THROWS_AS(koch_curve({.iterations = 1, .ratio = -0.3}), InvalidParameter);
  CHECK_THROWS_AS(koch_curve({.iterations = 1, .height_factor = 0.0}), InvalidParameter);
  CHECK_NOTHROW(koch_curve({.iterations = 1, .ratio = 0.5}));
}

TEST_CASE("triangle inventory") {
  const TriangleInventory inv3 = triangle_inventory(3);
  REQUIRE(inv3.entries.size() == 3);
  CHECK(inv3.entries[0].scale == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(inv3.entries[0].count == 1);
  CHECK(inv3.entries[0].level == 1);
  CHECK(inv3.entries[1].scale == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(inv3.entries[1].count == 4);
  CHECK(inv3.entries[2].scale == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(inv3.entries[2].count == 16);
  CHECK(inv3.total_count() == 21);
  CHECK(inv3.expanded().size() == 21);

  CHECK(triangle_inventory(0).entries.empty());

  const TriangleInventory inv1 = triangle_inventory(1);
  REQUIRE(inv1.entries.size() == 1);
  CHECK(inv1.entries[0].scale == doctest::Approx(1.0 / 3.0));
  CHECK(inv1.entries[0].count == 1);

  for (int n = 0; n <= 6; ++n) {
    const std::int64_t expected = ((std::int64_t{1} << (2 * n)) - 1) / 3;  // (4^n - 1) / 3
    CHECK(triangle_inventory(n).total_count() == expected);
  }
  CHECK_THROWS_AS(triangle_inventory(-1), InvalidParameter);
}

TEST_CASE("dropping triangle levels rewinds the construction") {
  const Polyline full = koch_curve({.iterations = 3});

  SUBCASE("k = 1 leaves iteration 2") {
    const Polyline dropped = koch_drop_levels(3, 1);
    const Polyline reference = koch_curve({.iterations = 2});
    REQUIRE(dropped.size() == 17);
    REQUIRE(dropped.size() == reference.size());
    for (std::size_t i = 0; i < dropped.size(); ++i) {
      CHECK(dropped[i].x == doctest::Approx(reference[i].x).epsilon(1e-12));
      CHECK(dropped[i].y == doctest::Approx(reference[i].y).epsilon(1e-12));
    }
  }

  SUBCASE("k = 2 leaves the generator") {
    const Polyline dropped = koch_drop_levels(3, 2);
    const Polyline reference = koch_curve({.iterations = 1});
    REQUIRE(dropped.size() == 5);
    for (std::size_t i = 0; i < dropped.size(); ++i) {
      CHECK(dropped[i].x == doctest::Approx(reference[i].x).epsilon(1e-12));
      CHECK(dropped[i].y == doctest::Approx(reference[i].y).epsilon(1e-12));
    }
  }

  SUBCASE("k = 0 is the identity") {
    const Polyline dropped = koch_drop_levels(3, 0);
    REQUIRE(dropped.size() == full.size());
    for (std::size_t i = 0; i < dropped.size(); ++i) {
      CHECK(dropped[i].x == full[i].x);
      CHECK(dropped[i].y == full[i].y);
    }
  }

  SUBCASE("k = n leaves the baseline") {
    CHECK(koch_drop_levels(3, 3).size() == 2);
  }

  SUBCASE("out of range") {
    CHECK_THROWS_AS(koch_drop_levels(3, 4), LevelOutOfRange);
    CHECK_THROWS_AS(koch_drop_levels(3, -1), LevelOutOfRange);
  }
}

TEST_CASE("length removed by a drop matches the power law") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double removed =
          polyline_length(koch_curve({.iterations = n})) - polyline_length(koch_drop_levels(n, k));
      const double expected = std::pow(4.0 / 3.0, n) - std::pow(4.0 / 3.0, n - k);
      CHECK(removed == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("tall generators self-intersect once sub-bumps exist") {
  CHECK(detect_self_intersections(koch_curve({.iterations = 3})).empty());
  CHECK(detect_self_intersections(koch_curve({.iterations = 4})).empty());

  // One sub-level is never enough to reach a neighbouring bump: iteration 2
  // stays simple for any height, and crossings start at iteration 3.
  CHECK(detect_self_intersections(koch_curve({.iterations = 2, .height_factor = 3.0})).empty());
  CHECK_FALSE(
      detect_self_intersections(koch_curve({.iterations = 3, .height_factor = 2.0})).empty());
  CHECK_FALSE(
      detect_self_intersections(koch_curve({.iterations = 3, .height_factor = 3.0})).empty());
  CHECK_FALSE(
      detect_self_intersections(koch_curve({.iterations = 4, .height_factor = 3.0})).empty());
}
