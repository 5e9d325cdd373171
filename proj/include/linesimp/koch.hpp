#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linesimp/geometry.hpp"

namespace linesimp {

// Parameters of the generator. Defaults build the classic curve: each segment
// is replaced by four pieces with an equilateral apex over the middle third.
// ratio places the two inner vertices at fractions ratio and 1-ratio of the
// parent segment; height_factor scales the apex height, so large values give
// spiky, eventually self-crossing curves.
struct KochSpec {
  int iterations = 0;
  double ratio = 1.0 / 3.0;
  double height_factor = 1.0;
};

inline constexpr std::size_t kDefaultVertexBudget = std::size_t{1} << 26;

// Curve from (0,0) to (1,0) with 4^n + 1 vertices.
// Throws InvalidParameter for a spec outside its domain and IterationTooLarge
// when the vertex count would exceed the budget.
Polyline koch_curve(const KochSpec& spec, std::size_t vertex_budget = kDefaultVertexBudget);

// Same curve plus, per vertex, the iteration that introduced it
// (0 for the two baseline endpoints).
struct LeveledKochCurve {
  Polyline line;
  std::vector<int> introduced_at;

  LeveledKochCurve(Polyline l, std::vector<int> lv)
      : line(std::move(l)), introduced_at(std::move(lv)) {}
};

LeveledKochCurve koch_curve_leveled(const KochSpec& spec,
                                    std::size_t vertex_budget = kDefaultVertexBudget);

// One size class of generator triangles: 4^(level-1) triangles of side
// 3^-level, level 1 being the largest.
struct TriangleClass {
  double scale = 0.0;
  std::int64_t count = 0;
  int level = 0;
};

struct TriangleInventory {
  std::vector<TriangleClass> entries;  // ordered by descending scale

  // One value per triangle, largest scale first: the (4^n - 1) / 3 sizes.
  std::vector<double> expanded() const;
  std::int64_t total_count() const;
};

// Triangles added by n default-ratio iterations.
TriangleInventory triangle_inventory(int iterations);

// Removes the k smallest triangle levels of the default curve of n iterations:
// every vertex those triangles introduced disappears and the vertex set of
// koch_curve(n - k) remains. Throws LevelOutOfRange unless 0 <= k <= n.
Polyline koch_drop_levels(int iterations, int dropped_levels,
                          std::size_t vertex_budget = kDefaultVertexBudget);

}  // namespace linesimp
