#include "linesimp/koch.hpp"

#include <cmath>
#include <utility>

namespace linesimp {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void validate(const KochSpec& spec) {
  if (spec.iterations < 0) {
    throw InvalidParameter("koch iterations must be >= 0");
  }
  if (!(spec.ratio > 0.0) || spec.ratio > 0.5) {
    throw InvalidParameter("koch ratio must lie in (0, 0.5]");
  }
  if (!(spec.height_factor > 0.0) || !std::isfinite(spec.height_factor)) {
    throw InvalidParameter("koch height factor must be positive");
  }
}

std::size_t vertex_count(int iterations, std::size_t budget) {
  if (iterations > 31) {
    throw IterationTooLarge("koch iteration count exceeds the vertex budget");
  }
  const std::uint64_t verts = (std::uint64_t{1} << (2 * iterations)) + 1;  // 4^n + 1
  if (verts > budget) {
    throw IterationTooLarge("koch iteration count exceeds the vertex budget");
  }
  return static_cast<std::size_t>(verts);
}

}  // namespace

LeveledKochCurve koch_curve_leveled(const KochSpec& spec, std::size_t vertex_budget) {
  validate(spec);
  const std::size_t final_count = vertex_count(spec.iterations, vertex_budget);

  std::vector<Point> pts = {{0.0, 0.0}, {1.0, 0.0}};
  std::vector<int> level = {0, 0};
  const double height = (kSqrt3 / 2.0) * spec.ratio * spec.height_factor;

  for (int it = 1; it <= spec.iterations; ++it) {
    std::vector<Point> next;
    std::vector<int> next_level;
    next.reserve(4 * (pts.size() - 1) + 1);
    next_level.reserve(next.capacity());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Point p = pts[i];
      const Point d = pts[i + 1] - p;
      const Point perp{-d.y, d.x};
      next.push_back(p);
      next.push_back(p + spec.ratio * d);
      next.push_back(p + 0.5 * d + height * perp);
      next.push_back(p + (1.0 - spec.ratio) * d);
      next_level.push_back(level[i]);
      next_level.push_back(it);
      next_level.push_back(it);
      next_level.push_back(it);
    }
    next.push_back(pts.back());
    next_level.push_back(level.back());
    pts = std::move(next);
    level = std::move(next_level);
  }

  Polyline line(std::move(pts));
  if (line.size() != final_count) {
    // ratio/height combinations never collapse vertices for ratio <= 0.5
    throw InvalidParameter("koch construction produced coincident vertices");
  }
  return LeveledKochCurve(std::move(line), std::move(level));
}

Polyline koch_curve(const KochSpec& spec, std::size_t vertex_budget) {
  return koch_curve_leveled(spec, vertex_budget).line;
}

std::vector<double> TriangleInventory::expanded() const {
  std::vector<double> values;
  for (const TriangleClass& entry : entries) {
    values.insert(values.end(), static_cast<std::size_t>(entry.count), entry.scale);
  }
  return values;
}

std::int64_t TriangleInventory::total_count() const {
  std::int64_t total = 0;
  for (const TriangleClass& entry : entries) {
    total += entry.count;
  }
  return total;
}

TriangleInventory triangle_inventory(int iterations) {
  if (iterations < 0) {
    throw InvalidParameter("koch iterations must be >= 0");
  }
  TriangleInventory inventory;
  double denom = 1.0;
  std::int64_t count = 1;
  for (int k = 1; k <= iterations; ++k) {
    denom *= 3.0;
    inventory.entries.push_back({1.0 / denom, count, k});
    count *= 4;
  }
  return inventory;
}

Polyline koch_drop_levels(int iterations, int dropped_levels, std::size_t vertex_budget) {
  if (iterations < 0) {
    throw InvalidParameter("koch iterations must be >= 0");
  }
  if (dropped_levels < 0 || dropped_levels > iterations) {
    throw LevelOutOfRange("dropped level count must lie in [0, iterations]");
  }
  const LeveledKochCurve leveled = koch_curve_leveled({.iterations = iterations}, vertex_budget);
  const int keep_below = iterations - dropped_levels;
  std::vector<Point> kept;
  for (std::size_t i = 0; i < leveled.line.size(); ++i) {
    if (leveled.introduced_at[i] <= keep_below) {
      kept.push_back(leveled.line[i]);
    }
  }
  return Polyline(std::move(kept));
}

}  // namespace linesimp
