#include "linesimp/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

namespace linesimp {

const char* to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kPerpDistance: return "x";
    case MeasureKind::kRatio: return "ratio";
    case MeasureKind::kTriangleArea: return "area";
    case MeasureKind::kTurnAngle: return "angle";
  }
  return "?";
}

std::vector<double> MeasureTree::interior_values() const {
  if (values.size() < 2) return {};
  return std::vector<double>(values.begin() + 1, values.end() - 1);
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Farthest interior vertex of span (i, j) from the chord i-j; lowest index on
// ties. Returns {index, distance}.
std::pair<std::size_t, double> farthest_from_chord(std::span<const Point> pts, std::size_t i,
                                                   std::size_t j) {
  std::size_t best = i + 1;
  double best_dist = -1.0;
  for (std::size_t k = i + 1; k < j; ++k) {
    const double d = perpendicular_distance(pts[k], pts[i], pts[j]);
    if (d > best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return {best, best_dist};
}

std::string format_tag(const char* fmt, ...) {
  char buf[128];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

}  // namespace

MeasureTree measure_tree(const Polyline& line, MeasureKind kind, bool clamp_to_parent) {
  const std::size_t n = line.size();
  if (n < 3) {
    throw TooFewVertices("measure tree needs at least 3 vertices");
  }
  const std::span<const Point> pts(line.points());

  MeasureTree tree;
  tree.values.assign(n, kNan);

  if (kind == MeasureKind::kTurnAngle) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      tree.values[i] = turn_angle(pts[i - 1], pts[i], pts[i + 1]);
    }
    return tree;
  }

  struct Frame {
    std::size_t begin;
    std::size_t end;
    double parent_cap;
  };
  std::vector<Frame> stack;
  stack.push_back({0, n - 1, kInf});
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    if (frame.end - frame.begin < 2) continue;

    const auto [split, x] = farthest_from_chord(pts, frame.begin, frame.end);
    double value = 0.0;
    switch (kind) {
      case MeasureKind::kPerpDistance:
        value = x;
        break;
      case MeasureKind::kRatio: {
        const double chord = distance(pts[frame.begin], pts[frame.end]);
        if (chord < kEpsilon) {
          throw RatioUndefined("ratio measure undefined over a degenerate chord");
        }
        value = x / chord;
        break;
      }
      case MeasureKind::kTriangleArea:
        value = triangle_area(pts[frame.begin], pts[split], pts[frame.end]);
        break;
      case MeasureKind::kTurnAngle:
        break;  // handled above
    }
    if (clamp_to_parent) {
      value = std::min(value, frame.parent_cap);
    }
    tree.values[split] = value;
    tree.split_order.push_back({frame.begin, frame.end, split});

    const double cap = clamp_to_parent ? value : kInf;
    stack.push_back({split, frame.end, cap});
    stack.push_back({frame.begin, split, cap});
  }
  return tree;
}

Polyline SimplificationResult::apply(const Polyline& original) const {
  std::vector<Point> pts;
  pts.reserve(retained.size());
  for (std::size_t i : retained) {
    pts.push_back(original[i]);
  }
  return Polyline(std::move(pts));
}

SimplificationResult simplify_ht(const Polyline& line, MeasureKind kind, int keep_level,
                                 double head_limit) {
  if (keep_level < 1) {
    throw InvalidParameter("keep level must be >= 1");
  }
  const MeasureTree tree = measure_tree(line, kind);
  const std::vector<double> interior = tree.interior_values();
  const HeadTailClassification classes = head_tail_breaks(interior, head_limit);
  // A cut beyond the classification keeps only the top level. When the
  // classification never split (ht 1, e.g. all measures zero), any cut above
  // 1 keeps just the endpoints: a flat interior has no head to retain.
  const int level_cut =
      (keep_level <= 1) ? 1 : std::min(keep_level, std::max(classes.ht_index, 2));

  SimplificationResult result;
  const std::size_t n = line.size();
  result.levels.assign(n, 0);
  result.levels.front() = classes.ht_index;
  result.levels.back() = classes.ht_index;
  result.retained.push_back(0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const int level = classes.levels[i - 1];
    result.levels[i] = level;
    if (level >= level_cut) {
      result.retained.push_back(i);
    }
  }
  result.retained.push_back(n - 1);
  result.algorithm = format_tag("ht(measure=%s,level=%d,head_limit=%g)", to_string(kind),
                                keep_level, head_limit);
  return result;
}

SimplificationResult simplify_dp(const Polyline& line, double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw NonPositiveTolerance("douglas-peucker tolerance must be positive");
  }
  const std::size_t n = line.size();
  const std::span<const Point> pts(line.points());

  std::vector<char> keep(n, 0);
  keep.front() = keep.back() = 1;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  stack.emplace_back(0, n - 1);
  while (!stack.empty()) {
    const auto [begin, end] = stack.back();
    stack.pop_back();
    if (end - begin < 2) continue;
    const auto [split, x] = farthest_from_chord(pts, begin, end);
    if (x >= tolerance) {
      keep[split] = 1;
      stack.emplace_back(split, end);
      stack.emplace_back(begin, split);
    }
  }

  SimplificationResult result;
  result.levels.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) result.retained.push_back(i);
  }
  result.algorithm = format_tag("dp(tolerance=%g)", tolerance);
  return result;
}

namespace {

enum class VwStop { kMinArea, kCount };

SimplificationResult run_visvalingam(const Polyline& line, VwStop stop, double min_area,
                                     std::size_t target_count) {
  const std::size_t n = line.size();
  const std::span<const Point> pts(line.points());

  std::vector<std::size_t> prev(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = (i == 0) ? n : i - 1;
    next[i] = i + 1;  // n marks "none"
  }
  std::vector<char> alive(n, 1);
  std::vector<std::uint64_t> stamp(n, 0);

  using Entry = std::tuple<double, std::size_t, std::uint64_t>;  // area, index, stamp
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  auto effective_area = [&](std::size_t i) {
    return triangle_area(pts[prev[i]], pts[i], pts[next[i]]);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    heap.emplace(effective_area(i), i, 0);
  }

  SimplificationResult result;
  std::size_t remaining = n;
  while (!heap.empty()) {
    const auto [area, idx, seen] = heap.top();
    heap.pop();
    if (!alive[idx] || seen != stamp[idx]) continue;  // stale entry
    if (stop == VwStop::kMinArea && area >= min_area) break;
    if (stop == VwStop::kCount && remaining <= target_count) break;

    alive[idx] = 0;
    --remaining;
    result.eliminated.push_back(idx);
    const std::size_t p = prev[idx];
    const std::size_t q = next[idx];
    next[p] = q;
    prev[q] = p;
    if (p != 0 && p != n) {
      heap.emplace(effective_area(p), p, ++stamp[p]);
    }
    if (q != n - 1 && q != n) {
      heap.emplace(effective_area(q), q, ++stamp[q]);
    }
  }

  result.levels.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (alive[i]) result.retained.push_back(i);
  }
  return result;
}

}  // namespace

SimplificationResult simplify_vw(const Polyline& line, double min_area) {
  if (!(min_area > 0.0) || !std::isfinite(min_area)) {
    throw NonPositiveThreshold("visvalingam area threshold must be positive");
  }
  SimplificationResult result = run_visvalingam(line, VwStop::kMinArea, min_area, 0);
  result.algorithm = format_tag("vw(min_area=%g)", min_area);
  return result;
}

SimplificationResult simplify_vw_count(const Polyline& line, std::size_t target_count) {
  if (target_count < 2 || target_count > line.size()) {
    throw TargetOutOfRange("visvalingam target count must lie in [2, vertex count]");
  }
  SimplificationResult result = run_visvalingam(line, VwStop::kCount, 0.0, target_count);
  result.algorithm = format_tag("vw(count=%zu)", target_count);
  return result;
}

std::vector<Crossing> detect_self_intersections(std::span<const Point> pts, double eps) {
  std::vector<Crossing> crossings;
  if (pts.size() < 4) return crossings;
  const std::size_t segs = pts.size() - 1;

  struct Box {
    double min_x, max_x, min_y, max_y;
  };
  std::vector<Box> boxes(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    boxes[i] = {std::min(pts[i].x, pts[i + 1].x), std::max(pts[i].x, pts[i + 1].x),
                std::min(pts[i].y, pts[i + 1].y), std::max(pts[i].y, pts[i + 1].y)};
  }

  for (std::size_t i = 0; i + 2 < segs; ++i) {
    for (std::size_t j = i + 2; j < segs; ++j) {
      if (boxes[i].min_x > boxes[j].max_x + eps || boxes[j].min_x > boxes[i].max_x + eps ||
          boxes[i].min_y > boxes[j].max_y + eps || boxes[j].min_y > boxes[i].max_y + eps) {
        continue;
      }
      const SegmentClassification c =
          classify_segments({pts[i], pts[i + 1]}, {pts[j], pts[j + 1]}, eps);
      if (c.relation == SegmentRelation::kProperCrossing) {
        crossings.push_back({i, j, c.at});
      }
    }
  }
  return crossings;
}

std::vector<Crossing> detect_self_intersections(const Polyline& line, double eps) {
  return detect_self_intersections(std::span<const Point>(line.points()), eps);
}

SimplificationResult repair_crossings(const Polyline& original, const SimplificationResult& result,
                                      MeasureKind kind) {
  SimplificationResult repaired = result;
  repaired.residual_crossings = false;

  std::vector<double> measure;
  if (original.size() >= 3) {
    measure = measure_tree(original, kind).values;
  } else {
    measure.assign(original.size(), kNan);
  }

  std::set<std::size_t> retained(repaired.retained.begin(), repaired.retained.end());
  bool inserted_any = false;

  auto current_points = [&]() {
    std::vector<Point> pts;
    pts.reserve(retained.size());
    for (std::size_t i : retained) pts.push_back(original[i]);
    return pts;
  };

  std::vector<Point> pts = current_points();
  while (true) {
    const std::vector<Crossing> crossings = detect_self_intersections(std::span<const Point>(pts));
    if (crossings.empty()) break;

    // Reinsert the most shape-salient removed vertex inside either segment of
    // the first repairable crossing.
    std::vector<std::size_t> ordered(retained.begin(), retained.end());
    bool inserted = false;
    for (const Crossing& crossing : crossings) {
      std::size_t best = 0;
      double best_value = -1.0;
      for (std::size_t seg : {crossing.seg_a, crossing.seg_b}) {
        const std::size_t lo = ordered[seg];
        const std::size_t hi = ordered[seg + 1];
        for (std::size_t cand = lo + 1; cand < hi; ++cand) {
          const double v = std::isnan(measure[cand]) ? 0.0 : measure[cand];
          if (v > best_value) {
            best_value = v;
            best = cand;
          }
        }
      }
      if (best_value >= 0.0) {
        retained.insert(best);
        inserted = true;
        inserted_any = true;
        break;
      }
    }
    if (!inserted) {
      repaired.residual_crossings = true;
      break;
    }
    pts = current_points();
  }

  repaired.retained.assign(retained.begin(), retained.end());
  if (inserted_any) {
    repaired.algorithm += "+repair";
  }
  return repaired;
}

ScalingReport assess_scaling_retention(const Polyline& original, const Polyline& simplified,
                                       MeasureKind kind, double head_limit) {
  const std::vector<double> before = measure_tree(original, kind).interior_values();
  const std::vector<double> after = measure_tree(simplified, kind).interior_values();
  const HeadTailClassification ht_before = head_tail_breaks(before, head_limit);
  const HeadTailClassification ht_after = head_tail_breaks(after, head_limit);

  ScalingReport report;
  report.ht_before = ht_before.ht_index;
  report.ht_after = ht_after.ht_index;
  report.head_fractions_before = ht_before.head_fractions;
  report.head_fractions_after = ht_after.head_fractions;
  report.rank_size_before = rank_size(before);
  report.rank_size_after = rank_size(after);
  return report;
}

}  // namespace linesimp
