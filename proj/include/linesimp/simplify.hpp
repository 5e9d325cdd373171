#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "linesimp/geometry.hpp"
#include "linesimp/scaling.hpp"

namespace linesimp {

// Vertex measures of a cartographic curve. The first three are evaluated
// recursively at the farthest-point split of each chord; the turn angle is
// local to each vertex.
enum class MeasureKind {
  kPerpDistance,  // x
  kRatio,         // x/d
  kTriangleArea,  // d*x/2
  kTurnAngle,     // deviation angle at the vertex
};

const char* to_string(MeasureKind kind);

// One recursion step: span [begin, end] split at its farthest interior vertex.
struct SpanSplit {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t split = 0;
};

struct MeasureTree {
  // Per-vertex measure; NaN at the two endpoints, which carry no value.
  std::vector<double> values;
  // Pre-order record of the recursion; empty for the turn-angle measure.
  std::vector<SpanSplit> split_order;

  std::vector<double> interior_values() const;
};

// Assigns every interior vertex its measure. Recursive kinds split each span
// at the vertex farthest from the span's chord (lowest index on ties) and
// evaluate the chosen measure there; clamp_to_parent caps each value at its
// parent's for a monotone hierarchy. Throws TooFewVertices below 3 vertices
// and RatioUndefined when a ratio chord degenerates.
MeasureTree measure_tree(const Polyline& line, MeasureKind kind, bool clamp_to_parent = false);

struct SimplificationResult {
  std::vector<std::size_t> retained;   // sorted, always contains both endpoints
  std::vector<int> levels;             // per original vertex; head/tail level for ht, else 0
  std::string algorithm;               // tag with parameters
  std::vector<std::size_t> eliminated; // vw only: vertices in elimination order
  bool residual_crossings = false;     // set by repair_crossings on exhaustion

  // The retained vertices of the line this result was computed from.
  Polyline apply(const Polyline& original) const;
};

// Head/tail-breaks simplification: classify the interior measure values and
// keep vertices of level >= keep_level (clamped to the ht-index) plus the
// endpoints. keep_level 1 keeps everything.
SimplificationResult simplify_ht(const Polyline& line, MeasureKind kind, int keep_level,
                                 double head_limit = 0.4);

// Douglas-Peucker: split at the farthest vertex while its distance reaches
// tolerance, drop the rest. Ties split at the lowest index.
SimplificationResult simplify_dp(const Polyline& line, double tolerance);

// Visvalingam-Whyatt: repeatedly remove the interior vertex whose triangle
// with its current neighbours has the smallest area (lowest index on ties),
// until every remaining area is >= min_area / until target_count remain.
SimplificationResult simplify_vw(const Polyline& line, double min_area);
SimplificationResult simplify_vw_count(const Polyline& line, std::size_t target_count);

struct Crossing {
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;  // seg_a < seg_b
  Point at;
};

// All proper crossings between non-adjacent segments, in lexicographic
// (seg_a, seg_b) order. Collinear overlaps are not point crossings and are
// not reported.
std::vector<Crossing> detect_self_intersections(std::span<const Point> pts,
                                                double eps = kEpsilon);
std::vector<Crossing> detect_self_intersections(const Polyline& line, double eps = kEpsilon);

// While the simplified line self-intersects, reinsert the removed original
// vertex with the largest measure value among those inside either offending
// segment. Sets residual_crossings instead of throwing when no candidate can
// help.
SimplificationResult repair_crossings(const Polyline& original, const SimplificationResult& result,
                                      MeasureKind kind = MeasureKind::kPerpDistance);

// Side-by-side scaling statistics of a curve and its simplification.
struct ScalingReport {
  int ht_before = 1;
  int ht_after = 1;
  std::vector<double> head_fractions_before;
  std::vector<double> head_fractions_after;
  RankSize rank_size_before;
  RankSize rank_size_after;
};

ScalingReport assess_scaling_retention(const Polyline& original, const Polyline& simplified,
                                       MeasureKind kind, double head_limit = 0.4);

}  // namespace linesimp
