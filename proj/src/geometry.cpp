#include "linesimp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace linesimp {

Polyline::Polyline(std::vector<Point> vertices, double eps) {
  if (eps <= 0.0 || !std::isfinite(eps)) {
    throw InvalidParameter("polyline tolerance must be positive");
  }
  for (const Point& p : vertices) {
    if (!is_finite(p)) {
      throw InvalidPolyline("polyline vertex has a non-finite coordinate");
    }
  }
  pts_.reserve(vertices.size());
  for (const Point& p : vertices) {
    if (pts_.empty() || distance(pts_.back(), p) >= eps) {
      pts_.push_back(p);
    }
  }
  if (pts_.size() < 2) {
    throw InvalidPolyline("polyline needs at least 2 distinct vertices");
  }
}

double perpendicular_distance(Point p, Point chord_a, Point chord_b, double eps) {
  const Point d = chord_b - chord_a;
  const double len = norm(d);
  if (len < eps) {
    return distance(p, chord_a);
  }
  return std::abs(cross(d, p - chord_a)) / len;
}

double triangle_area(Point a, Point b, Point c) {
  return std::abs(cross(b - a, c - a)) / 2.0;
}

double turn_angle(Point a, Point b, Point c, double eps) {
  const Point u = b - a;
  const Point v = c - b;
  if (norm(u) < eps || norm(v) < eps) {
    throw DegenerateVertex("turn angle needs three pairwise distinct points");
  }
  const double rad = std::atan2(std::abs(cross(u, v)), dot(u, v));
  return rad * 180.0 / std::numbers::pi;
}

namespace {

// Signed perpendicular distance of p from the line through the segment;
// the segment length is already known by the caller.
double line_side(Point seg_origin, Point seg_dir, double seg_len, Point p) {
  return cross(seg_dir, p - seg_origin) / seg_len;
}

}  // namespace

SegmentClassification classify_segments(const Segment& s, const Segment& t, double eps) {
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double len_s = norm(r);
  const double len_t = norm(q);
  if (len_s < eps || len_t < eps) {
    return {SegmentRelation::kNone, {}};
  }

  const double d1 = line_side(s.a, r, len_s, t.a);
  const double d2 = line_side(s.a, r, len_s, t.b);
  const double d3 = line_side(t.a, q, len_t, s.a);
  const double d4 = line_side(t.a, q, len_t, s.b);

  const bool z1 = std::abs(d1) <= eps;
  const bool z2 = std::abs(d2) <= eps;
  const bool z3 = std::abs(d3) <= eps;
  const bool z4 = std::abs(d4) <= eps;

  if (z1 && z2 && z3 && z4) {
    // Collinear: project onto s's direction and compare 1D extents.
    const double sa = 0.0;
    const double sb = len_s;
    double ta = dot(t.a - s.a, r) / len_s;
    double tb = dot(t.b - s.a, r) / len_s;
    if (ta > tb) std::swap(ta, tb);
    const double overlap = std::min(sb, tb) - std::max(sa, ta);
    if (overlap > eps) {
      return {SegmentRelation::kCollinearOverlap, {}};
    }
    return {SegmentRelation::kNone, {}};
  }

  // Any vertex sitting on the other line is a touch, not a proper crossing.
  if (z1 || z2 || z3 || z4) {
    return {SegmentRelation::kNone, {}};
  }
  if ((d1 > 0.0) == (d2 > 0.0) || (d3 > 0.0) == (d4 > 0.0)) {
    return {SegmentRelation::kNone, {}};
  }

  const double denom = cross(r, q);
  const double along = cross(t.a - s.a, q) / denom;
  return {SegmentRelation::kProperCrossing, s.a + along * r};
}

std::optional<Point> segments_intersect(const Segment& s, const Segment& t, double eps) {
  const SegmentClassification c = classify_segments(s, t, eps);
  switch (c.relation) {
    case SegmentRelation::kProperCrossing:
      return c.at;
    case SegmentRelation::kCollinearOverlap:
      throw CollinearOverlap("segments overlap along a shared line");
    case SegmentRelation::kNone:
      break;
  }
  return std::nullopt;
}

double polyline_length(const Polyline& line) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    total += distance(line[i], line[i + 1]);
  }
  return total;
}

}  // namespace linesimp
