#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linesimp/errors.hpp"

namespace linesimp {

// Coincidence/degeneracy tolerance in map units, shared by the whole library.
inline constexpr double kEpsilon = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
  Point a;
  Point b;
};

// Ordered vertex chain. Construction rejects non-finite coordinates and drops
// consecutive vertices closer than eps; at least 2 vertices must survive.
class Polyline {
 public:
  explicit Polyline(std::vector<Point> vertices, double eps = kEpsilon);

  const std::vector<Point>& points() const noexcept { return pts_; }
  std::size_t size() const noexcept { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  const Point& front() const { return pts_.front(); }
  const Point& back() const { return pts_.back(); }

  auto begin() const noexcept { return pts_.begin(); }
  auto end() const noexcept { return pts_.end(); }

 private:
  std::vector<Point> pts_;
};

// Distance from p to the infinite line through chord_a-chord_b.
// Falls back to |p - chord_a| when the chord is shorter than eps.
double perpendicular_distance(Point p, Point chord_a, Point chord_b, double eps = kEpsilon);

// |cross(b-a, c-a)| / 2.
double triangle_area(Point a, Point b, Point c);

// Deviation from straight continuation at b, in degrees within [0, 180].
// 0 means a->b->c continues straight on. Throws DegenerateVertex if a~b or b~c.
double turn_angle(Point a, Point b, Point c, double eps = kEpsilon);

// How two closed segments relate: a single proper (interior) crossing,
// a collinear overlap of positive length, or neither.
enum class SegmentRelation { kNone, kProperCrossing, kCollinearOverlap };

struct SegmentClassification {
  SegmentRelation relation = SegmentRelation::kNone;
  Point at;  // valid only for kProperCrossing
};

SegmentClassification classify_segments(const Segment& s, const Segment& t, double eps = kEpsilon);

// Proper interior crossing point, or nullopt for disjoint, parallel and
// endpoint-touching pairs. Collinear overlap throws CollinearOverlap.
std::optional<Point> segments_intersect(const Segment& s, const Segment& t, double eps = kEpsilon);

// Sum of Euclidean segment lengths.
double polyline_length(const Polyline& line);

}  // namespace linesimp
