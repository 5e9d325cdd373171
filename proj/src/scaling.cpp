#include "linesimp/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace linesimp {

HeadTailClassification head_tail_breaks(std::span<const double> values, double head_limit) {
  if (values.empty()) {
    throw EmptyInput("head/tail breaks needs at least one value");
  }
  if (!(head_limit > 0.0) || !(head_limit < 1.0)) {
    throw InvalidParameter("head limit must lie in (0, 1)");
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NegativeValue("head/tail breaks needs finite non-negative values");
    }
  }

  HeadTailClassification result;
  result.levels.assign(values.size(), 1);

  std::vector<std::size_t> current(values.size());
  std::iota(current.begin(), current.end(), std::size_t{0});

  while (current.size() >= 2) {
    double sum = 0.0;
    for (std::size_t i : current) sum += values[i];
    const double mean = sum / static_cast<double>(current.size());

    std::vector<std::size_t> head;
    for (std::size_t i : current) {
      if (values[i] > mean) head.push_back(i);
    }
    if (head.empty()) break;  // no variation above the mean

    const double fraction =
        static_cast<double>(head.size()) / static_cast<double>(current.size());
    if (fraction > head_limit) break;  // head no longer a small minority

    result.means.push_back(mean);
    result.head_fractions.push_back(fraction);
    result.head_counts.push_back(head.size());
    for (std::size_t i : head) ++result.levels[i];
    current = std::move(head);
  }

  result.ht_index = static_cast<int>(result.means.size()) + 1;
  return result;
}

int ht_index(std::span<const double> values) {
  return head_tail_breaks(values).ht_index;
}

RankSize rank_size(std::span<const double> values) {
  if (values.empty()) {
    throw EmptyInput("rank-size needs at least one value");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  RankSize result;
  result.pairs.reserve(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    result.pairs.push_back({r + 1, values[order[r]]});
  }
  return result;
}

namespace {

// Walk position: parameter t within segment seg.
struct WalkCursor {
  std::size_t seg = 0;
  double t = 0.0;
};

// First point after the cursor at exactly `radius` from `center`, found by
// intersecting each forward segment with the circle. A small parameter slack
// keeps crossings that land exactly on a shared vertex from being skipped by
// floating-point drift on either side of the boundary.
bool advance_to_circle(std::span<const Point> pts, WalkCursor& cursor, Point center,
                       double radius, Point& hit) {
  constexpr double kSlack = 1e-9;
  for (std::size_t j = cursor.seg; j + 1 < pts.size(); ++j) {
    const Point a = pts[j];
    const Point ab = pts[j + 1] - a;
    const double a2 = dot(ab, ab);
    if (a2 <= 0.0) continue;
    const double lo = (j == cursor.seg) ? cursor.t : 0.0;
    const Point ac = a - center;
    const double b2 = 2.0 * dot(ab, ac);
    const double c2 = dot(ac, ac) - radius * radius;
    const double disc = b2 * b2 - 4.0 * a2 * c2;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    for (double u : {(-b2 - sq) / (2.0 * a2), (-b2 + sq) / (2.0 * a2)}) {
      if (u > lo + kSlack && u <= 1.0 + kSlack) {
        u = std::min(u, 1.0);
        cursor = {j, u};
        hit = a + u * ab;
        return true;
      }
    }
  }
  return false;
}

struct LineFit {
  double slope = 0.0;
  double r2 = 1.0;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) {
    throw InsufficientSamples("power-law fit needs at least two distinct rulers");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double pred = my + fit.slope * (xs[i] - mx);
      ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace

std::vector<DividerSample> divider_walk(const Polyline& line, std::span<const double> rulers,
                                        bool count_partial) {
  const double extent = distance(line.front(), line.back());
  for (std::size_t i = 0; i < rulers.size(); ++i) {
    if (!(rulers[i] > 0.0) || !std::isfinite(rulers[i])) {
      throw RulerNotPositive("divider rulers must be positive");
    }
    if (i > 0 && rulers[i] >= rulers[i - 1]) {
      throw InvalidParameter("divider rulers must be strictly decreasing");
    }
    if (rulers[i] >= extent) {
      throw RulerTooLarge("divider ruler must be smaller than the end-to-end extent");
    }
  }

  const std::span<const Point> pts(line.points());
  std::vector<DividerSample> samples;
  samples.reserve(rulers.size());
  for (double ruler : rulers) {
    DividerSample sample;
    sample.ruler = ruler;
    WalkCursor cursor;
    Point chord_end = pts[0];
    Point hit;
    while (advance_to_circle(pts, cursor, chord_end, ruler, hit)) {
      chord_end = hit;
      ++sample.steps;
    }
    sample.remainder = distance(chord_end, line.back());
    sample.walked_length =
        static_cast<double>(sample.steps) * ruler + (count_partial ? sample.remainder : 0.0);
    samples.push_back(sample);
  }
  return samples;
}

DimensionFit fit_dimension(std::span<const double> rulers, std::span<const double> counts) {
  if (rulers.size() != counts.size() || rulers.size() < 2) {
    throw InsufficientSamples("dimension fit needs at least 2 samples");
  }
  std::vector<double> log_r, log_n, log_l;
  log_r.reserve(rulers.size());
  log_n.reserve(rulers.size());
  log_l.reserve(rulers.size());
  for (std::size_t i = 0; i < rulers.size(); ++i) {
    if (!(rulers[i] > 0.0) || !(counts[i] > 0.0)) {
      throw InvalidParameter("dimension fit needs positive rulers and counts");
    }
    log_r.push_back(std::log(rulers[i]));
    log_n.push_back(std::log(counts[i]));
    log_l.push_back(std::log(counts[i] * rulers[i]));
  }
  const LineFit n_fit = least_squares(log_r, log_n);
  const LineFit l_fit = least_squares(log_r, log_l);
  return {-n_fit.slope, n_fit.r2, l_fit.slope};
}

DimensionFit fit_dimension(std::span<const DividerSample> samples) {
  if (samples.size() < 2) {
    throw InsufficientSamples("dimension fit needs at least 2 samples");
  }
  std::vector<double> log_r, log_n, log_l;
  for (const DividerSample& s : samples) {
    if (!(s.ruler > 0.0) || s.steps <= 0 || !(s.walked_length > 0.0)) {
      throw InvalidParameter("dimension fit needs positive rulers, steps and lengths");
    }
    log_r.push_back(std::log(s.ruler));
    log_n.push_back(std::log(static_cast<double>(s.steps)));
    log_l.push_back(std::log(s.walked_length));
  }
  const LineFit n_fit = least_squares(log_r, log_n);
  const LineFit l_fit = least_squares(log_r, log_l);
  return {-n_fit.slope, n_fit.r2, l_fit.slope};
}

}  // namespace linesimp
