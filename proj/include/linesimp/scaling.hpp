#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "linesimp/geometry.hpp"

namespace linesimp {

// Result of recursive mean splits over a heavy-tailed value set.
// means[k] is the mean of the k-th split's input; head_fractions[k] and
// head_counts[k] describe the minority strictly above it. ht_index is
// splits + 1; levels[i] is 1 plus the number of means values[i] exceeds.
struct HeadTailClassification {
  std::vector<double> means;
  std::vector<double> head_fractions;
  std::vector<std::size_t> head_counts;
  std::vector<int> levels;
  int ht_index = 1;
};

// Splits at the arithmetic mean while the head stays a small-enough minority:
// a split is accepted iff the strict-above-mean head is non-empty and its
// fraction is <= head_limit; recursion then continues into the head.
// Throws EmptyInput, NegativeValue (negative or non-finite values), or
// InvalidParameter (head_limit outside (0,1)).
HeadTailClassification head_tail_breaks(std::span<const double> values, double head_limit = 0.4);

// head_tail_breaks(values).ht_index with the default head limit.
int ht_index(std::span<const double> values);

struct RankSizeEntry {
  std::size_t rank = 0;
  double size = 0.0;
};

struct RankSize {
  std::vector<RankSizeEntry> pairs;  // ranks 1..N, sizes non-increasing
};

// Sizes sorted descending and ranked 1..N; ties keep input order.
RankSize rank_size(std::span<const double> values);

// One divider (Richardson) walk: steps full chords of length ruler placed
// along the polyline, plus the leftover straight-line remainder to the end.
struct DividerSample {
  double ruler = 0.0;
  std::int64_t steps = 0;
  double remainder = 0.0;
  double walked_length = 0.0;  // steps * ruler (+ remainder when counted)
};

// Walks the polyline with each ruler, advancing along arc length and placing
// chord endpoints on the line by segment-circle intersection. Rulers must be
// positive, strictly decreasing and smaller than the end-to-end extent.
// count_partial controls whether the trailing remainder enters walked_length.
std::vector<DividerSample> divider_walk(const Polyline& line, std::span<const double> rulers,
                                        bool count_partial = true);

struct DimensionFit {
  double dimension = 0.0;    // -slope of log N over log r
  double r2 = 0.0;           // coefficient of determination of that fit
  double length_slope = 0.0; // slope of log L over log r (1 - D for a clean power law)
};

// Least-squares power-law fit of step counts against rulers.
// Throws InsufficientSamples for fewer than 2 usable samples.
DimensionFit fit_dimension(std::span<const DividerSample> samples);
DimensionFit fit_dimension(std::span<const double> rulers, std::span<const double> counts);

}  // namespace linesimp
