// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "linesimp/io.hpp"
#include "linesimp/koch.hpp"
#include "linesimp/scaling.hpp"
#include "linesimp/simplify.hpp"
#include "support/oracles.hpp"

using namespace linesimp;
using namespace linesimp::testing;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

void require_close(double actual, double expected, double tol, const std::string& what) {
  if (!(std::abs(actual - expected) <= tol)) {
    throw Failure(what + ": got " + std::to_string(actual) + ", want " +
                  std::to_string(expected) + " +/- " + std::to_string(tol));
  }
}

int failures = 0;

void criterion(int number, const std::string& title, double time_limit_ms,
               const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (error.empty() && time_limit_ms > 0.0 && elapsed_ms > time_limit_ms) {
    error = "exceeded time limit of " + std::to_string(time_limit_ms) + " ms";
  }
  if (error.empty()) {
    std::printf("[PASS] %d. %s (%.2f ms)\n", number, title.c_str(), elapsed_ms);
  } else {
    std::printf("[FAIL] %d. %s (%.2f ms): %s\n", number, title.c_str(), elapsed_ms,
                error.c_str());
    ++failures;
  }
}

// --- criterion bodies ---

void koch_worked_example() {
  const TriangleInventory inventory = triangle_inventory(3);
  require(inventory.entries.size() == 3, "inventory must have 3 levels");
  require_close(inventory.entries[0].scale, 1.0 / 3.0, 1e-12, "level 1 scale");
  require(inventory.entries[0].count == 1, "level 1 count");
  require_close(inventory.entries[1].scale, 1.0 / 9.0, 1e-12, "level 2 scale");
  require(inventory.entries[1].count == 4, "level 2 count");
  require_close(inventory.entries[2].scale, 1.0 / 27.0, 1e-12, "level 3 scale");
  require(inventory.entries[2].count == 16, "level 3 count");

  const std::vector<double> sizes = inventory.expanded();
  require(sizes.size() == 21, "21 triangles in total");
  const HeadTailClassification classes = head_tail_breaks(sizes);
  require(classes.means.size() == 2, "two splits");
  require_close(classes.means[0], 37.0 / 567.0, 1e-12, "m1");
  require_close(classes.means[1], 7.0 / 45.0, 1e-12, "m2");
  require(classes.head_counts == std::vector<std::size_t>{5, 1}, "head counts [5, 1]");
  require_close(classes.head_fractions[0], 5.0 / 21.0, 1e-12, "first head fraction");
  require_close(classes.head_fractions[1], 0.2, 1e-12, "second head fraction");
  require(classes.ht_index == 3, "ht-index 3");
}

void koch_lengths() {
  for (int n = 1; n <= 3; ++n) {
    const double length = polyline_length(koch_curve({.iterations = n}));
    const double expected = std::pow(4.0 / 3.0, n);
    require(std::abs(length - expected) <= 1e-12 * expected,
            "length of koch(" + std::to_string(n) + ")");
  }
}

void fractal_dimension() {
  const double expected = std::log(4.0) / std::log(3.0);

  std::vector<double> rulers, counts;
  for (int k = 1; k <= 5; ++k) {
    rulers.push_back(std::pow(3.0, -k));
    counts.push_back(std::pow(4.0, k));
  }
  const DimensionFit exact = fit_dimension(rulers, counts);
  require_close(exact.dimension, expected, 1e-9, "exact synthetic counts");

  const Polyline curve = koch_curve({.iterations = 6});
  const auto samples = divider_walk(curve, rulers);
  const DimensionFit walked = fit_dimension(samples);
  require_close(walked.dimension, 1.2619, 0.05, "walked koch(6)");
}

void figure2_simplification() {
  const auto match = [](const Polyline& a, const Polyline& b) {
    require(a.size() == b.size(), "vertex counts differ");
    for (std::size_t i = 0; i < a.size(); ++i) {
      require(std::abs(a[i].x - b[i].x) <= 1e-12 && std::abs(a[i].y - b[i].y) <= 1e-12,
              "vertex " + std::to_string(i) + " differs");
    }
  };
  const Polyline dropped1 = koch_drop_levels(3, 1);
  require(dropped1.size() == 17, "drop(3,1) has 17 vertices");
  match(dropped1, koch_curve({.iterations = 2}));
  const Polyline dropped2 = koch_drop_levels(3, 2);
  require(dropped2.size() == 5, "drop(3,2) has 5 vertices");
  match(dropped2, koch_curve({.iterations = 1}));
}

void oracle_equivalence() {
  std::mt19937 rng(1001);
  std::uniform_real_distribution<double> tol(0.005, 2.0);
  for (int round = 0; round < 500; ++round) {
    const std::vector<Point> pts = random_walk(rng, 3, 50);
    const double tolerance = tol(rng);
    require(simplify_dp(Polyline{pts}, tolerance).retained == dp_reference(pts, tolerance),
            "dp mismatch in round " + std::to_string(round));
  }

  std::uniform_real_distribution<double> area(0.001, 0.6);
  for (int round = 0; round < 500; ++round) {
    const std::vector<Point> pts = random_walk(rng, 4, 50);
    const double threshold = area(rng);
    const SimplificationResult result = simplify_vw(Polyline{pts}, threshold);
    const VwTrace trace = vw_reference(pts, threshold, std::nullopt);
    require(result.eliminated == trace.order,
            "vw order mismatch in round " + std::to_string(round));
    require(result.retained == trace.survivors,
            "vw survivors mismatch in round " + std::to_string(round));
  }

  for (int round = 0; round < 200; ++round) {
    const std::vector<Point> pts = random_scribble(rng, 4, 30);
    const auto found = detect_self_intersections(Polyline{pts});
    const auto reference = intersections_reference(pts);
    require(found.size() == reference.size(),
            "intersection count mismatch in round " + std::to_string(round));
    for (std::size_t i = 0; i < found.size(); ++i) {
      require(found[i].seg_a == reference[i].first && found[i].seg_b == reference[i].second,
              "intersection pair mismatch in round " + std::to_string(round));
    }
  }
}

void property_suite() {
  std::mt19937 rng(1002);
  std::uniform_real_distribution<double> tol(0.01, 2.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // endpoint retention, all three algorithms
  for (int round = 0; round < 200; ++round) {
    const Polyline line{random_walk(rng, 3, 40)};
    for (const auto& retained : {simplify_ht(line, MeasureKind::kPerpDistance, 2).retained,
                                 simplify_dp(line, tol(rng)).retained,
                                 simplify_vw(line, tol(rng)).retained}) {
      require(!retained.empty() && retained.front() == 0 &&
                  retained.back() == line.size() - 1,
              "endpoints lost in round " + std::to_string(round));
    }
  }

  // head/tail level nesting
  for (int round = 0; round < 200; ++round) {
    const Polyline line{random_walk(rng, 5, 40)};
    const int ht =
        head_tail_breaks(measure_tree(line, MeasureKind::kPerpDistance).interior_values())
            .ht_index;
    std::vector<std::size_t> previous;
    for (int level = 1; level <= ht; ++level) {
      const auto retained = simplify_ht(line, MeasureKind::kPerpDistance, level).retained;
      if (level > 1) {
        require(std::includes(previous.begin(), previous.end(), retained.begin(), retained.end()),
                "nesting violated in round " + std::to_string(round));
      }
      previous = retained;
    }
  }

  // dp tolerance monotonicity
  for (int round = 0; round < 200; ++round) {
    const Polyline line{random_walk(rng, 4, 40)};
    double t1 = tol(rng), t2 = tol(rng);
    if (t1 > t2) std::swap(t1, t2);
    const auto tight = simplify_dp(line, t1).retained;
    const auto loose = simplify_dp(line, t2).retained;
    require(std::includes(tight.begin(), tight.end(), loose.begin(), loose.end()),
            "dp monotonicity violated in round " + std::to_string(round));
  }

  // ht-index invariance under positive scaling
  for (int round = 0; round < 200; ++round) {
    std::vector<double> values;
    const int n = 3 + static_cast<int>(uniform(rng) * 80);
    for (int i = 0; i < n; ++i) values.push_back(std::pow(uniform(rng) + 1e-9, -1.7));
    const int base = ht_index(values);
    for (double factor : {3.0, 0.25, 1e4}) {
      std::vector<double> scaled = values;
      for (double& v : scaled) v *= factor;
      require(ht_index(scaled) == base,
              "ht scaling invariance violated in round " + std::to_string(round));
    }
  }

  // rank-size multiset round trip
  for (int round = 0; round < 200; ++round) {
    std::vector<double> values;
    const int n = 1 + static_cast<int>(uniform(rng) * 30);
    for (int i = 0; i < n; ++i) values.push_back(uniform(rng) * 100.0);
    std::vector<double> back;
    for (const RankSizeEntry& e : rank_size(values).pairs) back.push_back(e.size);
    std::sort(back.begin(), back.end());
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    require(back == sorted, "rank-size multiset mismatch in round " + std::to_string(round));
  }

  // io round trips at 1e-12
  for (int round = 0; round < 200; ++round) {
    FeatureSet original;
    original.features.emplace_back("f0", Polyline{random_walk(rng, 2, 10)});
    for (Format format : {Format::kGeoJson, Format::kWkt, Format::kCsv}) {
      const FeatureSet back =
          parse_features(serialize_features(original, format), format);
      require(back.features.size() == 1,
              "round-trip feature count for " + std::string(to_string(format)));
      const auto& a = original.features[0].line;
      const auto& b = back.features[0].line;
      require(a.size() == b.size(),
              "round-trip vertex count for " + std::string(to_string(format)));
      for (std::size_t i = 0; i < a.size(); ++i) {
        require(std::abs(a[i].x - b[i].x) <= 1e-12 && std::abs(a[i].y - b[i].y) <= 1e-12,
                "round-trip coordinate drift for " + std::string(to_string(format)));
      }
    }
  }
}

void scaling_retention() {
  const Polyline curve = koch_curve({.iterations = 5});
  const SimplificationResult result = simplify_ht(curve, MeasureKind::kPerpDistance, 2);
  const Polyline simplified = result.apply(curve);
  const ScalingReport report =
      assess_scaling_retention(curve, simplified, MeasureKind::kPerpDistance);
  require(report.ht_after >= 2, "ht after simplification must stay >= 2");
  require(!report.head_fractions_after.empty(), "post-simplification splits expected");
  for (double f : report.head_fractions_after) {
    require(f < 0.5, "post-simplification head fraction must stay below 0.5");
  }
}

void desk_scale_performance() {
  const Polyline curve = koch_curve({.iterations = 8});
  require(curve.size() == 65537, "koch(8) has 65537 vertices");
  const MeasureTree tree = measure_tree(curve, MeasureKind::kPerpDistance);
  const SimplificationResult result = simplify_ht(curve, MeasureKind::kPerpDistance, 2);
  require(!tree.split_order.empty() && result.retained.size() >= 2, "pipeline must produce output");
}

}  // namespace

int main() {
  criterion(1, "Koch worked example: 21 triangles, means 37/567 and 7/45, ht-index 3", 1.0,
            koch_worked_example);
  criterion(2, "Koch lengths follow (4/3)^n for n = 1..3", 0.0, koch_lengths);
  criterion(3, "Fractal dimension 1.26 from divider walks and exact counts", 1000.0,
            fractal_dimension);
  criterion(4, "Dropping triangle levels reproduces the coarser curves exactly", 0.0,
            figure2_simplification);
  criterion(5, "Reference-oracle equivalence for dp, vw and intersection detection", 10000.0,
            oracle_equivalence);
  criterion(6, "Property suite: endpoints, nesting, monotonicity, invariance, round trips", 0.0,
            property_suite);
  criterion(7, "Scaling pattern survives head/tail simplification of koch(5)", 0.0,
            scaling_retention);
  criterion(8, "Measure tree and head/tail simplification of koch(8) within one second", 1000.0,
            desk_scale_performance);

  if (failures == 0) {
    std::printf("all %d criteria passed\n", 8);
    return 0;
  }
  std::printf("%d of %d criteria failed\n", failures, 8);
  return 1;
}
