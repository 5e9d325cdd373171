#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linesimp/io.hpp"
#include "linesimp/koch.hpp"
#include "linesimp/scaling.hpp"
#include "linesimp/simplify.hpp"

namespace {

using namespace linesimp;

// Exit codes: 0 success, 1 runtime/data failure, 2 usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format resolve_format(const std::string& name, const std::string& path) {
  if (!name.empty()) {
    if (name == "geojson" || name == "json") return Format::kGeoJson;
    if (name == "wkt") return Format::kWkt;
    if (name == "csv") return Format::kCsv;
    throw UsageError("unknown format '" + name + "' (expected geojson, wkt or csv)");
  }
  if (const auto inferred = format_from_extension(path)) {
    return *inferred;
  }
  throw UsageError("cannot infer format from '" + path + "'; pass --format");
}

MeasureKind parse_measure(const std::string& name) {
  if (name == "x") return MeasureKind::kPerpDistance;
  if (name == "ratio") return MeasureKind::kRatio;
  if (name == "area") return MeasureKind::kTriangleArea;
  if (name == "angle") return MeasureKind::kTurnAngle;
  throw UsageError("unknown measure '" + name + "' (expected x, ratio, area or angle)");
}

void print_warnings(const FeatureSet& set) {
  for (const std::string& w : set.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
}

std::optional<HeadTailClassification> classify_line(const Polyline& line, MeasureKind kind,
                                                    double head_limit) {
  if (line.size() < 3) return std::nullopt;
  try {
    return head_tail_breaks(measure_tree(line, kind).interior_values(), head_limit);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string ht_cell(const std::optional<HeadTailClassification>& c) {
  return c ? std::to_string(c->ht_index) : std::string("-");
}

// --- koch ---

struct KochArgs {
  int iterations = 0;
  double ratio = 1.0 / 3.0;
  double height_factor = 1.0;
  std::string out;
  std::string format;
};

int run_koch(const KochArgs& args) {
  Polyline curve = [&] {
    try {
      return koch_curve({args.iterations, args.ratio, args.height_factor});
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    } catch (const IterationTooLarge& e) {
      throw UsageError(e.what());
    }
  }();

  std::printf("vertices=%zu length=%.6f\n", curve.size(), polyline_length(curve));
  if (args.ratio == 1.0 / 3.0) {
    const TriangleInventory inventory = triangle_inventory(args.iterations);
    std::string cells;
    std::int64_t denom = 1;
    for (const TriangleClass& entry : inventory.entries) {
      denom *= 3;
      cells += " 1/" + std::to_string(denom) + ":" + std::to_string(entry.count);
    }
    std::printf("inventory:%s\n", cells.empty() ? " -" : cells.c_str());
  } else {
    std::printf("inventory: n/a (ratio != 1/3)\n");
  }

  if (!args.out.empty()) {
    FeatureSet set;
    set.features.emplace_back("koch" + std::to_string(args.iterations), std::move(curve));
    write_features(set, args.out, resolve_format(args.format, args.out));
  }
  return 0;
}

// --- simplify ---

struct SimplifyArgs {
  std::string in;
  std::string out;
  std::string in_format;
  std::string out_format;
  std::string algo;
  std::string measure = "x";
  int level = 0;
  double tolerance = 0.0;
  double min_area = 0.0;
  std::size_t count = 0;
  double head_limit = 0.4;
  bool repair = false;
  bool strict = false;
  // which flags were given
  bool has_level = false, has_tolerance = false, has_min_area = false, has_count = false;
};

void check_head_limit(double head_limit) {
  if (!(head_limit > 0.0) || !(head_limit < 1.0)) {
    throw UsageError("--head-limit must lie in (0, 1)");
  }
}

void check_algo_flags(const SimplifyArgs& args) {
  if (args.algo == "ht") {
    if (!args.has_level) throw UsageError("--algo ht requires --level");
    if (args.has_tolerance || args.has_min_area || args.has_count) {
      throw UsageError("--algo ht accepts only --level");
    }
    if (args.level < 1) throw UsageError("--level must be at least 1");
  } else if (args.algo == "dp") {
    if (!args.has_tolerance) throw UsageError("--algo dp requires --tolerance");
    if (args.has_level || args.has_min_area || args.has_count) {
      throw UsageError("--algo dp accepts only --tolerance");
    }
    if (!(args.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  } else if (args.algo == "vw") {
    if (args.has_min_area == args.has_count) {
      throw UsageError("--algo vw requires exactly one of --min-area, --count");
    }
    if (args.has_level || args.has_tolerance) {
      throw UsageError("--algo vw accepts only --min-area or --count");
    }
    if (args.has_min_area && !(args.min_area > 0.0)) {
      throw UsageError("--min-area must be positive");
    }
    if (args.has_count && args.count < 2) throw UsageError("--count must be at least 2");
  } else {
    throw UsageError("unknown algorithm '" + args.algo + "' (expected ht, dp or vw)");
  }
  check_head_limit(args.head_limit);
}

int run_simplify(const SimplifyArgs& args) {
  check_algo_flags(args);
  const MeasureKind kind = parse_measure(args.measure);
  const FeatureSet input = read_features(args.in, resolve_format(args.in_format, args.in),
                                         args.strict);
  print_warnings(input);

  FeatureSet output;
  bool any_failed = false;
  std::printf("%-16s %-38s %8s %8s %10s %10s\n", "feature", "algorithm", "before", "after",
              "ht_before", "ht_after");
  for (const Feature& feature : input.features) {
    try {
      SimplificationResult result;
      if (args.algo == "ht") {
        result = simplify_ht(feature.line, kind, args.level, args.head_limit);
      } else if (args.algo == "dp") {
        result = simplify_dp(feature.line, args.tolerance);
      } else if (args.has_min_area) {
        result = simplify_vw(feature.line, args.min_area);
      } else {
        result = simplify_vw_count(feature.line, std::min(args.count, feature.line.size()));
      }
      if (args.repair) {
        result = repair_crossings(feature.line, result, kind);
        if (result.residual_crossings) {
          std::fprintf(stderr, "warning: feature %s still has crossings after repair\n",
                       feature.id.c_str());
        }
      }
      Polyline simplified = result.apply(feature.line);
      std::printf("%-16s %-38s %8zu %8zu %10s %10s\n", feature.id.c_str(),
                  result.algorithm.c_str(), feature.line.size(), simplified.size(),
                  ht_cell(classify_line(feature.line, kind, args.head_limit)).c_str(),
                  ht_cell(classify_line(simplified, kind, args.head_limit)).c_str());
      output.features.emplace_back(feature.id, std::move(simplified), feature.properties);
    } catch (const Error& e) {
      std::fprintf(stderr, "error: feature %s: %s\n", feature.id.c_str(), e.what());
      any_failed = true;
    }
  }

  if (!args.out.empty()) {
    write_features(output, args.out, resolve_format(args.out_format, args.out));
  }
  return any_failed ? 1 : 0;
}

// --- stats ---

struct StatsArgs {
  std::string in;
  std::string in_format;
  int koch_triangles = -1;
  std::string measure = "x";
  double head_limit = 0.4;
  std::string plot;
  bool strict = false;
};

void print_value_stats(const std::string& name, const std::vector<double>& values,
                       double head_limit) {
  const HeadTailClassification classes = head_tail_breaks(values, head_limit);
  std::printf("feature: %s\n", name.c_str());
  std::printf("  values: %zu\n", values.size());
  std::string means, fractions;
  for (double m : classes.means) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.6f", m);
    means += buf;
  }
  for (double f : classes.head_fractions) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), " %.6f", f);
    fractions += buf;
  }
  std::printf("  means:%s\n", means.empty() ? " -" : means.c_str());
  std::printf("  head_fractions:%s\n", fractions.empty() ? " -" : fractions.c_str());
  std::printf("  ht_index: %d\n", classes.ht_index);
  std::printf("  rank-size:\n");
  std::printf("    %6s %14s\n", "rank", "size");
  for (const RankSizeEntry& entry : rank_size(values).pairs) {
    std::printf("    %6zu %14.6f\n", entry.rank, entry.size);
  }
}

int run_stats(const StatsArgs& args) {
  const bool has_in = !args.in.empty();
  const bool has_koch = args.koch_triangles >= 0;
  if (has_in == has_koch) {
    throw UsageError("stats needs exactly one of --in, --koch-triangles");
  }
  check_head_limit(args.head_limit);
  const MeasureKind kind = parse_measure(args.measure);

  std::vector<std::pair<std::string, std::vector<double>>> series;
  if (has_koch) {
    const TriangleInventory inventory = [&] {
      try {
        return triangle_inventory(args.koch_triangles);
      } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
      }
    }();
    if (inventory.entries.empty()) {
      throw UsageError("--koch-triangles needs at least 1 iteration");
    }
    series.emplace_back("koch-triangles-" + std::to_string(args.koch_triangles),
                        inventory.expanded());
  } else {
    const FeatureSet input = read_features(args.in, resolve_format(args.in_format, args.in),
                                           args.strict);
    print_warnings(input);
    for (const Feature& feature : input.features) {
      if (feature.line.size() < 3) {
        std::fprintf(stderr, "error: feature %s: too few vertices for measures\n",
                     feature.id.c_str());
        return 1;
      }
      series.emplace_back(feature.id, measure_tree(feature.line, kind).interior_values());
    }
  }

  for (const auto& [name, values] : series) {
    print_value_stats(name, values, args.head_limit);
  }

  if (!args.plot.empty()) {
    std::vector<std::pair<std::string, RankSize>> plot_series;
    for (const auto& [name, values] : series) {
      plot_series.emplace_back(name, rank_size(values));
    }
    render_rank_size(plot_series, args.plot);
  }
  return 0;
}

// --- compare ---

struct CompareArgs {
  std::string in;
  std::string in_format;
  std::vector<std::string> algos;
  std::size_t budget = 0;
  std::string measure = "x";
  double head_limit = 0.4;
  std::string report;
  bool strict = false;
};

// Smallest keep level whose retained count fits the budget.
int pick_ht_level(const HeadTailClassification& classes, std::size_t budget) {
  for (int level = 1; level <= classes.ht_index; ++level) {
    std::size_t retained = 2;
    for (int l : classes.levels) {
      if (l >= level) ++retained;
    }
    if (retained <= budget) return level;
  }
  return classes.ht_index;
}

// Douglas-Peucker retains a vertex iff the minimum split distance along its
// recursion path reaches the tolerance, so those path minima are the exact
// breakpoints of the retained-count curve.
double pick_dp_tolerance(const Polyline& line, std::size_t budget) {
  if (line.size() < 3) return 1.0;
  const MeasureTree tree = measure_tree(line, MeasureKind::kPerpDistance);
  std::map<std::pair<std::size_t, std::size_t>, double> span_cap;
  span_cap[{0, line.size() - 1}] = std::numeric_limits<double>::infinity();
  std::vector<double> path_min;
  path_min.reserve(tree.split_order.size());
  for (const SpanSplit& split : tree.split_order) {
    const double cap = span_cap.at({split.begin, split.end});
    const double pm = std::min(cap, tree.values[split.split]);
    path_min.push_back(pm);
    span_cap[{split.begin, split.split}] = pm;
    span_cap[{split.split, split.end}] = pm;
  }

  std::vector<double> breakpoints;
  for (double pm : path_min) {
    if (pm > 0.0) breakpoints.push_back(pm);
  }
  std::sort(breakpoints.begin(), breakpoints.end(), std::greater<>());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  if (breakpoints.empty()) return 1.0;

  double best_tolerance = breakpoints.front() * 2.0;  // retains endpoints only
  std::size_t best_count = 2;
  auto consider = [&](double tolerance) {
    std::size_t count = 2;
    for (double pm : path_min) {
      if (pm >= tolerance) ++count;
    }
    const auto gap = [&](std::size_t c) {
      return (c > budget) ? c - budget : budget - c;
    };
    if (gap(count) < gap(best_count) || (gap(count) == gap(best_count) && count < best_count)) {
      best_count = count;
      best_tolerance = tolerance;
    }
  };
  for (double t : breakpoints) consider(t);
  return best_tolerance;
}

int run_compare(const CompareArgs& args) {
  if (args.budget < 2) {
    throw UsageError("--budget must be at least 2");
  }
  std::vector<std::string> algos;
  for (const std::string& algo : args.algos) {
    if (algo != "ht" && algo != "dp" && algo != "vw") {
      throw UsageError("unknown algorithm '" + algo + "' (expected ht, dp or vw)");
    }
    if (std::find(algos.begin(), algos.end(), algo) != algos.end()) {
      std::fprintf(stderr, "warning: algorithm '%s' listed twice, deduplicated\n", algo.c_str());
      continue;
    }
    algos.push_back(algo);
  }
  if (algos.size() < 2) {
    throw UsageError("compare needs at least 2 distinct algorithms");
  }
  check_head_limit(args.head_limit);
  const MeasureKind kind = parse_measure(args.measure);
  const FeatureSet input = read_features(args.in, resolve_format(args.in_format, args.in),
                                         args.strict);
  print_warnings(input);

  struct Row {
    std::string feature, algo, param;
    std::size_t retained = 0, crossings = 0;
    std::string ht_before, ht_after, kept;
    std::vector<double> fractions_after;
  };
  std::vector<Row> rows;
  bool any_failed = false;

  for (const Feature& feature : input.features) {
    const auto before = classify_line(feature.line, kind, args.head_limit);
    for (const std::string& algo : algos) {
      try {
        SimplificationResult result;
        std::string param;
        if (algo == "ht") {
          if (!before) throw TooFewVertices("too few vertices for head/tail levels");
          const int level = pick_ht_level(*before, args.budget);
          result = simplify_ht(feature.line, kind, level, args.head_limit);
          param = "level=" + std::to_string(level);
        } else if (algo == "dp") {
          const double tolerance = pick_dp_tolerance(feature.line, args.budget);
          result = simplify_dp(feature.line, tolerance);
          char buf[40];
          std::snprintf(buf, sizeof(buf), "tolerance=%.6g", tolerance);
          param = buf;
        } else {
          const std::size_t count = std::clamp<std::size_t>(args.budget, 2, feature.line.size());
          result = simplify_vw_count(feature.line, count);
          param = "count=" + std::to_string(count);
        }
        Polyline simplified = result.apply(feature.line);
        const auto after = classify_line(simplified, kind, args.head_limit);

        Row row;
        row.feature = feature.id;
        row.algo = algo;
        row.param = param;
        row.retained = simplified.size();
        row.crossings = detect_self_intersections(simplified).size();
        row.ht_before = ht_cell(before);
        row.ht_after = ht_cell(after);
        if (after) {
          row.fractions_after = after->head_fractions;
          const bool minority = std::all_of(row.fractions_after.begin(),
                                            row.fractions_after.end(),
                                            [](double f) { return f < 0.5; });
          row.kept = (after->ht_index >= 2 && minority) ? "yes" : "no";
        } else {
          row.kept = "-";
        }
        rows.push_back(std::move(row));
      } catch (const Error& e) {
        std::fprintf(stderr, "error: feature %s, algorithm %s: %s\n", feature.id.c_str(),
                     algo.c_str(), e.what());
        any_failed = true;
      }
    }
  }

  std::printf("%-16s %-6s %-20s %8s %9s %9s %8s %12s\n", "feature", "algo", "param", "retained",
              "crossings", "ht_before", "ht_after", "scaling_kept");
  for (const Row& row : rows) {
    std::printf("%-16s %-6s %-20s %8zu %9zu %9s %8s %12s\n", row.feature.c_str(),
                row.algo.c_str(), row.param.c_str(), row.retained, row.crossings,
                row.ht_before.c_str(), row.ht_after.c_str(), row.kept.c_str());
  }

  if (!args.report.empty()) {
    std::string csv =
        "feature,algorithm,param,retained,crossings,ht_before,ht_after,scaling_kept,"
        "head_fractions_after\n";
    for (const Row& row : rows) {
      std::string fractions;
      for (std::size_t i = 0; i < row.fractions_after.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%s%.6f", i ? ";" : "", row.fractions_after[i]);
        fractions += buf;
      }
      csv += row.feature + "," + row.algo + "," + row.param + "," +
             std::to_string(row.retained) + "," + std::to_string(row.crossings) + "," +
             row.ht_before + "," + row.ht_after + "," + row.kept + "," + fractions + "\n";
    }
    std::ofstream out(args.report, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteFailure("cannot open for writing: " + args.report);
    out << csv;
    if (!out) throw WriteFailure("write failed: " + args.report);
  }
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal-guided line simplification toolkit"};
  app.require_subcommand(1);

  KochArgs koch_args;
  CLI::App* koch_cmd = app.add_subcommand("koch", "Generate a Koch curve and its statistics");
  koch_cmd->add_option("-n,--iterations", koch_args.iterations, "Iteration count")->required();
  koch_cmd->add_option("--ratio", koch_args.ratio, "Inner vertex fraction in (0, 0.5]");
  koch_cmd->add_option("--height-factor", koch_args.height_factor, "Apex height multiplier");
  koch_cmd->add_option("-o,--out", koch_args.out, "Output geometry file");
  koch_cmd->add_option("--format", koch_args.format, "Output format: geojson, wkt, csv");

  SimplifyArgs simplify_args;
  CLI::App* simplify_cmd = app.add_subcommand("simplify", "Simplify every feature of a file");
  simplify_cmd->add_option("-i,--in", simplify_args.in, "Input geometry file")->required();
  simplify_cmd->add_option("-o,--out", simplify_args.out, "Output geometry file");
  simplify_cmd->add_option("--format", simplify_args.in_format, "Input format override");
  simplify_cmd->add_option("--out-format", simplify_args.out_format, "Output format override");
  simplify_cmd->add_option("--algo", simplify_args.algo, "Algorithm: ht, dp, vw")->required();
  simplify_cmd->add_option("--measure", simplify_args.measure, "Measure: x, ratio, area, angle");
  auto* level_opt = simplify_cmd->add_option("--level", simplify_args.level,
                                             "ht: keep vertices of this level and above");
  auto* tolerance_opt =
      simplify_cmd->add_option("--tolerance", simplify_args.tolerance, "dp: distance threshold");
  auto* min_area_opt =
      simplify_cmd->add_option("--min-area", simplify_args.min_area, "vw: area threshold");
  auto* count_opt =
      simplify_cmd->add_option("--count", simplify_args.count, "vw: target vertex count");
  simplify_cmd->add_option("--head-limit", simplify_args.head_limit,
                           "Largest acceptable head fraction");
  simplify_cmd->add_flag("--repair-crossings", simplify_args.repair,
                         "Reinsert vertices until crossing-free");
  simplify_cmd->add_flag("--strict", simplify_args.strict, "Fail on unsupported geometries");

  StatsArgs stats_args;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Head/tail statistics of measure values");
  stats_cmd->add_option("-i,--in", stats_args.in, "Input geometry file");
  stats_cmd->add_option("--format", stats_args.in_format, "Input format override");
  stats_cmd->add_option("--koch-triangles", stats_args.koch_triangles,
                        "Use the triangle sizes of this many Koch iterations");
  stats_cmd->add_option("--measure", stats_args.measure, "Measure: x, ratio, area, angle");
  stats_cmd->add_option("--head-limit", stats_args.head_limit,
                        "Largest acceptable head fraction");
  stats_cmd->add_option("--plot", stats_args.plot, "Write a rank-size SVG here");
  stats_cmd->add_flag("--strict", stats_args.strict, "Fail on unsupported geometries");

  CompareArgs compare_args;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Run several algorithms against one vertex budget");
  compare_cmd->add_option("-i,--in", compare_args.in, "Input geometry file")->required();
  compare_cmd->add_option("--format", compare_args.in_format, "Input format override");
  compare_cmd->add_option("--algos", compare_args.algos, "Algorithms to compare")
      ->required()
      ->delimiter(',');
  compare_cmd->add_option("--budget", compare_args.budget, "Target retained vertex count")
      ->required();
  compare_cmd->add_option("--measure", compare_args.measure, "Measure: x, ratio, area, angle");
  compare_cmd->add_option("--head-limit", compare_args.head_limit,
                          "Largest acceptable head fraction");
  compare_cmd->add_option("--report", compare_args.report, "Write a CSV report here");
  compare_cmd->add_flag("--strict", compare_args.strict, "Fail on unsupported geometries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  simplify_args.has_level = level_opt->count() > 0;
  simplify_args.has_tolerance = tolerance_opt->count() > 0;
  simplify_args.has_min_area = min_area_opt->count() > 0;
  simplify_args.has_count = count_opt->count() > 0;

  try {
    if (*koch_cmd) return run_koch(koch_args);
    if (*simplify_cmd) return run_simplify(simplify_args);
    if (*stats_cmd) return run_stats(stats_args);
    if (*compare_cmd) return run_compare(compare_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\nrun with --help for usage\n", e.what());
    return 2;
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\nrun with --help for usage\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
