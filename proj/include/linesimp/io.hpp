#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linesimp/geometry.hpp"
#include "linesimp/scaling.hpp"

namespace linesimp {

struct Feature {
  std::string id;
  Polyline line;
  std::map<std::string, std::string> properties;

  Feature(std::string id_, Polyline line_,
          std::map<std::string, std::string> properties_ = {})
      : id(std::move(id_)), line(std::move(line_)), properties(std::move(properties_)) {}
};

struct FeatureSet {
  std::vector<Feature> features;
  std::vector<std::string> warnings;  // skipped geometries in non-strict mode
};

enum class Format { kGeoJson, kWkt, kCsv };

const char* to_string(Format format);

// .geojson/.json, .wkt, .csv
std::optional<Format> format_from_extension(std::string_view path);

// Parse a whole document held in memory. In strict mode unsupported geometry
// kinds are fatal; otherwise they are skipped and reported in warnings.
// base_id names CSV (and unnamed WKT/GeoJSON) features.
FeatureSet parse_features(std::string_view text, Format format, bool strict = false,
                          std::string_view base_id = "f");

std::string serialize_features(const FeatureSet& set, Format format);

FeatureSet read_features(const std::string& path, Format format, bool strict = false);
void write_features(const FeatureSet& set, const std::string& path, Format format);

// --- SVG rendering ---

struct SvgStyle {
  std::string stroke = "#1b6ca8";
  double stroke_width = 1.0;
};

// Polylines fitted into one viewport, aspect ratio preserved, north up.
std::string render_svg(const std::vector<std::pair<Polyline, SvgStyle>>& lines);
void render_svg(const std::vector<std::pair<Polyline, SvgStyle>>& lines, const std::string& path);

// Rank-size chart: linear rank axis, logarithmic size axis, one marker series
// per named input series. Non-positive sizes cannot sit on a log axis and are
// left out.
std::string render_rank_size(const std::vector<std::pair<std::string, RankSize>>& series);
void render_rank_size(const std::vector<std::pair<std::string, RankSize>>& series,
                      const std::string& path);

}  // namespace linesimp
