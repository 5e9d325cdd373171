#include "linesimp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace linesimp {

std::string ParseError::format(const std::string& msg, std::size_t line, std::size_t column) {
  std::string out = msg;
  if (line > 0) {
    out += " (line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
  }
  return out;
}

const char* to_string(Format format) {
  switch (format) {
    case Format::kGeoJson: return "geojson";
    case Format::kWkt: return "wkt";
    case Format::kCsv: return "csv";
  }
  return "?";
}

std::optional<Format> format_from_extension(std::string_view path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string ext(path.substr(dot + 1));
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == "geojson" || ext == "json") return Format::kGeoJson;
  if (ext == "wkt") return Format::kWkt;
  if (ext == "csv") return Format::kCsv;
  return std::nullopt;
}

namespace {

using nlohmann::json;

// Shortest round-trip decimal representation.
std::string format_coord(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

void add_feature(FeatureSet& set, std::string id, std::vector<Point> pts,
                 std::map<std::string, std::string> properties, bool strict,
                 const std::string& where) {
  try {
    set.features.emplace_back(std::move(id), Polyline(std::move(pts)), std::move(properties));
  } catch (const InvalidPolyline& e) {
    if (strict) {
      throw UnsupportedGeometry(where + ": " + e.what());
    }
    set.warnings.push_back("skipped " + where + ": " + e.what());
  }
}

// --- GeoJSON ---

std::string json_scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::vector<Point> coords_to_points(const json& coords, const std::string& where) {
  if (!coords.is_array()) {
    throw ParseError(where + ": coordinates must be an array");
  }
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (const json& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw ParseError(where + ": position must be an array of at least 2 numbers");
    }
    pts.push_back({pos[0].get<double>(), pos[1].get<double>()});
  }
  return pts;
}

void parse_geometry(FeatureSet& set, const json& geometry, const std::string& id,
                    std::map<std::string, std::string> properties, bool strict) {
  if (geometry.is_null()) {
    if (strict) throw UnsupportedGeometry("feature " + id + " has no geometry");
    set.warnings.push_back("skipped feature " + id + ": no geometry");
    return;
  }
  if (!geometry.is_object() || !geometry.contains("type")) {
    throw ParseError("geometry of feature " + id + " lacks a type");
  }
  const std::string type = geometry.value("type", "");
  if ((type == "LineString" || type == "MultiLineString") && !geometry.contains("coordinates")) {
    throw ParseError("feature " + id + " lacks coordinates");
  }
  if (type == "LineString") {
    add_feature(set, id, coords_to_points(geometry.at("coordinates"), "feature " + id),
                std::move(properties), strict, "feature " + id);
  } else if (type == "MultiLineString") {
    const json& parts = geometry.at("coordinates");
    if (!parts.is_array()) {
      throw ParseError("feature " + id + ": MultiLineString coordinates must be an array");
    }
    std::size_t part_index = 0;
    for (const json& part : parts) {
      const std::string part_id = id + "#" + std::to_string(part_index++);
      add_feature(set, part_id, coords_to_points(part, "feature " + part_id), properties, strict,
                  "feature " + part_id);
    }
  } else {
    if (strict) {
      throw UnsupportedGeometry("feature " + id + " has unsupported geometry type " + type);
    }
    set.warnings.push_back("skipped feature " + id + ": unsupported geometry type " + type);
  }
}

FeatureSet parse_geojson_impl(std::string_view text, bool strict, std::string_view base_id) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  FeatureSet set;
  if (!doc.is_object() || !doc.contains("type")) {
    throw ParseError("GeoJSON document lacks a type");
  }
  const std::string type = doc.value("type", "");

  auto feature_id = [&](const json& feature, std::size_t index) {
    if (feature.contains("id")) return json_scalar_to_string(feature.at("id"));
    return std::string(base_id) + std::to_string(index);
  };
  auto feature_properties = [](const json& feature) {
    std::map<std::string, std::string> properties;
    if (feature.contains("properties") && feature.at("properties").is_object()) {
      for (const auto& [key, value] : feature.at("properties").items()) {
        properties[key] = json_scalar_to_string(value);
      }
    }
    return properties;
  };

  if (type == "FeatureCollection") {
    if (!doc.contains("features") || !doc.at("features").is_array()) {
      throw ParseError("FeatureCollection lacks a features array");
    }
    std::size_t index = 0;
    for (const json& feature : doc.at("features")) {
      if (!feature.is_object() || feature.value("type", "") != "Feature") {
        throw ParseError("features[" + std::to_string(index) + "] is not a Feature");
      }
      parse_geometry(set, feature.contains("geometry") ? feature.at("geometry") : json(),
                     feature_id(feature, index), feature_properties(feature), strict);
      ++index;
    }
  } else if (type == "Feature") {
    parse_geometry(set, doc.contains("geometry") ? doc.at("geometry") : json(),
                   feature_id(doc, 0), feature_properties(doc), strict);
  } else if (type == "LineString" || type == "MultiLineString") {
    parse_geometry(set, doc, std::string(base_id) + "0", {}, strict);
  } else {
    throw ParseError("unsupported GeoJSON document type " + type);
  }
  return set;
}

FeatureSet parse_geojson(std::string_view text, bool strict, std::string_view base_id) {
  try {
    return parse_geojson_impl(text, strict, base_id);
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    // structural misuse nlohmann reports itself (wrong types, missing keys)
    throw ParseError(std::string("invalid GeoJSON: ") + e.what());
  }
}

json points_to_coords(const Polyline& line) {
  json coords = json::array();
  for (const Point& p : line) {
    coords.push_back(json::array({p.x, p.y}));
  }
  return coords;
}

std::string serialize_geojson(const FeatureSet& set) {
  json features = json::array();
  for (const Feature& f : set.features) {
    json properties = json::object();
    for (const auto& [key, value] : f.properties) {
      properties[key] = value;
    }
    features.push_back({{"type", "Feature"},
                        {"id", f.id},
                        {"properties", properties},
                        {"geometry",
                         {{"type", "LineString"}, {"coordinates", points_to_coords(f.line)}}}});
  }
  const json doc = {{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(2) + "\n";
}

// --- WKT ---

FeatureSet parse_wkt(std::string_view text, bool strict, std::string_view base_id) {
  FeatureSet set;
  const auto lines = split_lines(text);
  std::size_t feature_index = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = trim(lines[li]);
    if (line.empty()) continue;

    std::string upper(line.substr(0, 10));
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (!upper.starts_with("LINESTRING")) {
      throw ParseError("expected LINESTRING", line_no, 1);
    }
    std::string_view rest = trim(line.substr(10));
    const std::string id = std::string(base_id) + std::to_string(feature_index++);
    if (rest == "EMPTY") {
      if (strict) throw UnsupportedGeometry("empty LINESTRING at line " + std::to_string(line_no));
      set.warnings.push_back("skipped empty LINESTRING at line " + std::to_string(line_no));
      continue;
    }
    if (rest.empty() || rest.front() != '(' || rest.back() != ')') {
      throw ParseError("expected parenthesized coordinate list", line_no,
                       static_cast<std::size_t>(rest.data() - lines[li].data()) + 1);
    }
    rest = rest.substr(1, rest.size() - 2);

    std::vector<Point> pts;
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t end = rest.find(',', start);
      if (end == std::string_view::npos) end = rest.size();
      const std::string_view pair = trim(rest.substr(start, end - start));
      const std::size_t column = static_cast<std::size_t>(pair.data() - lines[li].data()) + 1;
      const std::size_t space = pair.find_first_of(" \t");
      double x = 0.0, y = 0.0;
      if (space == std::string_view::npos || !parse_double(trim(pair.substr(0, space)), x) ||
          !parse_double(trim(pair.substr(space + 1)), y)) {
        throw ParseError("expected 'x y' coordinate pair", line_no, column);
      }
      pts.push_back({x, y});
      if (end == rest.size()) break;
      start = end + 1;
    }
    add_feature(set, id, std::move(pts), {}, strict, "LINESTRING at line " + std::to_string(line_no));
  }
  return set;
}

std::string serialize_wkt(const FeatureSet& set) {
  std::string out;
  for (const Feature& f : set.features) {
    out += "LINESTRING (";
    for (std::size_t i = 0; i < f.line.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_coord(f.line[i].x);
      out += ' ';
      out += format_coord(f.line[i].y);
    }
    out += ")\n";
  }
  return out;
}

// --- CSV ---

FeatureSet parse_csv(std::string_view text, bool strict, std::string_view base_id) {
  FeatureSet set;
  std::vector<Point> pts;
  const auto lines = split_lines(text);
  bool first_data_candidate = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const std::string_view line = trim(lines[li]);
    if (line.empty()) continue;

    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("expected 'x,y' row", line_no, 1);
    }
    const std::string_view first = trim(line.substr(0, comma));
    const std::string_view second = trim(line.substr(comma + 1));
    if (second.find(',') != std::string_view::npos) {
      throw ParseError("expected exactly 2 columns", line_no, 1);
    }
    double x = 0.0, y = 0.0;
    const bool numeric = parse_double(first, x) && parse_double(second, y);
    if (!numeric) {
      if (first_data_candidate) {
        first_data_candidate = false;  // header row
        continue;
      }
      throw ParseError("expected numeric 'x,y' row", line_no, 1);
    }
    first_data_candidate = false;
    pts.push_back({x, y});
  }
  if (!pts.empty()) {
    add_feature(set, std::string(base_id), std::move(pts), {}, strict, "csv polyline");
  }
  return set;
}

std::string serialize_csv(const FeatureSet& set) {
  if (set.features.size() > 1) {
    throw WriteFailure("csv holds exactly one polyline per file");
  }
  std::string out;
  if (set.features.empty()) return out;
  out += "x,y\n";
  for (const Point& p : set.features.front().line) {
    out += format_coord(p.x);
    out += ',';
    out += format_coord(p.y);
    out += '\n';
  }
  return out;
}

}  // namespace

FeatureSet parse_features(std::string_view text, Format format, bool strict,
                          std::string_view base_id) {
  switch (format) {
    case Format::kGeoJson: return parse_geojson(text, strict, base_id);
    case Format::kWkt: return parse_wkt(text, strict, base_id);
    case Format::kCsv: return parse_csv(text, strict, base_id);
  }
  throw InvalidParameter("unknown format");
}

std::string serialize_features(const FeatureSet& set, Format format) {
  switch (format) {
    case Format::kGeoJson: return serialize_geojson(set);
    case Format::kWkt: return serialize_wkt(set);
    case Format::kCsv: return serialize_csv(set);
  }
  throw InvalidParameter("unknown format");
}

FeatureSet read_features(const std::string& path, Format format, bool strict) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec) {
    throw FileNotFound("no such file: " + path);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileNotFound("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  std::string base_id = std::filesystem::path(path).stem().string();
  if (base_id.empty()) base_id = "f";
  if (format != Format::kCsv) base_id = "f";
  return parse_features(buffer.str(), format, strict, base_id);
}

void write_features(const FeatureSet& set, const std::string& path, Format format) {
  const std::string payload = serialize_features(set, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw WriteFailure("cannot open for writing: " + path);
  }
  out << payload;
  if (!out) {
    throw WriteFailure("write failed: " + path);
  }
}

}  // namespace linesimp
