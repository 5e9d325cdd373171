#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "linesimp/io.hpp"

namespace linesimp {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, end);
}

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
}

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void extend(Point p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
};

// Map world coordinates to the viewport, preserving aspect ratio and
// flipping y so that north stays up.
struct Projection {
  double scale;
  double offset_x;
  double offset_y;
  double max_y;

  explicit Projection(const Bounds& b) {
    const double span_x = std::max(b.max_x - b.min_x, 1e-12);
    const double span_y = std::max(b.max_y - b.min_y, 1e-12);
    scale = std::min((kWidth - 2 * kMargin) / span_x, (kHeight - 2 * kMargin) / span_y);
    offset_x = kMargin + ((kWidth - 2 * kMargin) - span_x * scale) / 2.0 - b.min_x * scale;
    offset_y = kMargin + ((kHeight - 2 * kMargin) - span_y * scale) / 2.0;
    max_y = b.max_y;
  }

  double x(double wx) const { return wx * scale + offset_x; }
  double y(double wy) const { return (max_y - wy) * scale + offset_y; }
};

const char* series_color(std::size_t index) {
  static const char* kPalette[] = {"#1b6ca8", "#cc3311", "#117733",
                                   "#aa4499", "#ddaa33", "#447799"};
  return kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

void write_file(const std::string& payload, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw WriteFailure("cannot open for writing: " + path);
  }
  out << payload;
  if (!out) {
    throw WriteFailure("write failed: " + path);
  }
}

}  // namespace

std::string render_svg(const std::vector<std::pair<Polyline, SvgStyle>>& lines) {
  if (lines.empty()) {
    throw EmptyInput("svg rendering needs at least one polyline");
  }
  Bounds bounds;
  for (const auto& [line, style] : lines) {
    for (const Point& p : line) bounds.extend(p);
  }
  const Projection proj(bounds);

  std::string svg = svg_header();
  for (const auto& [line, style] : lines) {
    svg += "  <path fill=\"none\" stroke=\"" + style.stroke + "\" stroke-width=\"" +
           num(style.stroke_width) + "\" d=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      svg += (i == 0) ? "M " : " L ";
      svg += num(proj.x(line[i].x)) + " " + num(proj.y(line[i].y));
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render_svg(const std::vector<std::pair<Polyline, SvgStyle>>& lines, const std::string& path) {
  write_file(render_svg(lines), path);
}

std::string render_rank_size(const std::vector<std::pair<std::string, RankSize>>& series) {
  std::size_t max_rank = 0;
  double min_size = std::numeric_limits<double>::infinity();
  double max_size = -std::numeric_limits<double>::infinity();
  for (const auto& [name, rs] : series) {
    for (const RankSizeEntry& e : rs.pairs) {
      if (e.size <= 0.0) continue;  // no place on a log axis
      max_rank = std::max(max_rank, e.rank);
      min_size = std::min(min_size, e.size);
      max_size = std::max(max_size, e.size);
    }
  }
  if (series.empty() || max_rank == 0) {
    throw EmptyInput("rank-size plot needs at least one positive size");
  }

  const double log_min = std::log10(min_size);
  const double log_max = std::log10(std::max(max_size, min_size * 1.0000001));
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  auto px = [&](double rank) {
    const double t = (max_rank > 1) ? (rank - 1.0) / (static_cast<double>(max_rank) - 1.0) : 0.5;
    return kMargin + t * plot_w;
  };
  auto py = [&](double size) {
    const double t = (std::log10(size) - log_min) / (log_max - log_min);
    return kHeight - kMargin - t * plot_h;
  };

  std::string svg = svg_header();
  // axes
  svg += "  <line x1=\"" + num(kMargin) + "\" y1=\"" + num(kHeight - kMargin) + "\" x2=\"" +
         num(kWidth - kMargin) + "\" y2=\"" + num(kHeight - kMargin) +
         "\" stroke=\"#333333\"/>\n";
  svg += "  <line x1=\"" + num(kMargin) + "\" y1=\"" + num(kMargin) + "\" x2=\"" + num(kMargin) +
         "\" y2=\"" + num(kHeight - kMargin) + "\" stroke=\"#333333\"/>\n";
  svg += "  <text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 8.0) +
         "\" text-anchor=\"middle\" font-size=\"12\">rank</text>\n";
  svg += "  <text x=\"12\" y=\"" + num(kHeight / 2) + "\" text-anchor=\"middle\" font-size=\"12\""
         " transform=\"rotate(-90 12 " + num(kHeight / 2) + ")\">size (log)</text>\n";

  std::size_t series_index = 0;
  for (const auto& [name, rs] : series) {
    const std::string color = series_color(series_index);
    std::string path;
    std::string markers;
    bool first = true;
    for (const RankSizeEntry& e : rs.pairs) {
      if (e.size <= 0.0) continue;
      const double x = px(static_cast<double>(e.rank));
      const double y = py(e.size);
      path += first ? "M " : " L ";
      path += num(x) + " " + num(y);
      first = false;
      markers += "  <circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"" + color +
                 "\"/>\n";
    }
    if (!path.empty()) {
      svg += "  <path fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\" d=\"" + path +
             "\"/>\n";
      svg += markers;
      svg += "  <text x=\"" + num(kWidth - kMargin) + "\" y=\"" +
             num(kMargin + 14.0 * static_cast<double>(series_index)) +
             "\" text-anchor=\"end\" font-size=\"12\" fill=\"" + color + "\">" + name +
             "</text>\n";
    }
    ++series_index;
  }
  svg += "</svg>\n";
  return svg;
}

void render_rank_size(const std::vector<std::pair<std::string, RankSize>>& series,
                      const std::string& path) {
  write_file(render_rank_size(series), path);
}

}  // namespace linesimp
