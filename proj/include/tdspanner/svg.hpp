#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <string_view>

#include "tdspanner/io.hpp"
#include "tdspanner/spanner.hpp"

namespace tdspanner {

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string_view svg_color(EdgeColor c) {
  switch (c) {
    case EdgeColor::red: return "#d62728";
    case EdgeColor::green: return "#2ca02c";
    case EdgeColor::blue: return "#1f77b4";
    case EdgeColor::white: return "#404040";
  }
  return "#000000";
}

}  // namespace detail

/// y grows upward in the input, so it is negated for SVG.
inline std::string render_svg(const SpannerGraph& s) {
  const auto& pts = s.points();
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].x;
    y0 = y1 = pts[0].y;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  double w = x1 - x0, h = y1 - y0;
  const double extent = std::max({w, h, 1e-9});
  if (w <= 0) w = extent;
  if (h <= 0) h = extent;
  const double mx = 0.05 * w, my = 0.05 * h;
  const double r = 0.005 * extent;
  const double stroke = 0.002 * extent;

  using detail::svg_num;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + svg_num(x0 - mx) + " " +
         svg_num(-(y1 + my)) + " " + svg_num(w + 2 * mx) + " " + svg_num(h + 2 * my) + "\">\n";
  for (const auto& e : s.edges()) {
    const auto& a = s.point(e.u);
    const auto& b = s.point(e.v);
    double width = stroke;
    std::string dash;
    if (is_shortcut_kind(e.kind)) {
      dash = " stroke-dasharray=\"" + svg_num(4 * stroke) + " " + svg_num(2 * stroke) + "\"";
    } else if (!is_anchor_kind(e.kind)) {
      width = stroke / 2;
    }
    out += "<line x1=\"" + svg_num(a.x) + "\" y1=\"" + svg_num(-a.y) + "\" x2=\"" + svg_num(b.x) +
           "\" y2=\"" + svg_num(-b.y) + "\" stroke=\"" + std::string(detail::svg_color(e.source_color)) +
           "\" stroke-width=\"" + svg_num(width) + "\"" + dash + "/>\n";
  }
  for (const auto& p : pts) {
    out += "<circle cx=\"" + svg_num(p.x) + "\" cy=\"" + svg_num(-p.y) + "\" r=\"" + svg_num(r) +
           "\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

inline void write_svg(const std::string& path, const SpannerGraph& s) { write_file(path, render_svg(s)); }

}  // namespace tdspanner
