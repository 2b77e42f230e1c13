#pragma once

// Point files (CSV or JSON), the graph file and the stats file.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/spanner.hpp"
#include "tdspanner/verify.hpp"

namespace tdspanner {

enum class PointFormat { csv, json };

/// JSON when the path ends in ".json", CSV otherwise.
inline PointFormat format_for_path(std::string_view path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? PointFormat::json
                                                                     : PointFormat::csv;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// Shortest round-trip decimal form: %.17g.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

inline void reject_duplicates(const std::vector<Point>& pts) {
  std::vector<std::pair<Vec2, PointId>> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.push_back({p.pos(), p.id});
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.first.x < b.first.x || (a.first.x == b.first.x && (a.first.y < b.first.y ||
                                                                 (a.first.y == b.first.y && a.second < b.second)));
  });
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].first == v[i - 1].first) {
      throw DuplicatePoint("points " + std::to_string(v[i - 1].second) + " and " +
                           std::to_string(v[i].second) + " coincide");
    }
  }
}

}  // namespace detail

/// One "x,y" pair per line; blank lines are skipped and the first non-blank
/// line may be a header.
inline std::vector<Point> parse_points_csv(std::string_view text) {
  std::vector<Vec2> coords;
  std::size_t line_no = 0, offset = 0;
  bool seen_content = false;
  while (offset <= text.size()) {
    const std::size_t end = std::min(text.find('\n', offset), text.size());
    const std::string_view raw = text.substr(offset, end - offset);
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (!line.empty()) {
      const std::size_t comma = line.find(',');
      double x = 0, y = 0;
      const bool ok = comma != std::string_view::npos && detail::parse_number(line.substr(0, comma), x) &&
                      detail::parse_number(line.substr(comma + 1), y);
      if (!ok) {
        const bool header = !seen_content && std::any_of(line.begin(), line.end(), [](char ch) {
          return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
        }) && line.find_first_of("0123456789") == std::string_view::npos;
        if (!header) {
          throw ParseError("line " + std::to_string(line_no) + ", byte " + std::to_string(offset + 1) +
                               ": expected 'x,y'",
                           line_no, offset + 1);
        }
      } else {
        if (!std::isfinite(x) || !std::isfinite(y)) {
          throw ParseError("line " + std::to_string(line_no) + ", byte " + std::to_string(offset + 1) +
                               ": coordinates must be finite",
                           line_no, offset + 1);
        }
        coords.push_back({x, y});
      }
      seen_content = true;
    }
    if (end == text.size()) break;
    offset = end + 1;
  }
  auto pts = make_points(coords);
  detail::reject_duplicates(pts);
  return pts;
}

/// {"points": [[x, y], ...]}
inline std::vector<Point> parse_points_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, e.byte);
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw ParseError("expected an object with a \"points\" array");
  }
  std::vector<Vec2> coords;
  for (const auto& item : doc["points"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ParseError("point " + std::to_string(coords.size()) + " is not an [x, y] pair");
    }
    const Vec2 p{item[0].get<double>(), item[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ParseError("point " + std::to_string(coords.size()) + " has non-finite coordinates");
    }
    coords.push_back(p);
  }
  auto pts = make_points(coords);
  detail::reject_duplicates(pts);
  return pts;
}

inline std::vector<Point> read_points(const std::string& path, std::optional<PointFormat> format = {}) {
  const std::string text = read_file(path);
  return format.value_or(format_for_path(path)) == PointFormat::json ? parse_points_json(text)
                                                                     : parse_points_csv(text);
}

inline std::string points_to_csv(std::span<const Point> pts) {
  std::string out = "x,y\n";
  for (const auto& p : pts) out += format_double(p.x) + "," + format_double(p.y) + "\n";
  return out;
}

inline std::string points_to_json(std::span<const Point> pts) {
  std::string out = "{\"points\":[";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += "[" + format_double(pts[i].x) + "," + format_double(pts[i].y) + "]";
  }
  return out + "]}\n";
}

inline void write_points(const std::string& path, std::span<const Point> pts,
                         std::optional<PointFormat> format = {}) {
  write_file(path, format.value_or(format_for_path(path)) == PointFormat::json ? points_to_json(pts)
                                                                               : points_to_csv(pts));
}

// ---------------------------------------------------------------------------
// Graph file

struct GraphFile {
  std::size_t n = 0;
  double rotation_applied = 0.0;
  std::vector<SpannerEdge> edges;  ///< sorted by (u, v), u < v

  friend bool operator==(const GraphFile&, const GraphFile&) = default;
};

inline GraphFile to_graph_file(const SpannerGraph& s) {
  return {s.size(), s.rotation_applied(), s.edges()};
}

/// Canonical key order n, rotation_applied, edges; one edge per line.
inline std::string graph_to_json(const GraphFile& g) {
  std::string out = "{\"n\":" + std::to_string(g.n) + ",\"rotation_applied\":" +
                    format_double(g.rotation_applied) + ",\"edges\":[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out += i ? ",\n" : "\n";
    out += "{\"u\":" + std::to_string(e.u) + ",\"v\":" + std::to_string(e.v) + ",\"color\":\"" +
           std::string(to_string(e.source_color)) + "\",\"kind\":\"" + std::string(to_string(e.kind)) +
           "\",\"in_anchor_subgraph\":" + (e.in_anchor_subgraph ? "true" : "false") + "}";
  }
  if (!g.edges.empty()) out += "\n";
  return out + "]}\n";
}

inline GraphFile parse_graph_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, e.byte);
  }
  const auto need = [](bool ok, const std::string& what) {
    if (!ok) throw SchemaMismatch(what);
  };
  need(doc.is_object(), "graph file must be a JSON object");
  need(doc.contains("n") && doc["n"].is_number_unsigned(), "\"n\" must be a non-negative integer");
  need(doc.contains("rotation_applied") && doc["rotation_applied"].is_number(),
       "\"rotation_applied\" must be a number");
  need(doc.contains("edges") && doc["edges"].is_array(), "\"edges\" must be an array");
  GraphFile g;
  g.n = doc["n"].get<std::size_t>();
  g.rotation_applied = doc["rotation_applied"].get<double>();
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& item : doc["edges"]) {
    const std::string at = "edge " + std::to_string(g.edges.size());
    need(item.is_object(), at + " is not an object");
    need(item.contains("u") && item["u"].is_number_unsigned() && item.contains("v") &&
             item["v"].is_number_unsigned(),
         at + ": u and v must be non-negative integers");
    const auto u = item["u"].get<std::uint64_t>(), v = item["v"].get<std::uint64_t>();
    need(u < v, at + ": requires u < v");
    need(v < g.n, at + ": endpoint out of range");
    need(seen.emplace(u, v).second, at + ": duplicate edge");
    need(item.contains("kind") && item["kind"].is_string(), at + ": missing kind");
    const auto kind = parse_edge_kind(item["kind"].get<std::string>());
    need(kind.has_value(), at + ": unknown kind");
    need(item.contains("color") && item["color"].is_string(), at + ": missing color");
    const auto color = parse_edge_color(item["color"].get<std::string>());
    need(color.has_value(), at + ": unknown color");
    need(item.contains("in_anchor_subgraph") && item["in_anchor_subgraph"].is_boolean(),
         at + ": missing in_anchor_subgraph");
    const bool in_a = item["in_anchor_subgraph"].get<bool>();
    need(in_a == is_anchor_kind(*kind), at + ": in_anchor_subgraph disagrees with kind");
    g.edges.push_back({static_cast<PointId>(u), static_cast<PointId>(v), *kind, in_a, *color});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const SpannerEdge& a, const SpannerEdge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return g;
}

inline void write_graph(const std::string& path, const GraphFile& g) { write_file(path, graph_to_json(g)); }
inline GraphFile read_graph(const std::string& path) { return parse_graph_json(read_file(path)); }

/// Rebuilds a spanner from a graph file and the original (unrotated) points;
/// the recorded rotation is applied to the points.
inline SpannerGraph spanner_from_file(std::span<const Point> original, const GraphFile& g) {
  if (original.size() != g.n) {
    throw SchemaMismatch("graph has n=" + std::to_string(g.n) + " but the point file has " +
                         std::to_string(original.size()) + " points");
  }
  SpannerGraph s(rotate_points(original, g.rotation_applied), g.rotation_applied);
  for (const auto& e : g.edges) s.insert(e);
  return s;
}

// ---------------------------------------------------------------------------
// Stats file

inline nlohmann::ordered_json stretch_json(const StretchResult& r) {
  nlohmann::ordered_json j;
  j["value"] = r.value;
  j["witness"] = {r.p, r.q};
  j["sampled"] = r.sampled;
  return j;
}

inline std::string stats_to_json(const VerificationReport& r, double build_ms) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["rotation_applied"] = r.rotation_applied;
  j["max_degree"] = r.degree.max_degree;
  j["degree_limit"] = r.degree.limit;
  j["degree_histogram"] = r.degree.histogram;
  j["is_plane"] = r.planarity.plane;
  if (r.planarity.witness) {
    const auto& [a, b] = *r.planarity.witness;
    j["crossing_witness"] = {{a.first, a.second}, {b.first, b.second}};
  }
  j["baseline"] = r.baseline == Baseline::complete ? "complete" : "td";
  j["stretch"] = stretch_json(r.headline_stretch());
  j["stretch_euclidean"] = stretch_json(r.stretch.euclidean);
  j["stretch_triangular"] = stretch_json(r.stretch.triangular);
  if (r.td_stretch) {
    j["td_stretch"] = r.td_stretch->value;
  } else {
    j["td_stretch"] = nullptr;
  }
  if (r.bounds) {
    nlohmann::ordered_json b;
    for (std::size_t c = 0; c < kBoundClassCount; ++c) {
      const auto cls = static_cast<BoundClass>(c);
      const auto& s = r.bounds->classes[c];
      const auto bad = std::count_if(r.bounds->violations.begin(), r.bounds->violations.end(),
                                     [cls](const BoundViolation& v) { return v.cls == cls; });
      b[std::string(to_string(cls))] = {{"checked", s.checked},
                                        {"violations", bad},
                                        {"worst_ratio", s.worst_ratio},
                                        {"gating", is_gating(cls)}};
    }
    j["bound_audit"] = {{"violations", r.bounds->gating_violations()},
                        {"auxiliary_violations", r.bounds->violations.size() - r.bounds->gating_violations()},
                        {"classes", b}};
  } else {
    j["bound_audit"] = nullptr;
  }
  if (r.charging_ok) {
    j["charging_ok"] = *r.charging_ok;
  } else {
    j["charging_ok"] = nullptr;
  }
  j["convex_position"] = r.convex_position;
  j["build_ms"] = build_ms;
  return j.dump(2) + "\n";
}

}  // namespace tdspanner
