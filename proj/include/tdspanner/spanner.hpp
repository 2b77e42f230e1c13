#pragma once

// The degree-4 plane spanner built on top of the half-theta-6 graph: an
// anchor subgraph, reconstruction of canonical paths in blue cones, then in
// white cones with shortcuts.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/td_graph.hpp"

namespace tdspanner {

enum class EdgeKind : std::uint8_t {
  blue_anchor,
  white_anchor,
  canonical_blue_cone,
  shortcut_blue_cone,
  canonical_white_cone,
  shortcut_white_cone,
};

inline constexpr std::array<EdgeKind, 6> kEdgeKinds = {
    EdgeKind::blue_anchor,          EdgeKind::white_anchor,         EdgeKind::canonical_blue_cone,
    EdgeKind::shortcut_blue_cone,   EdgeKind::canonical_white_cone, EdgeKind::shortcut_white_cone};

inline constexpr std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::blue_anchor: return "blue_anchor";
    case EdgeKind::white_anchor: return "white_anchor";
    case EdgeKind::canonical_blue_cone: return "canonical_blue_cone";
    case EdgeKind::shortcut_blue_cone: return "shortcut_blue_cone";
    case EdgeKind::canonical_white_cone: return "canonical_white_cone";
    case EdgeKind::shortcut_white_cone: return "shortcut_white_cone";
  }
  return "?";
}

inline std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
  for (EdgeKind k : kEdgeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline constexpr bool is_anchor_kind(EdgeKind k) {
  return k == EdgeKind::blue_anchor || k == EdgeKind::white_anchor;
}
inline constexpr bool is_shortcut_kind(EdgeKind k) {
  return k == EdgeKind::shortcut_blue_cone || k == EdgeKind::shortcut_white_cone;
}

/// Color an edge inherits: its graph color, or white for shortcuts.
enum class EdgeColor : std::uint8_t { red, green, blue, white };

inline constexpr EdgeColor edge_color(Color c) { return static_cast<EdgeColor>(index(c)); }

inline constexpr std::string_view to_string(EdgeColor c) {
  switch (c) {
    case EdgeColor::red: return "red";
    case EdgeColor::green: return "green";
    case EdgeColor::blue: return "blue";
    case EdgeColor::white: return "white";
  }
  return "?";
}

inline std::optional<EdgeColor> parse_edge_color(std::string_view s) {
  for (EdgeColor c : {EdgeColor::red, EdgeColor::green, EdgeColor::blue, EdgeColor::white}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

/// Undirected spanner edge, stored with u < v.
struct SpannerEdge {
  PointId u = 0;
  PointId v = 0;
  EdgeKind kind = EdgeKind::blue_anchor;
  bool in_anchor_subgraph = false;
  EdgeColor source_color = EdgeColor::white;

  friend constexpr bool operator==(const SpannerEdge&, const SpannerEdge&) = default;
};

enum class LogAction : std::uint8_t { add, remove, merge, skip };

struct BuildLogEntry {
  int step;
  LogAction action;
  PointId u;
  PointId v;
  EdgeKind kind;
};

/// One step-6 shortcut (p_j, p_i) taken while walking toward the anchor tail v.
struct ShortcutRecord {
  PointId p_i;
  PointId p_j;
  PointId p_j_prev;  ///< p_{j-1}
  PointId v;
  PointId w;  ///< apex of the fan
};

class SpannerGraph {
 public:
  SpannerGraph() = default;
  explicit SpannerGraph(std::vector<Point> points, double rotation_applied = 0.0)
      : points_(std::move(points)), rotation_(rotation_applied) {}

  const std::vector<Point>& points() const { return points_; }
  const Point& point(PointId p) const { return points_[p]; }
  std::size_t size() const { return points_.size(); }
  double rotation_applied() const { return rotation_; }
  std::size_t edge_count() const { return edges_.size(); }

  const SpannerEdge* find(PointId a, PointId b) const {
    const auto it = edges_.find(pair_key(a, b));
    return it == edges_.end() ? nullptr : &it->second;
  }
  bool contains(PointId a, PointId b) const { return edges_.contains(pair_key(a, b)); }
  bool in_anchor_subgraph(PointId a, PointId b) const {
    const auto* e = find(a, b);
    return e != nullptr && e->in_anchor_subgraph;
  }
  /// Present and not part of the anchor subgraph.
  bool in_rest(PointId a, PointId b) const {
    const auto* e = find(a, b);
    return e != nullptr && !e->in_anchor_subgraph;
  }

  /// Inserts the edge; an existing segment keeps its earlier kind and the
  /// attempt is logged as a merge. Returns true when the edge is new.
  bool add(PointId a, PointId b, EdgeKind kind, EdgeColor color, int step) {
    if (a == b) throw Error("spanner edge endpoints coincide");
    if (a > b) std::swap(a, b);
    const auto [it, inserted] =
        edges_.try_emplace(pair_key(a, b), SpannerEdge{a, b, kind, is_anchor_kind(kind), color});
    log_.push_back({step, inserted ? LogAction::add : LogAction::merge, a, b, kind});
    return inserted;
  }

  /// Inserts a fully specified edge without logging (used by readers).
  /// Returns false if the segment is already present.
  bool insert(SpannerEdge e) {
    if (e.u == e.v) throw Error("spanner edge endpoints coincide");
    if (e.u > e.v) std::swap(e.u, e.v);
    return edges_.try_emplace(pair_key(e.u, e.v), e).second;
  }

  bool remove(PointId a, PointId b, int step) {
    const auto it = edges_.find(pair_key(a, b));
    if (it == edges_.end()) return false;
    log_.push_back({step, LogAction::remove, it->second.u, it->second.v, it->second.kind});
    edges_.erase(it);
    return true;
  }

  void note_skip(PointId a, PointId b, EdgeKind kind, int step) {
    log_.push_back({step, LogAction::skip, std::min(a, b), std::max(a, b), kind});
  }

  /// Edges sorted by (u, v).
  std::vector<SpannerEdge> edges() const {
    std::vector<SpannerEdge> out;
    out.reserve(edges_.size());
    for (const auto& [key, e] : edges_) out.push_back(e);
    return out;
  }

  std::vector<std::pair<PointId, PointId>> edge_pairs() const {
    std::vector<std::pair<PointId, PointId>> out;
    out.reserve(edges_.size());
    for (const auto& [key, e] : edges_) out.emplace_back(e.u, e.v);
    return out;
  }

  const std::vector<BuildLogEntry>& log() const { return log_; }
  const std::vector<ShortcutRecord>& shortcut_records() const { return shortcuts_; }
  void record_shortcut(const ShortcutRecord& r) { shortcuts_.push_back(r); }

 private:
  std::vector<Point> points_;
  double rotation_ = 0.0;
  std::map<std::uint64_t, SpannerEdge> edges_;
  std::vector<BuildLogEntry> log_;
  std::vector<ShortcutRecord> shortcuts_;
};

enum class AnchorSide : std::uint8_t { white, blue };

/// Side of a fan edge relative to the white anchor of its fan. The anchor
/// itself has no side.
inline std::optional<AnchorSide> anchor_side(const TdGraph& g, EdgeId e) {
  const EdgeId a = g.fan_of(e);
  const Color c = g.edge(e).color;
  if (e == a || !is_white(c)) return std::nullopt;
  // Fans are ordered counterclockwise. In the red negative cone [240,300)
  // the blue neighbour is at 240, in the green one [120,180) it is at 180.
  const bool after = g.fan_position(e) > g.fan_position(a);
  const bool white_side = c == Color::red ? after : !after;
  return white_side ? AnchorSide::white : AnchorSide::blue;
}

/// Steps 1-2: every blue anchor, then white anchors by increasing length,
/// each skipped if an already chosen white anchor occupies a cone adjacent
/// to it at either endpoint.
inline SpannerGraph build_anchor_subgraph(const TdGraph& g, double rotation_applied = 0.0) {
  SpannerGraph s(g.points(), rotation_applied);
  std::vector<EdgeId> white;
  for (PointId w = 0; w < g.size(); ++w) {
    for (Color c : kColors) {
      const EdgeId a = g.anchor(w, c);
      if (a == kNoEdge) continue;
      if (c == Color::blue) {
        s.add(g.edge(a).tail, w, EdgeKind::blue_anchor, EdgeColor::blue, 1);
      } else {
        white.push_back(a);
      }
    }
  }

  std::vector<double> len(g.edges().size(), 0.0);
  for (EdgeId a : white) len[a] = g.tri_length(a);
  std::sort(white.begin(), white.end(), [&](EdgeId x, EdgeId y) {
    const auto& ex = g.edge(x);
    const auto& ey = g.edge(y);
    if (len[x] != len[y]) return len[x] < len[y];
    if (ex.tail != ey.tail) return ex.tail < ey.tail;
    return ex.head < ey.head;
  });

  std::vector<std::array<bool, 6>> occupied(g.size(), std::array<bool, 6>{});
  const auto blocked = [&](PointId p, int sector) {
    for (int k = 0; k < 6; ++k) {
      if (occupied[p][static_cast<std::size_t>(k)] && sectors_adjacent(k, sector)) return true;
    }
    return false;
  };
  for (EdgeId a : white) {
    const auto& e = g.edge(a);
    const int at_head = negative_sector(e.color);
    const int at_tail = positive_sector(e.color);
    if (blocked(e.head, at_head) || blocked(e.tail, at_tail)) {
      s.note_skip(e.tail, e.head, EdgeKind::white_anchor, 2);
      continue;
    }
    occupied[e.head][static_cast<std::size_t>(at_head)] = true;
    occupied[e.tail][static_cast<std::size_t>(at_tail)] = true;
    s.add(e.tail, e.head, EdgeKind::white_anchor, edge_color(e.color), 2);
  }
  return s;
}

/// Steps 3-4: canonical edges in blue cones, then shortcuts over valleys
/// where two consecutive ones both point into the shared point.
inline SpannerGraph reconstruct_blue_cones(const TdGraph& g, SpannerGraph s) {
  for (const auto& ce : g.canonical_edges()) {
    if (ce.cone != Color::blue) continue;
    const auto& e = g.edge(ce.edge);
    if (s.contains(e.tail, e.head)) continue;
    s.add(e.tail, e.head, EdgeKind::canonical_blue_cone, edge_color(e.color), 3);
  }

  for (PointId w = 0; w < g.size(); ++w) {
    const auto path = g.canonical_path(w, Color::blue);
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const PointId p = path[i - 1], q = path[i], r = path[i + 1];
      const auto& e1 = g.edge(*g.find_edge(p, q));
      const auto& e2 = g.edge(*g.find_edge(r, q));
      if (e1.head != q || e2.head != q) continue;
      if (!s.in_rest(p, q) || !s.in_rest(r, q)) continue;
      s.add(p, r, EdgeKind::shortcut_blue_cone, EdgeColor::white, 4);
      s.remove(p, q, 4);
      s.remove(r, q, 4);
    }
  }
  return s;
}

namespace detail {

// Largest j > i such that [path[i], path[j]] meets the chain path[i..j]
// only at its endpoints; j = i + 1 always qualifies.
inline std::size_t farthest_visible(const TdGraph& g, std::span<const PointId> path, std::size_t i) {
  const Vec2 pi = g.point(path[i]).pos();
  for (std::size_t j = path.size() - 1; j > i + 1; --j) {
    const Segment chord{pi, g.point(path[j]).pos()};
    bool clear = true;
    for (std::size_t l = i; l < j && clear; ++l) {
      clear = !segments_properly_cross(chord, {g.point(path[l]).pos(), g.point(path[l + 1]).pos()});
    }
    if (clear) return j;
  }
  return i + 1;
}

}  // namespace detail

/// Steps 5-6: white canonical edges on the white side of an anchor that
/// was left out of the anchor subgraph, then shortcuts over the blue
/// stretches of each white side.
inline SpannerGraph reconstruct_white_cones(const TdGraph& g, SpannerGraph s) {
  for (const auto& ce : g.canonical_edges()) {
    if (!is_white(ce.cone)) continue;
    const auto& e = g.edge(ce.edge);
    if (!is_white(e.color)) continue;
    if (anchor_side(g, ce.edge) != AnchorSide::white) continue;
    const auto& a = g.edge(g.fan_of(ce.edge));
    if (s.in_anchor_subgraph(a.tail, a.head)) continue;
    if (s.contains(e.tail, e.head)) continue;
    s.add(e.tail, e.head, EdgeKind::canonical_white_cone, edge_color(e.color), 5);
  }

  std::vector<PointId> walk;
  for (PointId w = 0; w < g.size(); ++w) {
    for (Color c : {Color::red, Color::green}) {
      const EdgeId a = g.anchor(w, c);
      if (a == kNoEdge) continue;
      const auto path = g.canonical_path(w, c);
      const std::size_t ia = g.fan_position(a);
      // From the white-side boundary to the anchor tail.
      if (c == Color::red) {
        walk.assign(path.rbegin(), path.rend() - static_cast<std::ptrdiff_t>(ia));
      } else {
        walk.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(ia) + 1);
      }
      const std::size_t k = walk.size() - 1;
      std::size_t i = 0;
      while (i < k) {
        const auto& e = g.edge(*g.find_edge(walk[i], walk[i + 1]));
        if (e.tail == walk[i + 1] && is_white(e.color)) {
          ++i;
          continue;
        }
        if (e.tail != walk[i] || e.color != Color::blue) {
          throw BrokenTriangulation("white-side walk met an edge that is neither backward white "
                                    "nor forward blue");
        }
        const std::size_t j = detail::farthest_visible(g, walk, i);
        s.add(walk[j], walk[i], EdgeKind::shortcut_white_cone, EdgeColor::white, 6);
        s.record_shortcut({walk[i], walk[j], walk[j - 1], walk[k], w});
        const auto& last = g.edge(*g.find_edge(walk[j], walk[j - 1]));
        if (last.tail == walk[j] && is_white(last.color) && s.in_rest(walk[j], walk[j - 1])) {
          s.remove(walk[j], walk[j - 1], 6);
        }
        i = j;
      }
    }
  }
  return s;
}

/// Runs steps 1-6 on an already built graph with fans.
inline SpannerGraph build_spanner_from(const TdGraph& g, double rotation_applied = 0.0) {
  auto s = build_anchor_subgraph(g, rotation_applied);
  s = reconstruct_blue_cones(g, std::move(s));
  return reconstruct_white_cones(g, std::move(s));
}

struct SpannerBuild {
  TdGraph td;
  SpannerGraph spanner;
};

struct BuildOptions {
  BuildMethod method = BuildMethod::sweep;
  /// Fixed rotation in radians; unset means search the rotation schedule.
  std::optional<double> rotation;
};

inline SpannerBuild build_spanner_full(std::span<const Point> points, const BuildOptions& opt = {}) {
  std::vector<Point> pts;
  double angle = 0.0;
  if (opt.rotation) {
    angle = *opt.rotation;
    pts = rotate_points(points, angle);
  } else {
    auto gp = ensure_general_position(points);
    pts = std::move(gp.points);
    angle = gp.applied_rotation;
  }
  SpannerBuild out;
  out.td = build_td_graph(pts, opt.method);
  out.spanner = build_spanner_from(out.td, angle);
  return out;
}

inline SpannerGraph build_spanner(std::span<const Point> points, const BuildOptions& opt = {}) {
  return build_spanner_full(points, opt).spanner;
}

}  // namespace tdspanner
