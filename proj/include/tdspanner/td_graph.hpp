#pragma once

// The half-theta-6 graph (TD-Delaunay triangulation): every point links, in
// each of its three positive cones, to the member of that cone at minimum
// triangular distance. Incoming edges are grouped per negative cone into
// fans; each fan has an anchor (its shortest member) and a canonical path
// through the tails of its edges.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"

namespace tdspanner {

using EdgeId = std::size_t;
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// An edge oriented from the point that selected it; its color names the
/// positive cone of the tail that contains the head.
struct DirectedEdge {
  PointId tail = 0;
  PointId head = 0;
  Color color = Color::red;

  friend constexpr bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// A canonical edge together with the fan apex it is canonical for.
struct CanonicalEdge {
  PointId apex;
  Color cone;          ///< color of the apex's negative cone
  EdgeId edge;         ///< the graph edge joining path positions i and i+1
  std::size_t offset;  ///< i
};

inline constexpr std::uint64_t pair_key(PointId a, PointId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

class TdGraph;
TdGraph compute_anchors_and_fans(TdGraph g);

class TdGraph {
 public:
  TdGraph() = default;

  /// Indexes the edge set. Throws BrokenTriangulation if a point has two
  /// outgoing edges of one color or a segment appears in both orientations.
  TdGraph(std::vector<Point> points, std::vector<DirectedEdge> edges)
      : points_(std::move(points)), edges_(std::move(edges)) {
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (points_[i].id != i) throw Error("point ids must be contiguous 0..n-1");
    }
    out_.assign(n, {kNoEdge, kNoEdge, kNoEdge});
    lookup_.reserve(edges_.size() * 2);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const auto& de = edges_[e];
      if (de.tail >= n || de.head >= n || de.tail == de.head) {
        throw BrokenTriangulation("edge endpoint out of range");
      }
      auto& slot = out_[de.tail][index(de.color)];
      if (slot != kNoEdge) throw BrokenTriangulation("two outgoing edges in one positive cone");
      slot = e;
      if (!lookup_.emplace(pair_key(de.tail, de.head), e).second) {
        throw BrokenTriangulation("segment present in both orientations");
      }
    }

    // Incoming edges grouped by (head, color) and ordered counterclockwise.
    in_offsets_.assign(3 * n + 1, 0);
    for (const auto& de : edges_) ++in_offsets_[slot_of(de.head, de.color) + 1];
    for (std::size_t i = 0; i < 3 * n; ++i) in_offsets_[i + 1] += in_offsets_[i];
    in_list_.assign(edges_.size(), kNoEdge);
    std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      in_list_[fill[slot_of(edges_[e].head, edges_[e].color)]++] = e;
    }
    for (std::size_t s = 0; s < 3 * n; ++s) {
      const Vec2 w = points_[s / 3].pos();
      std::sort(in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[s]),
                in_list_.begin() + static_cast<std::ptrdiff_t>(in_offsets_[s + 1]),
                [&](EdgeId a, EdgeId b) {
                  return cross(points_[edges_[a].tail].pos() - w,
                               points_[edges_[b].tail].pos() - w) > 0.0;
                });
    }
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(PointId p) const { return points_[p]; }
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  const DirectedEdge& edge(EdgeId e) const { return edges_[e]; }

  EdgeId out_edge(PointId p, Color c) const { return out_[p][index(c)]; }

  /// Incoming edges of the negative cone of color c at p, counterclockwise.
  std::span<const EdgeId> in_edges(PointId p, Color c) const {
    const std::size_t s = slot_of(p, c);
    return {in_list_.data() + in_offsets_[s], in_offsets_[s + 1] - in_offsets_[s]};
  }

  std::optional<EdgeId> find_edge(PointId a, PointId b) const {
    const auto it = lookup_.find(pair_key(a, b));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(PointId a, PointId b) const { return lookup_.contains(pair_key(a, b)); }

  double tri_length(EdgeId e) const {
    return tri_dist(points_[edges_[e].tail], points_[edges_[e].head]);
  }

  // Fan structure; valid once compute_anchors_and_fans has run.

  bool has_fans() const { return !fan_of_.empty() || edges_.empty(); }

  EdgeId anchor(PointId w, Color c) const {
    const auto fan = in_edges(w, c);
    return fan.empty() ? kNoEdge : fan_of_[fan.front()];
  }
  EdgeId fan_of(EdgeId e) const { return fan_of_[e]; }
  bool is_anchor(EdgeId e) const { return fan_of_[e] == e; }
  /// Position of e within its fan (counterclockwise).
  std::size_t fan_position(EdgeId e) const { return fan_pos_[e]; }
  std::size_t fan_size(EdgeId e) const {
    return in_edges(edges_[e].head, edges_[e].color).size();
  }
  bool is_boundary(EdgeId e) const {
    return fan_pos_[e] == 0 || fan_pos_[e] + 1 == fan_size(e);
  }

  /// Tails of the fan at (w, c) in counterclockwise order.
  std::span<const PointId> canonical_path(PointId w, Color c) const {
    const std::size_t s = slot_of(w, c);
    return {canon_points_.data() + in_offsets_[s], in_offsets_[s + 1] - in_offsets_[s]};
  }

  const std::vector<CanonicalEdge>& canonical_edges() const { return canonical_; }

  /// Apexes for which e is a canonical edge (at most one per side of e).
  std::span<const PointId> canonical_apexes(EdgeId e) const {
    return {canon_apex_[e].data(), canon_apex_count_[e]};
  }

  bool is_canonical(EdgeId e) const { return canon_apex_count_[e] > 0; }

 private:
  friend TdGraph compute_anchors_and_fans(TdGraph g);

  static std::size_t slot_of(PointId p, Color c) { return 3 * static_cast<std::size_t>(p) + index(c); }

  std::vector<Point> points_;
  std::vector<DirectedEdge> edges_;
  std::vector<std::array<EdgeId, 3>> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<EdgeId> in_list_;
  std::unordered_map<std::uint64_t, EdgeId> lookup_;

  std::vector<EdgeId> fan_of_;
  std::vector<std::size_t> fan_pos_;
  std::vector<PointId> canon_points_;
  std::vector<CanonicalEdge> canonical_;
  std::vector<std::array<PointId, 2>> canon_apex_;
  std::vector<std::uint8_t> canon_apex_count_;
};

namespace detail {

inline void check_ids(std::span<const Point> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].id != i) throw Error("point ids must be contiguous 0..n-1");
  }
}

inline std::vector<DirectedEdge> edges_from_choices(
    const std::vector<std::array<PointId, 3>>& choice) {
  constexpr PointId none = std::numeric_limits<PointId>::max();
  std::vector<DirectedEdge> edges;
  edges.reserve(choice.size() * 3);
  for (std::size_t w = 0; w < choice.size(); ++w) {
    for (Color c : kColors) {
      const PointId v = choice[w][index(c)];
      if (v != none) edges.push_back({static_cast<PointId>(w), v, c});
    }
  }
  return edges;
}

}  // namespace detail

/// Definition-level construction in O(n^2): every point scans all others.
inline TdGraph build_naive(std::span<const Point> pts) {
  detail::check_ids(pts);
  constexpr PointId none = std::numeric_limits<PointId>::max();
  const std::size_t n = pts.size();
  std::vector<std::array<PointId, 3>> choice(n, {none, none, none});
  for (std::size_t w = 0; w < n; ++w) {
    std::array<double, 3> best{};
    best.fill(std::numeric_limits<double>::infinity());
    for (std::size_t v = 0; v < n; ++v) {
      if (v == w) continue;
      const ConeId cone = cone_of(pts[w], pts[v]);
      if (!cone.positive()) continue;
      const double d = tri_dist(pts[w], pts[v]);
      const std::size_t c = index(cone.color);
      if (d < best[c]) {
        best[c] = d;
        choice[w][c] = static_cast<PointId>(v);
      }
    }
  }
  return TdGraph(std::vector<Point>(pts.begin(), pts.end()), detail::edges_from_choices(choice));
}

/// O(n log n) construction. For a positive cone bounded by rays r_lo and
/// r_hi, v is in the cone of w iff A(v) > A(w) and B(v) > B(w) with
/// A = r_lo x p and B = -(r_hi x p); the triangular distance is a positive
/// multiple of the projection on the cone bisector. Sweeping by decreasing
/// A with a prefix-min Fenwick tree over B ranks answers each point's query
/// in O(log n).
inline TdGraph build_sweep(std::span<const Point> pts) {
  detail::check_ids(pts);
  constexpr PointId none = std::numeric_limits<PointId>::max();
  const std::size_t n = pts.size();
  std::vector<std::array<PointId, 3>> choice(n, {none, none, none});

  std::vector<double> a(n), b(n), key(n);
  std::vector<std::uint32_t> by_a(n), by_b(n), rank_b(n);
  using Entry = std::pair<double, PointId>;
  std::vector<Entry> tree(n + 1);

  for (Color c : kColors) {
    const int k = positive_sector(c);
    const Vec2 lo = boundary_ray(k);
    const Vec2 hi = boundary_ray(k + 1);
    const Vec2 axis = bisector(c);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = pts[i].pos();
      a[i] = cross(lo, p);
      b[i] = -cross(hi, p);
      key[i] = dot(p, axis);
      by_a[i] = by_b[i] = static_cast<std::uint32_t>(i);
    }
    std::sort(by_a.begin(), by_a.end(), [&](auto i, auto j) { return a[i] > a[j] || (a[i] == a[j] && i < j); });
    std::sort(by_b.begin(), by_b.end(), [&](auto i, auto j) { return b[i] < b[j] || (b[i] == b[j] && i < j); });
    for (std::size_t r = 0; r < n; ++r) rank_b[by_b[r]] = static_cast<std::uint32_t>(r);

    // Fenwick slot n - rank_b, so a prefix holds every strictly larger B.
    std::fill(tree.begin(), tree.end(), Entry{std::numeric_limits<double>::infinity(), none});
    for (const auto w : by_a) {
      Entry best{std::numeric_limits<double>::infinity(), none};
      for (std::size_t i = n - 1 - rank_b[w]; i > 0; i -= i & (~i + 1)) best = std::min(best, tree[i]);
      choice[w][index(c)] = best.second;
      const Entry mine{key[w], w};
      for (std::size_t i = n - rank_b[w]; i <= n; i += i & (~i + 1)) tree[i] = std::min(tree[i], mine);
    }
  }
  return TdGraph(std::vector<Point>(pts.begin(), pts.end()), detail::edges_from_choices(choice));
}

/// Anchors, fans and canonical paths. Throws BrokenTriangulation when two
/// consecutive fan tails are not adjacent.
inline TdGraph compute_anchors_and_fans(TdGraph g) {
  const std::size_t m = g.edges_.size();
  g.fan_of_.assign(m, kNoEdge);
  g.fan_pos_.assign(m, 0);
  g.canon_points_.assign(m, 0);
  g.canon_apex_.assign(m, {0, 0});
  g.canon_apex_count_.assign(m, 0);
  g.canonical_.clear();

  for (std::size_t w = 0; w < g.size(); ++w) {
    for (Color c : kColors) {
      const std::size_t s = TdGraph::slot_of(static_cast<PointId>(w), c);
      const std::size_t begin = g.in_offsets_[s], end = g.in_offsets_[s + 1];
      if (begin == end) continue;
      EdgeId anchor = g.in_list_[begin];
      double best = g.tri_length(anchor);
      for (std::size_t i = begin; i < end; ++i) {
        const EdgeId e = g.in_list_[i];
        const double d = g.tri_length(e);
        if (d < best || (d == best && e < anchor)) {
          best = d;
          anchor = e;
        }
        g.fan_pos_[e] = i - begin;
        g.canon_points_[i] = g.edges_[e].tail;
      }
      for (std::size_t i = begin; i < end; ++i) g.fan_of_[g.in_list_[i]] = anchor;

      for (std::size_t i = begin; i + 1 < end; ++i) {
        const PointId p = g.canon_points_[i], q = g.canon_points_[i + 1];
        const auto e = g.find_edge(p, q);
        if (!e) {
          throw BrokenTriangulation("consecutive fan tails " + std::to_string(p) + " and " +
                                    std::to_string(q) + " of point " + std::to_string(w) +
                                    " are not adjacent");
        }
        auto& count = g.canon_apex_count_[*e];
        if (count == 2) throw BrokenTriangulation("edge is canonical for more than two points");
        g.canon_apex_[*e][count++] = static_cast<PointId>(w);
        g.canonical_.push_back({static_cast<PointId>(w), c, *e, i - begin});
      }
    }
  }
  return g;
}

/// Both constructions followed by fan computation.
enum class BuildMethod { sweep, naive };

inline TdGraph build_td_graph(std::span<const Point> pts, BuildMethod method = BuildMethod::sweep) {
  return compute_anchors_and_fans(method == BuildMethod::sweep ? build_sweep(pts) : build_naive(pts));
}

/// The contiguous part of the canonical path of (w, c) from r to s, inclusive,
/// listed from r towards s.
inline std::vector<PointId> canonical_subpath(const TdGraph& g, PointId w, Color c, PointId r,
                                              PointId s) {
  const auto path = g.canonical_path(w, c);
  const auto ir = std::find(path.begin(), path.end(), r);
  const auto is = std::find(path.begin(), path.end(), s);
  if (ir == path.end() || is == path.end()) {
    throw NotOnPath("point is not on the canonical path of " + std::to_string(w) + " in the " +
                    std::string(to_string(c)) + " cone");
  }
  if (ir <= is) return {ir, is + 1};
  std::vector<PointId> out(is, ir + 1);
  std::reverse(out.begin(), out.end());
  return out;
}

struct CanonicalEdgeViolation {
  PointId apex;
  Color cone;
  PointId s;
  PointId t;
  char clause;  ///< 'a'..'d'
};

/// Checks the four structural facts about every canonical edge (s,t) of a
/// point w with anchor (s',t):
///   (a) (s,w) and (t,w) are edges;
///   (b) (s,w) is not canonical for a point on t's side of it;
///   (c) (t,w) is not an anchor;
///   (d) (s,t) is a boundary edge of (s',t).
inline std::vector<CanonicalEdgeViolation> lemma1_audit(const TdGraph& g) {
  std::vector<CanonicalEdgeViolation> out;
  for (const auto& ce : g.canonical_edges()) {
    const auto& e = g.edge(ce.edge);
    const PointId s = e.tail, t = e.head, w = ce.apex;
    const auto sw = g.find_edge(s, w);
    const auto tw = g.find_edge(t, w);
    if (!sw || !tw) {
      out.push_back({w, ce.cone, s, t, 'a'});
      continue;
    }
    const int t_side = orientation(g.point(s), g.point(w), g.point(t));
    for (PointId x : g.canonical_apexes(*sw)) {
      if (orientation(g.point(s), g.point(w), g.point(x)) == t_side) {
        out.push_back({w, ce.cone, s, t, 'b'});
      }
    }
    if (g.is_anchor(*tw)) out.push_back({w, ce.cone, s, t, 'c'});
    if (!g.is_boundary(ce.edge)) out.push_back({w, ce.cone, s, t, 'd'});
  }
  return out;
}

}  // namespace tdspanner
