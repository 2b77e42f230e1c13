#pragma once

// Monotone paths in the half-theta-6 graph: extraction by the two-branch
// walk and an audit of the geometric facts such paths satisfy.

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/td_graph.hpp"

namespace tdspanner {

struct MonotonePath {
  std::vector<PointId> points;
  std::vector<Color> colors;  ///< colors[i] is the color of edge (points[i], points[i+1])
};

/// Walks from both ends at once: whichever of the current pair has the other
/// in a positive cone follows its outgoing edge in that cone. The walk ends
/// when the two branches meet.
inline MonotonePath extract_monotone_path(const TdGraph& g, PointId p, PointId q) {
  std::vector<PointId> from_p{p}, from_q{q};
  const std::size_t guard = 2 * g.size();
  std::size_t steps = 0;
  while (from_p.back() != from_q.back()) {
    if (++steps > guard) {
      throw NonTermination("monotone path walk exceeded 2n steps between " + std::to_string(p) +
                           " and " + std::to_string(q));
    }
    const PointId a = from_p.back(), b = from_q.back();
    const ConeId cone = cone_of(g.point(a), g.point(b));
    const PointId mover = cone.positive() ? a : b;
    const EdgeId e = g.out_edge(mover, cone.color);
    if (e == kNoEdge) throw BrokenTriangulation("non-empty positive cone without an outgoing edge");
    (cone.positive() ? from_p : from_q).push_back(g.edge(e).head);
  }
  MonotonePath out;
  out.points = std::move(from_p);
  out.points.insert(out.points.end(), from_q.rbegin() + 1, from_q.rend());
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const auto e = g.find_edge(out.points[i], out.points[i + 1]);
    out.colors.push_back(g.edge(*e).color);
  }
  return out;
}

/// Outcome of checking one path between its endpoints u and v.
struct PathAudit {
  bool edges_in_graph = true;
  bool contained = true;            ///< every point inside the homothet of (u,v)
  bool bicolored = true;            ///< at most two colors, one of them the cone color
  bool no_neighboring_turns = true; ///< consecutive edges never in adjacent cones
  bool directions_consistent = true;
  bool projections_monotone = true;
  double d_tri = 0.0;
  double length = 0.0;
  std::array<double, 3> color_mass{};
  double rel_tol = kGeomRelTol;

  bool monotone() const {
    return edges_in_graph && bicolored && no_neighboring_turns && directions_consistent;
  }
  bool length_ok() const { return length <= 2.0 * d_tri * (1.0 + rel_tol); }
  bool mass_ok() const {
    return std::all_of(color_mass.begin(), color_mass.end(),
                       [&](double m) { return m <= d_tri * (1.0 + rel_tol); });
  }
  bool ok() const {
    return monotone() && contained && projections_monotone && length_ok() && mass_ok();
  }
};

/// Audits a path given as a point sequence. The endpoint that has the other
/// in a positive cone is treated as the start u; edges of that cone's color
/// must be traversed tail to head and all others head to tail.
inline PathAudit audit_monotone_path(const TdGraph& g, std::span<const PointId> path,
                                     double rel_tol = kGeomRelTol) {
  PathAudit out;
  out.rel_tol = rel_tol;
  if (path.size() < 2) return out;

  std::vector<PointId> seq(path.begin(), path.end());
  if (!cone_of(g.point(seq.front()), g.point(seq.back())).positive()) {
    std::reverse(seq.begin(), seq.end());
  }
  const Vec2 u = g.point(seq.front()).pos();
  const Vec2 v = g.point(seq.back()).pos();
  const Color c1 = cone_of(u, v).color;
  const Homothet h = Homothet::with_vertex(c1, u, tri_dist(u, v));
  out.d_tri = h.side;

  const double slack = rel_tol * h.side;
  std::array<bool, 3> used{};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Vec2 p = g.point(seq[i]).pos();
    if (!h.contains(p, slack)) out.contained = false;
    if (i + 1 == seq.size()) break;
    const Vec2 q = g.point(seq[i + 1]).pos();
    out.length += distance(p, q);
    const auto e = g.find_edge(seq[i], seq[i + 1]);
    if (!e) {
      out.edges_in_graph = false;
      continue;
    }
    const DirectedEdge& de = g.edge(*e);
    used[index(de.color)] = true;
    out.color_mass[index(de.color)] += distance(p, q);
    const bool forward = de.tail == seq[i];
    if (forward != (de.color == c1)) out.directions_consistent = false;
    if (i > 0) {
      const Vec2 prev = g.point(seq[i - 1]).pos();
      if (sectors_adjacent(sector_of(p, prev), sector_of(p, q))) out.no_neighboring_turns = false;
    }
  }
  const int colors_used = static_cast<int>(std::count(used.begin(), used.end(), true));
  out.bicolored = colors_used == 1 ? used[index(c1)] : (colors_used == 2 && used[index(c1)]);

  // Oblique coordinates with origin z and axes z->u and z->y, where y is the
  // vertex of the path's second color.
  Color c2 = clockwise_next(c1);
  for (Color c : kColors) {
    if (c != c1 && used[index(c)]) c2 = c;
  }
  Color c3 = c1;
  for (Color c : kColors) {
    if (c != c1 && c != c2) c3 = c;
  }
  const Vec2 z = h.vertex(c3);
  const Vec2 ax = u - z;
  const Vec2 ay = h.vertex(c2) - z;
  const double det = cross(ax, ay);
  double prev_a = 0.0, prev_b = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Vec2 d = g.point(seq[i]).pos() - z;
    const double a = cross(d, ay) / det;
    const double b = cross(ax, d) / det;
    if (a < -rel_tol || a > 1.0 + rel_tol || b < -rel_tol || b > 1.0 + rel_tol) {
      out.projections_monotone = false;
    }
    if (i > 0 && (a > prev_a + rel_tol || b < prev_b - rel_tol)) out.projections_monotone = false;
    prev_a = a;
    prev_b = b;
  }
  return out;
}

inline PathAudit audit_monotone_path(const TdGraph& g, const MonotonePath& path,
                                     double rel_tol = kGeomRelTol) {
  return audit_monotone_path(g, path.points, rel_tol);
}

}  // namespace tdspanner
