#pragma once

// Certification of a built spanner on a concrete input: planarity, degree,
// exact stretch by shortest paths, per-class edge reconstruction bounds,
// charging and convex position.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "tdspanner/charging.hpp"
#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/spanner.hpp"
#include "tdspanner/td_graph.hpp"

namespace tdspanner {

using EdgePair = std::pair<PointId, PointId>;

inline std::vector<EdgePair> td_edge_pairs(const TdGraph& g) {
  std::vector<EdgePair> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
  std::sort(out.begin(), out.end());
  return out;
}

/// Runs f(i) for i in [0, count) on up to `threads` workers (0 = hardware).
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  }
}

// ---------------------------------------------------------------------------
// Uniform grid over segments

class SegmentGrid {
 public:
  SegmentGrid(std::span<const Point> pts, std::span<const EdgePair> edges) : pts_(pts), edges_(edges) {
    if (pts.empty()) return;
    x0_ = x1_ = pts[0].x;
    y0_ = y1_ = pts[0].y;
    for (const auto& p : pts) {
      x0_ = std::min(x0_, p.x);
      x1_ = std::max(x1_, p.x);
      y0_ = std::min(y0_, p.y);
      y1_ = std::max(y1_, p.y);
    }
    side_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(edges.size()))));
    cw_ = std::max((x1_ - x0_) / static_cast<double>(side_), 1e-300);
    ch_ = std::max((y1_ - y0_) / static_cast<double>(side_), 1e-300);
    cells_.assign(side_ * side_, {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto [a, b] = cell_range(edges[i]);
      for (std::size_t cy = a.second; cy <= b.second; ++cy) {
        for (std::size_t cx = a.first; cx <= b.first; ++cx) cells_[cy * side_ + cx].push_back(i);
      }
    }
    stamp_.assign(edges.size(), std::numeric_limits<std::size_t>::max());
  }

  /// Calls f(j) once for every indexed segment sharing a cell with `e`.
  template <class F>
  void candidates(const EdgePair& e, std::size_t query_id, F&& f) {
    if (cells_.empty()) return;
    const auto [a, b] = cell_range(e);
    for (std::size_t cy = a.second; cy <= b.second; ++cy) {
      for (std::size_t cx = a.first; cx <= b.first; ++cx) {
        for (std::size_t j : cells_[cy * side_ + cx]) {
          if (stamp_[j] == query_id) continue;
          stamp_[j] = query_id;
          f(j);
        }
      }
    }
  }

 private:
  using Cell = std::pair<std::size_t, std::size_t>;

  std::size_t clamp_cell(double v, double lo, double w) const {
    const double c = std::floor((v - lo) / w);
    if (c <= 0.0) return 0;
    return std::min(side_ - 1, static_cast<std::size_t>(c));
  }

  std::pair<Cell, Cell> cell_range(const EdgePair& e) const {
    const auto& p = pts_[e.first];
    const auto& q = pts_[e.second];
    return {{clamp_cell(std::min(p.x, q.x), x0_, cw_), clamp_cell(std::min(p.y, q.y), y0_, ch_)},
            {clamp_cell(std::max(p.x, q.x), x0_, cw_), clamp_cell(std::max(p.y, q.y), y0_, ch_)}};
  }

  std::span<const Point> pts_;
  std::span<const EdgePair> edges_;
  double x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0, cw_ = 1, ch_ = 1;
  std::size_t side_ = 1;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> stamp_;
};

// ---------------------------------------------------------------------------
// Planarity

struct PlanarityResult {
  bool plane = true;
  /// Lexicographically smallest crossing pair, each edge as (u, v) with u < v.
  std::optional<std::pair<EdgePair, EdgePair>> witness;
};

inline constexpr std::size_t kBruteForcePlanarityLimit = 5000;

inline PlanarityResult check_planarity(std::span<const Point> pts, std::span<const EdgePair> edges_in) {
  std::vector<EdgePair> edges(edges_in.begin(), edges_in.end());
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  const auto seg = [&](std::size_t i) {
    return Segment{pts[edges[i].first].pos(), pts[edges[i].second].pos()};
  };
  std::optional<std::pair<std::size_t, std::size_t>> best;
  const auto consider = [&](std::size_t i, std::size_t j) {
    if (j <= i) return;
    if (best && std::pair(i, j) >= *best) return;
    if (segments_properly_cross(seg(i), seg(j))) best = std::pair(i, j);
  };
  if (edges.size() <= kBruteForcePlanarityLimit) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (std::size_t j = i + 1; j < edges.size(); ++j) consider(i, j);
    }
  } else {
    SegmentGrid grid(pts, edges);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      grid.candidates(edges[i], i, [&](std::size_t j) { consider(i, j); });
    }
  }
  PlanarityResult out;
  if (best) {
    out.plane = false;
    out.witness = std::pair(edges[best->first], edges[best->second]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degree and convex position

struct DegreeResult {
  std::size_t max_degree = 0;
  PointId witness = 0;  ///< smallest id attaining max_degree
  std::vector<std::size_t> histogram;  ///< histogram[d] = points of degree d
  std::size_t limit = 4;
  bool ok() const { return max_degree <= limit; }
};

inline std::vector<std::size_t> degrees(std::size_t n, std::span<const EdgePair> edges) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

inline DegreeResult check_degree(std::size_t n, std::span<const EdgePair> edges, std::size_t limit) {
  DegreeResult out;
  out.limit = limit;
  const auto deg = degrees(n, edges);
  for (std::size_t p = 0; p < n; ++p) {
    if (deg[p] > out.max_degree) {
      out.max_degree = deg[p];
      out.witness = static_cast<PointId>(p);
    }
  }
  out.histogram.assign(out.max_degree + 1, 0);
  for (std::size_t d : deg) ++out.histogram[d];
  return out;
}

/// True when every point is a strict vertex of the convex hull.
inline bool check_convex_position(std::span<const Point> pts) {
  if (pts.size() < 3) return true;
  std::vector<Vec2> v;
  v.reserve(pts.size());
  for (const auto& p : pts) v.push_back(p.pos());
  std::sort(v.begin(), v.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  std::vector<Vec2> hull(2 * v.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], v[i]) <= 0) --k;
    hull[k++] = v[i];
  }
  for (std::size_t i = v.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orientation(hull[k - 2], hull[k - 1], v[i]) <= 0) --k;
    hull[k++] = v[i];
  }
  return k - 1 == v.size();
}

// ---------------------------------------------------------------------------
// Shortest paths

class GraphDistances {
 public:
  GraphDistances(std::span<const Point> pts, std::span<const EdgePair> edges) : pts_(pts) {
    const std::size_t n = pts.size();
    offsets_.assign(n + 1, 0);
    for (const auto& [a, b] : edges) {
      ++offsets_[a + 1];
      ++offsets_[b + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    adj_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
      const double w = distance(pts[a], pts[b]);
      adj_[fill[a]++] = {b, w};
      adj_[fill[b]++] = {a, w};
    }
  }

  std::size_t size() const { return pts_.size(); }

  /// Dijkstra from s; unreachable points get +infinity.
  std::vector<double> from(PointId s) const {
    std::vector<double> dist(size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, PointId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      const auto [d, p] = heap.top();
      heap.pop();
      if (d > dist[p]) continue;
      for (std::size_t i = offsets_[p]; i < offsets_[p + 1]; ++i) {
        const auto [q, w] = adj_[i];
        if (d + w < dist[q]) {
          dist[q] = d + w;
          heap.emplace(dist[q], q);
        }
      }
    }
    return dist;
  }

 private:
  std::span<const Point> pts_;
  std::vector<std::size_t> offsets_;
  std::vector<std::pair<PointId, double>> adj_;
};

/// Dense all-pairs shortest path lengths, row-major.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> d;
  double operator()(PointId a, PointId b) const { return d[static_cast<std::size_t>(a) * n + b]; }
};

inline DistanceMatrix all_pairs(const GraphDistances& g, unsigned threads = 0) {
  DistanceMatrix m;
  m.n = g.size();
  m.d.resize(m.n * m.n);
  parallel_for(m.n, threads, [&](std::size_t s) {
    const auto row = g.from(static_cast<PointId>(s));
    std::copy(row.begin(), row.end(), m.d.begin() + static_cast<std::ptrdiff_t>(s * m.n));
  });
  return m;
}

enum class Baseline { complete, td };

struct StretchResult {
  double value = 1.0;
  PointId p = 0;
  PointId q = 0;
  bool sampled = false;
  std::size_t sources = 0;
};

/// Worst ratios of graph distance to Euclidean distance and to triangular
/// distance, from one set of shortest path trees.
struct StretchPair {
  StretchResult euclidean;
  StretchResult triangular;
  const StretchResult& get(Baseline b) const { return b == Baseline::complete ? euclidean : triangular; }
};

struct StretchOptions {
  /// Above this size only a sample of sources is used.
  std::size_t full_limit = 2000;
  std::size_t sample_sources = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

namespace detail {

inline void improve(StretchResult& r, double ratio, PointId a, PointId b) {
  if (a > b) std::swap(a, b);
  if (ratio > r.value || (ratio == r.value && std::pair(a, b) < std::pair(r.p, r.q))) {
    r.value = ratio;
    r.p = a;
    r.q = b;
  }
}

inline void merge(StretchResult& into, const StretchResult& r) { improve(into, r.value, r.p, r.q); }

inline StretchPair stretch_row(std::span<const Point> pts, PointId s, std::span<const double> row,
                               bool all_targets) {
  StretchPair out;
  for (std::size_t t = all_targets ? 0 : s + 1; t < pts.size(); ++t) {
    if (t == s) continue;
    if (!std::isfinite(row[t])) {
      throw Disconnected("graph is disconnected: no path between " + std::to_string(s) + " and " +
                             std::to_string(t),
                         s, t);
    }
    improve(out.euclidean, row[t] / distance(pts[s], pts[t]), s, static_cast<PointId>(t));
    improve(out.triangular, row[t] / tri_dist(pts[s], pts[t]), s, static_cast<PointId>(t));
  }
  return out;
}

inline std::vector<PointId> stretch_sources(std::size_t n, const StretchOptions& opt, bool& sampled) {
  std::vector<PointId> src(n);
  for (std::size_t i = 0; i < n; ++i) src[i] = static_cast<PointId>(i);
  sampled = n > opt.full_limit && opt.sample_sources < n;
  if (sampled) {
    std::mt19937_64 rng(opt.seed);
    std::shuffle(src.begin(), src.end(), rng);
    src.resize(opt.sample_sources);
    std::sort(src.begin(), src.end());
  }
  return src;
}

}  // namespace detail

/// Both stretch forms from a precomputed distance matrix.
inline StretchPair stretch_from_matrix(std::span<const Point> pts, const DistanceMatrix& m) {
  StretchPair out;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const auto r = detail::stretch_row(pts, static_cast<PointId>(s),
                                       std::span<const double>(m.d.data() + s * m.n, m.n), false);
    detail::merge(out.euclidean, r.euclidean);
    detail::merge(out.triangular, r.triangular);
  }
  out.euclidean.sources = out.triangular.sources = pts.size();
  return out;
}

inline StretchPair compute_stretch_pair(std::span<const Point> pts, std::span<const EdgePair> edges,
                                        const StretchOptions& opt = {}) {
  const GraphDistances g(pts, edges);
  bool sampled = false;
  const auto sources = detail::stretch_sources(pts.size(), opt, sampled);
  std::vector<StretchPair> per(sources.size());
  std::vector<std::exception_ptr> errors(sources.size());
  parallel_for(sources.size(), opt.threads, [&](std::size_t i) {
    try {
      const auto row = g.from(sources[i]);
      per[i] = detail::stretch_row(pts, sources[i], row, sampled);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  StretchPair out;
  for (const auto& r : per) {
    detail::merge(out.euclidean, r.euclidean);
    detail::merge(out.triangular, r.triangular);
  }
  out.euclidean.sampled = out.triangular.sampled = sampled;
  out.euclidean.sources = out.triangular.sources = sources.size();
  return out;
}

/// Max over pairs of graph distance over |pq| (complete) or over the
/// triangular distance (td). Throws Disconnected.
inline StretchResult compute_stretch(std::span<const Point> pts, std::span<const EdgePair> edges,
                                     Baseline baseline = Baseline::complete,
                                     const StretchOptions& opt = {}) {
  return compute_stretch_pair(pts, edges, opt).get(baseline);
}

// ---------------------------------------------------------------------------
// Edge classes and reconstruction bounds

enum class EdgeClass : std::uint8_t { uncrossed_blue, uncrossed_white, crossed_blue, crossed_white };

/// Per edge of the triangulation, whether some shortcut of the spanner
/// properly crosses it, split by color.
inline std::vector<EdgeClass> classify_edges(const TdGraph& d, const SpannerGraph& s) {
  std::vector<EdgePair> shortcuts;
  for (const auto& e : s.edges()) {
    if (is_shortcut_kind(e.kind)) shortcuts.emplace_back(e.u, e.v);
  }
  std::vector<EdgePair> td;
  td.reserve(d.edges().size());
  for (const auto& e : d.edges()) td.emplace_back(e.tail, e.head);
  std::vector<bool> crossed(td.size(), false);
  SegmentGrid grid(d.points(), td);
  for (std::size_t i = 0; i < shortcuts.size(); ++i) {
    const Segment sc{d.point(shortcuts[i].first).pos(), d.point(shortcuts[i].second).pos()};
    grid.candidates(shortcuts[i], i, [&](std::size_t j) {
      if (!crossed[j] && segments_properly_cross(sc, {d.point(td[j].first).pos(), d.point(td[j].second).pos()})) {
        crossed[j] = true;
      }
    });
  }
  std::vector<EdgeClass> out(td.size());
  for (std::size_t i = 0; i < td.size(); ++i) {
    const bool blue = d.edge(i).color == Color::blue;
    out[i] = crossed[i] ? (blue ? EdgeClass::crossed_blue : EdgeClass::crossed_white)
                        : (blue ? EdgeClass::uncrossed_blue : EdgeClass::uncrossed_white);
  }
  return out;
}

enum class BoundClass : std::uint8_t {
  uncrossed_blue,             ///< d_S(u,w) <= 3 d(u,w)
  crossed_blue,               ///< <= 3 d + 9 dmin
  white_anchor,               ///< <= 9 d
  uncrossed_white_white_side, ///< <= 9 d + dblue
  uncrossed_white_blue_side,  ///< <= 9 d
  white_side_anchor_kept,     ///< <= d + dblue, anchor in S
  blue_side_anchor_kept,      ///< <= 6 d, anchor in S
  crossed_white,              ///< <= 10 d + 10 dmin
  white_side_to_anchor_tail,  ///< d_S(v,u) <= d(v,u) + dblue(v,u)
  blue_side_to_anchor_tail,   ///< d_S(v,u) <= 5 d(v,u)
};

inline constexpr std::size_t kBoundClassCount = 10;

/// Classes whose bound carries a 3, 6, 9 or 10 coefficient. The other two are
/// intermediate inequalities; their violations are reported but do not fail
/// certification.
inline constexpr bool is_gating(BoundClass c) {
  return c != BoundClass::white_side_anchor_kept && c != BoundClass::white_side_to_anchor_tail;
}

inline constexpr std::string_view to_string(BoundClass c) {
  switch (c) {
    case BoundClass::uncrossed_blue: return "uncrossed_blue";
    case BoundClass::crossed_blue: return "crossed_blue";
    case BoundClass::white_anchor: return "white_anchor";
    case BoundClass::uncrossed_white_white_side: return "uncrossed_white_white_side";
    case BoundClass::uncrossed_white_blue_side: return "uncrossed_white_blue_side";
    case BoundClass::white_side_anchor_kept: return "white_side_anchor_kept";
    case BoundClass::blue_side_anchor_kept: return "blue_side_anchor_kept";
    case BoundClass::crossed_white: return "crossed_white";
    case BoundClass::white_side_to_anchor_tail: return "white_side_to_anchor_tail";
    case BoundClass::blue_side_to_anchor_tail: return "blue_side_to_anchor_tail";
  }
  return "?";
}

struct BoundCheck {
  BoundClass cls;
  PointId a;
  PointId b;
  double bound;
};

struct BoundViolation {
  BoundClass cls;
  PointId a;
  PointId b;
  double graph_distance;
  double bound;
};

struct BoundClassSummary {
  std::size_t checked = 0;
  double worst_ratio = 0.0;  ///< max of graph distance / bound
  PointId worst_a = 0;
  PointId worst_b = 0;
};

struct BoundAudit {
  std::array<BoundClassSummary, kBoundClassCount> classes{};
  std::vector<BoundViolation> violations;
  std::size_t gating_violations() const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [](const BoundViolation& v) { return is_gating(v.cls); }));
  }
  bool ok() const { return gating_violations() == 0; }
  const BoundClassSummary& at(BoundClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

/// The inequalities that apply to each triangulation edge.
inline std::vector<BoundCheck> edge_bound_checks(const TdGraph& d, const SpannerGraph& s,
                                                 std::span<const EdgeClass> classes) {
  std::vector<BoundCheck> out;
  const auto inf = std::numeric_limits<double>::infinity();
  for (EdgeId i = 0; i < d.edges().size(); ++i) {
    const auto& e = d.edge(i);
    const PointId u = e.tail, w = e.head;
    const DeltaValues dv = delta_values(d.point(u), d.point(w));
    const double t = dv.d_tri;
    const auto blue_delta = [&](const DeltaValues& x) {
      return x.apex_color == Color::blue ? inf : x.delta_blue();
    };
    switch (classes[i]) {
      case EdgeClass::uncrossed_blue: out.push_back({BoundClass::uncrossed_blue, u, w, 3 * t}); break;
      case EdgeClass::crossed_blue:
        out.push_back({BoundClass::crossed_blue, u, w, 3 * t + 9 * dv.delta_min});
        break;
      case EdgeClass::crossed_white:
        out.push_back({BoundClass::crossed_white, u, w, 10 * t + 10 * dv.delta_min});
        break;
      case EdgeClass::uncrossed_white: break;
    }
    if (!is_white(e.color)) continue;
    if (d.is_anchor(i)) {
      out.push_back({BoundClass::white_anchor, u, w, 9 * t});
      continue;
    }
    const auto side = anchor_side(d, i);
    const auto& a = d.edge(d.fan_of(i));
    const PointId v = a.tail;
    const bool kept = s.in_anchor_subgraph(v, w);
    if (side == AnchorSide::blue) {
      out.push_back({BoundClass::blue_side_to_anchor_tail, v, u, 5 * tri_dist(d.point(v), d.point(u))});
      if (kept) out.push_back({BoundClass::blue_side_anchor_kept, u, w, 6 * t});
    }
    if (classes[i] != EdgeClass::uncrossed_white) continue;
    if (side == AnchorSide::white) {
      const double db = blue_delta(dv);
      out.push_back({BoundClass::uncrossed_white_white_side, u, w, 9 * t + db});
      if (kept) out.push_back({BoundClass::white_side_anchor_kept, u, w, t + db});
      const DeltaValues vu = delta_values(d.point(v), d.point(u));
      out.push_back({BoundClass::white_side_to_anchor_tail, v, u, vu.d_tri + blue_delta(vu)});
    } else {
      out.push_back({BoundClass::uncrossed_white_blue_side, u, w, 9 * t});
    }
  }
  return out;
}

inline BoundAudit evaluate_bounds(std::span<const BoundCheck> checks,
                                  const std::function<double(PointId, PointId)>& dist,
                                  double rel_tol = kGeomRelTol) {
  BoundAudit out;
  for (const auto& c : checks) {
    const double g = dist(c.a, c.b);
    auto& cls = out.classes[static_cast<std::size_t>(c.cls)];
    ++cls.checked;
    const double ratio = g / c.bound;
    if (ratio > cls.worst_ratio) {
      cls.worst_ratio = ratio;
      cls.worst_a = c.a;
      cls.worst_b = c.b;
    }
    if (g > c.bound * (1.0 + rel_tol)) out.violations.push_back({c.cls, c.a, c.b, g, c.bound});
  }
  return out;
}

/// Audit with distances from a dense matrix of the spanner.
inline BoundAudit audit_edge_bounds(const TdGraph& d, const SpannerGraph& s, const DistanceMatrix& m,
                                    double rel_tol = kGeomRelTol) {
  const auto classes = classify_edges(d, s);
  const auto checks = edge_bound_checks(d, s, classes);
  return evaluate_bounds(checks, [&](PointId a, PointId b) { return m(a, b); }, rel_tol);
}

/// Audit with one shortest path tree per distinct source of a check.
inline BoundAudit audit_edge_bounds(const TdGraph& d, const SpannerGraph& s, unsigned threads = 0,
                                    double rel_tol = kGeomRelTol) {
  const auto classes = classify_edges(d, s);
  const auto checks = edge_bound_checks(d, s, classes);
  const auto pairs = s.edge_pairs();
  const GraphDistances g(s.points(), pairs);
  std::vector<PointId> sources;
  for (const auto& c : checks) sources.push_back(c.a);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<std::vector<std::pair<PointId, double>>> found(sources.size());
  std::vector<std::vector<PointId>> wanted(sources.size());
  for (const auto& c : checks) {
    const auto it = std::lower_bound(sources.begin(), sources.end(), c.a);
    wanted[static_cast<std::size_t>(it - sources.begin())].push_back(c.b);
  }
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    const auto row = g.from(sources[i]);
    for (PointId t : wanted[i]) found[i].emplace_back(t, row[t]);
  });
  return evaluate_bounds(
      checks,
      [&](PointId a, PointId b) {
        const auto i = static_cast<std::size_t>(std::lower_bound(sources.begin(), sources.end(), a) -
                                                sources.begin());
        for (const auto& [t, dist] : found[i]) {
          if (t == b) return dist;
        }
        return std::numeric_limits<double>::infinity();
      },
      rel_tol);
}

// ---------------------------------------------------------------------------
// Report

inline constexpr double kStretchBound = 20.0;
inline constexpr double kTdStretchBound = 2.0;

struct VerifyOptions {
  bool bounds = false;
  bool charging = false;
  Baseline baseline = Baseline::complete;
  StretchOptions stretch;
  double rel_tol = kGeomRelTol;
};

struct VerificationReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double rotation_applied = 0.0;
  PlanarityResult planarity;
  DegreeResult degree;
  bool convex_position = false;
  StretchPair stretch;
  Baseline baseline = Baseline::complete;
  std::optional<StretchResult> td_stretch;
  std::optional<BoundAudit> bounds;
  std::optional<bool> charging_ok;
  std::string charging_error;
  double rel_tol = kGeomRelTol;

  const StretchResult& headline_stretch() const { return stretch.get(baseline); }

  /// Names of the failed checks, in a fixed order.
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    const double slack = 1.0 + rel_tol;
    if (!planarity.plane) out.emplace_back("planarity");
    if (!degree.ok()) out.emplace_back("degree");
    if (stretch.euclidean.value > kStretchBound * slack || stretch.triangular.value > kStretchBound * slack) {
      out.emplace_back("stretch");
    }
    if (bounds && !bounds->ok()) out.emplace_back("bounds");
    if (charging_ok && !*charging_ok) out.emplace_back("charging");
    if (td_stretch && td_stretch->value > kTdStretchBound + rel_tol) out.emplace_back("td_spanner");
    return out;
  }
  bool ok() const { return failures().empty(); }
};

/// Full certification. `td` is the triangulation of the same (rotated)
/// points; when absent it is rebuilt.
inline VerificationReport verify_spanner(const SpannerGraph& s, const VerifyOptions& opt = {},
                                         const TdGraph* td = nullptr) {
  VerificationReport r;
  r.rel_tol = opt.rel_tol;
  r.baseline = opt.baseline;
  r.n = s.size();
  r.m = s.edge_count();
  r.rotation_applied = s.rotation_applied();
  const auto pairs = s.edge_pairs();
  r.planarity = check_planarity(s.points(), pairs);
  r.convex_position = s.size() >= 3 && check_convex_position(s.points());
  r.degree = check_degree(s.size(), pairs, r.convex_position ? 3 : 4);
  if (s.size() >= 2) r.stretch = compute_stretch_pair(s.points(), pairs, opt.stretch);

  std::optional<TdGraph> rebuilt;
  if (td == nullptr) {
    rebuilt = build_td_graph(s.points());
    td = &*rebuilt;
  }
  if (s.size() >= 2) {
    const auto td_pairs = td_edge_pairs(*td);
    r.td_stretch = compute_stretch_pair(s.points(), td_pairs, opt.stretch).euclidean;
  }
  if (opt.bounds) r.bounds = audit_edge_bounds(*td, s, opt.stretch.threads, opt.rel_tol);
  if (opt.charging) {
    try {
      charge_edges(s);
      r.charging_ok = true;
    } catch (const ChargeCollision& e) {
      r.charging_ok = false;
      r.charging_error = e.what();
    }
  }
  return r;
}

}  // namespace tdspanner
