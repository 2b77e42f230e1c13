#pragma once

// Planar primitives for the triangular (equilateral-triangle) metric:
// cone classification, the metric itself, smallest homothets, the delta
// quantities measured at homothet vertices, orientation predicates and
// rotation-based general position.

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdspanner/errors.hpp"

namespace tdspanner {

using PointId = std::uint32_t;

inline constexpr double kSqrt3 = std::numbers::sqrt3;
inline constexpr double kPi = std::numbers::pi;

/// Directions closer than this (radians) to a cone boundary are degenerate.
inline constexpr double kDegenerateAngle = 1e-12;
/// Relative tolerance for geometric identities.
inline constexpr double kGeomRelTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

struct Point {
  PointId id = 0;
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 pos() const { return {x, y}; }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) { return distance(a.pos(), b.pos()); }

/// Builds points with contiguous ids from raw coordinates.
inline std::vector<Point> make_points(std::span<const Vec2> coords) {
  std::vector<Point> pts;
  pts.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    pts.push_back({static_cast<PointId>(i), coords[i].x, coords[i].y});
  }
  return pts;
}

inline std::vector<Point> make_points(std::initializer_list<Vec2> coords) {
  return make_points(std::span<const Vec2>(coords.begin(), coords.size()));
}

// ---------------------------------------------------------------------------
// Cones

enum class Color : std::uint8_t { red = 0, green = 1, blue = 2 };
enum class Sign : std::uint8_t { positive, negative };

inline constexpr std::array<Color, 3> kColors = {Color::red, Color::green, Color::blue};

inline constexpr std::size_t index(Color c) { return static_cast<std::size_t>(c); }
inline constexpr bool is_white(Color c) { return c != Color::blue; }

inline constexpr std::string_view to_string(Color c) {
  switch (c) {
    case Color::red: return "red";
    case Color::green: return "green";
    case Color::blue: return "blue";
  }
  return "?";
}

/// One of the six 60 degree cones around a point.
///
/// Sector k covers direction angles [60k, 60(k+1)) degrees, counterclockwise
/// from the positive x-axis:
///   k=0 blue-, k=1 red+, k=2 green-, k=3 blue+, k=4 red-, k=5 green+.
struct ConeId {
  Color color = Color::red;
  Sign sign = Sign::positive;

  static constexpr ConeId from_sector(int k) {
    constexpr std::array<ConeId, 6> table = {{{Color::blue, Sign::negative},
                                              {Color::red, Sign::positive},
                                              {Color::green, Sign::negative},
                                              {Color::blue, Sign::positive},
                                              {Color::red, Sign::negative},
                                              {Color::green, Sign::positive}}};
    return table[static_cast<std::size_t>(((k % 6) + 6) % 6)];
  }

  constexpr int sector() const {
    switch (color) {
      case Color::red: return sign == Sign::positive ? 1 : 4;
      case Color::green: return sign == Sign::positive ? 5 : 2;
      case Color::blue: return sign == Sign::positive ? 3 : 0;
    }
    return 0;
  }

  constexpr bool positive() const { return sign == Sign::positive; }
  constexpr ConeId opposite() const {
    return {color, sign == Sign::positive ? Sign::negative : Sign::positive};
  }

  friend constexpr bool operator==(ConeId, ConeId) = default;
};

inline constexpr int positive_sector(Color c) { return ConeId{c, Sign::positive}.sector(); }
inline constexpr int negative_sector(Color c) { return ConeId{c, Sign::negative}.sector(); }

/// Cones sharing a boundary ray.
inline constexpr bool sectors_adjacent(int a, int b) {
  const int d = ((a - b) % 6 + 6) % 6;
  return d == 1 || d == 5;
}

/// Unit vector of the ray at angle 60k degrees.
inline constexpr Vec2 boundary_ray(int k) {
  constexpr double h = kSqrt3 / 2.0;
  constexpr std::array<Vec2, 6> rays = {
      {{1.0, 0.0}, {0.5, h}, {-0.5, h}, {-1.0, 0.0}, {-0.5, -h}, {0.5, -h}}};
  return rays[static_cast<std::size_t>(((k % 6) + 6) % 6)];
}

/// Unit outward side normals of the downward triangle; the normal of color c
/// bisects the positive cone of color c.
inline constexpr Vec2 bisector(Color c) {
  switch (c) {
    case Color::red: return {0.0, 1.0};
    case Color::green: return {kSqrt3 / 2.0, -0.5};
    case Color::blue: return {-kSqrt3 / 2.0, -0.5};
  }
  return {};
}

/// Direction angle in [0, 2pi).
inline double direction_angle(Vec2 d) {
  double a = std::atan2(d.y, d.x);
  if (a < 0.0) a += 2.0 * kPi;
  if (a >= 2.0 * kPi) a -= 2.0 * kPi;
  return a;
}

inline int sector_of(Vec2 apex, Vec2 target) {
  const Vec2 d = target - apex;
  if (d.x == 0.0 && d.y == 0.0) {
    throw DegenerateDirection("cone_of: apex and target coincide");
  }
  const double a = direction_angle(d);
  constexpr double width = kPi / 3.0;
  int k = static_cast<int>(std::floor(a / width));
  k = std::clamp(k, 0, 5);
  const double r = a - k * width;
  if (r < kDegenerateAngle || width - r < kDegenerateAngle) {
    throw DegenerateDirection("cone_of: direction lies on a cone boundary");
  }
  return k;
}

inline ConeId cone_of(Vec2 apex, Vec2 target) {
  return ConeId::from_sector(sector_of(apex, target));
}

inline ConeId cone_of(const Point& apex, const Point& target) {
  return cone_of(apex.pos(), target.pos());
}

// ---------------------------------------------------------------------------
// Triangular metric

/// Side length of the smallest downward-triangle homothet with both points
/// on its boundary.
inline double tri_dist(Vec2 p, Vec2 q) {
  const Vec2 d = q - p;
  double s = 0.0;
  for (Color c : kColors) s += std::max(0.0, dot(d, bisector(c)));
  return 2.0 / kSqrt3 * s;
}

inline double tri_dist(const Point& p, const Point& q) { return tri_dist(p.pos(), q.pos()); }

/// A downward equilateral triangle. Vertices are colored green (upper
/// left), blue (upper right) and red (bottom).
struct Homothet {
  Vec2 green;
  Vec2 blue;
  Vec2 red;
  double side = 0.0;

  constexpr Vec2 vertex(Color c) const {
    switch (c) {
      case Color::red: return red;
      case Color::green: return green;
      case Color::blue: return blue;
    }
    return red;
  }

  /// Builds the homothet of the given side with vertex `c` at `at`.
  static constexpr Homothet with_vertex(Color c, Vec2 at, double side) {
    const double h = side * kSqrt3 / 2.0;
    Vec2 g{};
    switch (c) {
      case Color::green: g = at; break;
      case Color::blue: g = {at.x - side, at.y}; break;
      case Color::red: g = {at.x - side / 2.0, at.y + h}; break;
    }
    return {g, {g.x + side, g.y}, {g.x + side / 2.0, g.y - h}, side};
  }

  /// Closed containment with an absolute slack.
  bool contains(Vec2 p, double slack = 0.0) const {
    // Distances to the three sides; all nonnegative inside.
    const double top = green.y - p.y;
    const double right = dot(blue - p, bisector(Color::green));
    const double left = dot(green - p, bisector(Color::blue));
    return top >= -slack && right >= -slack && left >= -slack;
  }
};

/// Clockwise successor in the vertex labelling green -> blue -> red.
inline constexpr Color clockwise_next(Color c) {
  switch (c) {
    case Color::green: return Color::blue;
    case Color::blue: return Color::red;
    case Color::red: return Color::green;
  }
  return c;
}

/// The point whose positive cone contains the other, and that cone's color.
struct ApexInfo {
  Vec2 apex;
  Vec2 other;
  Color color;
};

inline ApexInfo apex_of(Vec2 p, Vec2 q) {
  const ConeId c = cone_of(p, q);
  if (c.positive()) return {p, q, c.color};
  return {q, p, c.color};
}

inline Homothet smallest_homothet(Vec2 p, Vec2 q) {
  const ApexInfo a = apex_of(p, q);
  return Homothet::with_vertex(a.color, a.apex, tri_dist(p, q));
}

inline Homothet smallest_homothet(const Point& p, const Point& q) {
  return smallest_homothet(p.pos(), q.pos());
}

/// Distances from the non-apex point to the two homothet vertices that do
/// not coincide with the apex point.
struct DeltaValues {
  double d_tri = 0.0;
  double delta_c2 = 0.0;
  double delta_c3 = 0.0;
  double delta_min = 0.0;
  Color apex_color = Color::red;
  Color c2 = Color::green;
  Color c3 = Color::blue;

  double delta_at(Color c) const {
    if (c == apex_color) {
      throw UndefinedDelta("delta undefined at the apex vertex (" + std::string(to_string(c)) +
                           ")");
    }
    return c == c2 ? delta_c2 : delta_c3;
  }
  double delta_blue() const { return delta_at(Color::blue); }
  double delta_white() const { return d_tri - delta_blue(); }
};

inline DeltaValues delta_values(Vec2 u, Vec2 v) {
  const ApexInfo a = apex_of(u, v);
  const double s = tri_dist(u, v);
  const Homothet h = Homothet::with_vertex(a.color, a.apex, s);
  DeltaValues out;
  out.d_tri = s;
  out.apex_color = a.color;
  out.c2 = clockwise_next(a.color);
  out.c3 = clockwise_next(out.c2);
  out.delta_c2 = std::min(s, distance(h.vertex(out.c2), a.other));
  out.delta_c3 = std::min(s, distance(h.vertex(out.c3), a.other));
  out.delta_min = std::min(out.delta_c2, out.delta_c3);
  return out;
}

inline DeltaValues delta_values(const Point& u, const Point& v) {
  return delta_values(u.pos(), v.pos());
}

// ---------------------------------------------------------------------------
// Predicates

/// Sign of (b-a) x (c-a). A double evaluation is accepted when it clears a
/// forward error bound; otherwise the determinant is re-evaluated in long
/// double and anything still inside that bound is reported as collinear.
inline int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  const double bound = 3.3306690738754716e-16 * (std::fabs(l) + std::fabs(r));
  if (det > bound) return 1;
  if (det < -bound) return -1;

  using ld = long double;
  const ld ll = (static_cast<ld>(b.x) - a.x) * (static_cast<ld>(c.y) - a.y);
  const ld rl = (static_cast<ld>(b.y) - a.y) * (static_cast<ld>(c.x) - a.x);
  const ld detl = ll - rl;
  const ld boundl = 8.0L * LDBL_EPSILON * (std::fabs(ll) + std::fabs(rl));
  if (detl > boundl) return 1;
  if (detl < -boundl) return -1;
  return 0;
}

inline int orientation(const Point& a, const Point& b, const Point& c) {
  return orientation(a.pos(), b.pos(), c.pos());
}

struct Segment {
  Vec2 a;
  Vec2 b;
};

namespace detail {

// c is collinear with [a,b]; true when it lies within the closed box.
inline bool within_box(Vec2 a, Vec2 b, Vec2 c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
         c.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// True when the two segments share a point other than a common endpoint.
/// A vertex resting on the interior of the other segment counts.
inline bool segments_properly_cross(const Segment& s1, const Segment& s2) {
  const Vec2 a = s1.a, b = s1.b, c = s2.a, d = s2.b;
  const bool ac = a == c, ad = a == d, bc = b == c, bd = b == d;
  if ((ac && bd) || (ad && bc)) return true;
  if (ac || ad || bc || bd) {
    const Vec2 shared = (ac || ad) ? a : b;
    const Vec2 p = (ac || ad) ? b : a;
    const Vec2 q = (ac || bc) ? d : c;
    return orientation(shared, p, q) == 0 && dot(p - shared, q - shared) > 0.0;
  }
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return (o1 == 0 && detail::within_box(a, b, c)) || (o2 == 0 && detail::within_box(a, b, d)) ||
         (o3 == 0 && detail::within_box(c, d, a)) || (o4 == 0 && detail::within_box(c, d, b));
}

// ---------------------------------------------------------------------------
// General position

/// Rotation schedule step (radians).
inline const double kRotationStep = 1e-3 * (std::sqrt(5.0) - 1.0);
inline constexpr int kRotationAttempts = 64;

inline std::vector<Point> rotate_points(std::span<const Point> pts, double angle) {
  std::vector<Point> out(pts.begin(), pts.end());
  if (angle == 0.0) return out;
  const double c = std::cos(angle), s = std::sin(angle);
  for (auto& p : out) {
    const double x = p.x, y = p.y;
    p.x = c * x - s * y;
    p.y = s * x + c * y;
  }
  return out;
}

/// True when no pair of points is parallel to a cone boundary line. Parallel
/// pairs are exactly the pairs with equal projection onto a boundary normal,
/// so sorting the three projections finds them in O(n log n). Tied
/// triangular distances inside a positive cone reduce to the same test.
inline bool in_general_position(std::span<const Point> pts) {
  if (pts.size() < 2) return true;
  double xmin = pts[0].x, xmax = xmin, ymin = pts[0].y, ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double diag = std::hypot(xmax - xmin, ymax - ymin);
  if (diag == 0.0) return false;
  // A projection gap of g between points at most diag apart bounds the
  // angular clearance from below by g / diag.
  const double tol = 2.0 * kDegenerateAngle * diag;
  std::vector<double> proj(pts.size());
  for (int k = 0; k < 3; ++k) {
    const Vec2 ray = boundary_ray(k);
    const Vec2 normal{-ray.y, ray.x};
    for (std::size_t i = 0; i < pts.size(); ++i) proj[i] = dot(pts[i].pos(), normal);
    std::sort(proj.begin(), proj.end());
    for (std::size_t i = 1; i < proj.size(); ++i) {
      if (proj[i] - proj[i - 1] <= tol) return false;
    }
  }
  return true;
}

struct GeneralPositionResult {
  std::vector<Point> points;
  double applied_rotation = 0.0;
};

inline GeneralPositionResult ensure_general_position(std::span<const Point> pts) {
  {
    std::vector<Vec2> coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) coords.push_back(p.pos());
    std::sort(coords.begin(), coords.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (std::adjacent_find(coords.begin(), coords.end()) != coords.end()) {
      throw GeneralPositionFailure("duplicate points cannot be put in general position");
    }
  }
  for (int step = 0; step < kRotationAttempts; ++step) {
    const double angle = step * kRotationStep;
    auto rotated = rotate_points(pts, angle);
    if (in_general_position(rotated)) return {std::move(rotated), angle};
  }
  throw GeneralPositionFailure("no rotation in the schedule yields general position");
}

}  // namespace tdspanner
