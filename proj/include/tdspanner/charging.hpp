#pragma once

// Assigns each spanner edge to one of four sectors at each of its endpoints:
// upper white [60,180), lower white [240,360), right blue [0,60) and left
// blue [180,240). No sector may be charged twice, which caps degree at 4.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/spanner.hpp"

namespace tdspanner {

enum class ChargeSector : std::uint8_t { upper_white, lower_white, right_blue, left_blue };

inline constexpr std::string_view to_string(ChargeSector s) {
  switch (s) {
    case ChargeSector::upper_white: return "UW";
    case ChargeSector::lower_white: return "LW";
    case ChargeSector::right_blue: return "RB";
    case ChargeSector::left_blue: return "LB";
  }
  return "?";
}

/// (point, sector) -> the edge charged there, as (u, v) with u < v.
using ChargeMap = std::map<std::pair<PointId, ChargeSector>, std::pair<PointId, PointId>>;

namespace detail {

inline ChargeSector white_sector(const Point& at, const Point& other) {
  return other.y > at.y ? ChargeSector::upper_white : ChargeSector::lower_white;
}

}  // namespace detail

/// Charges every edge per its construction kind. Each edge is oriented x->y
/// with y in a positive cone of x.
inline ChargeMap charge_edges(const SpannerGraph& s) {
  ChargeMap out;
  const auto charge = [&](const SpannerEdge& e, PointId p, ChargeSector sector) {
    const auto [it, fresh] = out.try_emplace({p, sector}, e.u, e.v);
    if (!fresh) {
      throw ChargeCollision("sector " + std::string(to_string(sector)) + " of point " +
                            std::to_string(p) + " charged by (" + std::to_string(it->second.first) +
                            "," + std::to_string(it->second.second) + ") and (" +
                            std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
  };
  for (const auto& e : s.edges()) {
    const bool u_first = cone_of(s.point(e.u), s.point(e.v)).positive();
    const Point& x = s.point(u_first ? e.u : e.v);
    const Point& y = s.point(u_first ? e.v : e.u);
    ChargeSector at_x{}, at_y{};
    switch (e.kind) {
      case EdgeKind::blue_anchor:
        at_x = ChargeSector::left_blue;
        at_y = ChargeSector::right_blue;
        break;
      case EdgeKind::white_anchor:
      case EdgeKind::shortcut_blue_cone:
        at_x = detail::white_sector(x, y);
        at_y = detail::white_sector(y, x);
        break;
      case EdgeKind::canonical_blue_cone:
        at_x = detail::white_sector(x, y);
        at_y = ChargeSector::left_blue;
        break;
      case EdgeKind::canonical_white_cone:
      case EdgeKind::shortcut_white_cone:
        at_x = ChargeSector::right_blue;
        at_y = detail::white_sector(y, x);
        break;
    }
    charge(e, x.id, at_x);
    charge(e, y.id, at_y);
  }
  return out;
}

}  // namespace tdspanner
