#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdspanner/geometry.hpp"

using namespace tdspanner;

namespace {

const double kS3 = std::sqrt(3.0);

void expect_vec_near(Vec2 a, Vec2 b, double tol = 1e-12) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

}  // namespace

TEST(Orientation, BasicTurns) {
  EXPECT_EQ(orientation(Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}), 1);
  EXPECT_EQ(orientation(Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}), 0);
  EXPECT_EQ(orientation(Vec2{0, 0}, Vec2{0, 1}, Vec2{1, 1}), -1);
}

TEST(Orientation, AntisymmetricAndTranslationInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, t{u(rng), u(rng)};
    const int o = orientation(a, b, c);
    EXPECT_EQ(orientation(a, c, b), -o);
    EXPECT_EQ(orientation(a + t, b + t, c + t), o);
  }
}

TEST(Orientation, NearlyCollinearIsExact) {
  // c sits 2^-40 above the line through a and b.
  const Vec2 a{0.5, 0.5}, b{12.0, 12.0};
  const Vec2 c{24.0, 24.0 + std::ldexp(1.0, -40)};
  EXPECT_EQ(orientation(a, b, c), 1);
  EXPECT_EQ(orientation(a, b, Vec2{24.0, 24.0}), 0);
}

TEST(SegmentsCross, Examples) {
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {1, 1}}, {{1, 1}, {2, 0}}));
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
}

TEST(SegmentsCross, TouchingInteriorCounts) {
  // Endpoint of one segment in the interior of the other.
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));
  // Collinear overlap.
  EXPECT_TRUE(segments_properly_cross({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
  // Collinear, disjoint.
  EXPECT_FALSE(segments_properly_cross({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
}

TEST(SegmentsCross, MatchesOracleOnRandomSegments) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    const auto v = oracle::random_coords(rng, 4);
    EXPECT_EQ(segments_properly_cross({v[0], v[1]}, {v[2], v[3]}), oracle::crosses(v[0], v[1], v[2], v[3]));
  }
}

TEST(ConeOf, Examples) {
  EXPECT_EQ(cone_of(Vec2{0, 0}, Vec2{0, 1}), (ConeId{Color::red, Sign::positive}));
  EXPECT_EQ(cone_of(Vec2{0, 0}, Vec2{3, -kS3}), (ConeId{Color::green, Sign::positive}));
  EXPECT_EQ(cone_of(Vec2{0, 0}, Vec2{0, -1}), (ConeId{Color::red, Sign::negative}));
}

TEST(ConeOf, BoundaryAndCoincidentThrow) {
  EXPECT_THROW(cone_of(Vec2{0, 0}, Vec2{1, 0}), DegenerateDirection);
  EXPECT_THROW(cone_of(Vec2{0, 0}, Vec2{0.5, kS3 / 2}), DegenerateDirection);
  EXPECT_THROW(cone_of(Vec2{1, 1}, Vec2{1, 1}), DegenerateDirection);
}

TEST(ConeOf, MatchesAtan2AndIsAntipodal) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto v = oracle::random_coords(rng, 2, -1, 1);
    const ConeId c = cone_of(v[0], v[1]);
    EXPECT_EQ(c.sector(), oracle::sector_atan2(v[0], v[1]));
    const ConeId back = cone_of(v[1], v[0]);
    EXPECT_EQ(back.color, c.color);
    EXPECT_NE(back.positive(), c.positive());
  }
}

TEST(ConeId, SectorTableRoundTrips) {
  for (int k = 0; k < 6; ++k) EXPECT_EQ(ConeId::from_sector(k).sector(), k);
  EXPECT_EQ(positive_sector(Color::red), 1);
  EXPECT_EQ(negative_sector(Color::red), 4);
  EXPECT_EQ(positive_sector(Color::green), 5);
  EXPECT_EQ(negative_sector(Color::blue), 0);
  // Positive and negative sectors alternate.
  for (int k = 0; k < 6; ++k) EXPECT_NE(ConeId::from_sector(k).positive(), ConeId::from_sector(k + 1).positive());
}

TEST(TriDist, Examples) {
  EXPECT_EQ(tri_dist(Vec2{1, 1}, Vec2{1, 1}), 0.0);
  EXPECT_NEAR(tri_dist(Vec2{0, 0}, Vec2{3, -kS3}), 4.0, 1e-12);
  EXPECT_NEAR(tri_dist(Vec2{0, 0}, Vec2{0, 2}), 4.0 / kS3, 1e-12);
  // Values frozen from the bisection oracle.
  EXPECT_NEAR(oracle::tri_dist_bisect({0, 0}, {3, -kS3}), 4.0, 1e-9);
  EXPECT_NEAR(oracle::tri_dist_bisect({0, 0}, {0, 2}), 4.0 / kS3, 1e-9);
}

TEST(TriDist, MatchesBisectionOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const auto v = oracle::random_coords(rng, 2, -10, 10);
    const double want = oracle::tri_dist_bisect(v[0], v[1]);
    EXPECT_NEAR(tri_dist(v[0], v[1]), want, 1e-6 * want);
  }
}

TEST(TriDist, MetricAxioms) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5000; ++i) {
    const auto v = oracle::random_coords(rng, 3, -5, 5);
    const double pq = tri_dist(v[0], v[1]);
    EXPECT_GT(pq, 0.0);
    EXPECT_NEAR(pq, tri_dist(v[1], v[0]), 1e-12 * pq);
    EXPECT_LE(pq, tri_dist(v[0], v[2]) + tri_dist(v[2], v[1]) + 1e-12);
    EXPECT_LE(distance(v[0], v[1]), pq * (1 + 1e-12));
  }
}

TEST(Homothet, GreenApexExample) {
  const auto h = smallest_homothet(Vec2{0, 0}, Vec2{3, -kS3});
  EXPECT_NEAR(h.side, 4.0, 1e-12);
  expect_vec_near(h.green, {0, 0});
  expect_vec_near(h.blue, {4, 0});
  expect_vec_near(h.red, {2, -2 * kS3});
}

TEST(Homothet, RedApexExample) {
  const auto h = smallest_homothet(Vec2{0, 0}, Vec2{0, 2});
  EXPECT_NEAR(h.side, 4.0 / kS3, 1e-12);
  expect_vec_near(h.red, {0, 0});
  EXPECT_EQ(apex_of(Vec2{0, 2}, Vec2{0, 0}).color, Color::red);
}

TEST(Homothet, BluePositiveConeGivesBlueApex) {
  // Direction 200 degrees lies in the blue positive sector [180, 240).
  const Vec2 q{std::cos(200 * kPi / 180), std::sin(200 * kPi / 180)};
  EXPECT_EQ(apex_of(Vec2{0, 0}, q).color, Color::blue);
  const auto h = smallest_homothet(Vec2{0, 0}, q);
  expect_vec_near(h.blue, {0, 0});
}

TEST(Homothet, BothPointsOnBoundary) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const auto v = oracle::random_coords(rng, 2, -3, 3);
    const auto h = smallest_homothet(v[0], v[1]);
    const double tol = 1e-9 * h.side;
    for (Vec2 p : {v[0], v[1]}) {
      EXPECT_TRUE(h.contains(p, tol));
      // Not strictly inside: some side distance is ~0.
      const double top = h.green.y - p.y;
      const double right = dot(h.blue - p, bisector(Color::green));
      const double left = dot(h.green - p, bisector(Color::blue));
      EXPECT_LT(std::min({top, right, left}), tol);
    }
  }
}

TEST(Delta, GreenApexExample) {
  const auto d = delta_values(Vec2{0, 0}, Vec2{3, -kS3});
  EXPECT_EQ(d.apex_color, Color::green);
  EXPECT_EQ(d.c2, Color::blue);
  EXPECT_EQ(d.c3, Color::red);
  EXPECT_NEAR(d.delta_c2, 2.0, 1e-12);
  EXPECT_NEAR(d.delta_c3, 2.0, 1e-12);
  EXPECT_NEAR(d.delta_min, 2.0, 1e-12);
  EXPECT_THROW((void)d.delta_at(Color::green), UndefinedDelta);
}

TEST(Delta, TopMidpointExample) {
  const auto d = delta_values(Vec2{0, 0}, Vec2{0, 2});
  EXPECT_NEAR(d.delta_at(Color::green), 2.0 / kS3, 1e-12);
  EXPECT_NEAR(d.delta_blue(), 2.0 / kS3, 1e-12);
  EXPECT_NEAR(d.delta_white(), 2.0 / kS3, 1e-12);
  EXPECT_THROW((void)d.delta_at(Color::red), UndefinedDelta);
}

TEST(Delta, PointAtVertex) {
  // v at the blue vertex of the red-apex homothet: direction 60 degrees is a
  // boundary, so nudge it inside by 1e-9 radians.
  const double a = kPi / 3 + 1e-9;
  const auto d = delta_values(Vec2{0, 0}, Vec2{std::cos(a), std::sin(a)});
  EXPECT_NEAR(d.delta_blue(), 0.0, 1e-8);
  EXPECT_NEAR(d.delta_at(Color::green), d.d_tri, 1e-8);
}

TEST(Delta, SumEqualsTriDist) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5000; ++i) {
    const auto v = oracle::random_coords(rng, 2, -2, 2);
    const auto d = delta_values(v[0], v[1]);
    EXPECT_NEAR(d.delta_c2 + d.delta_c3, d.d_tri, 1e-9 * d.d_tri);
    EXPECT_GE(d.delta_c2, 0.0);
    EXPECT_LE(d.delta_c3, d.d_tri);
    EXPECT_EQ(d.delta_min, std::min(d.delta_c2, d.delta_c3));
    const auto r = delta_values(v[1], v[0]);
    EXPECT_NEAR(r.delta_min, d.delta_min, 1e-12 * d.d_tri);
  }
}

TEST(GeneralPosition, GenericInputUnchanged) {
  std::mt19937_64 rng(1);
  const auto pts = make_points(oracle::random_coords(rng, 50));
  const auto r = ensure_general_position(pts);
  EXPECT_EQ(r.applied_rotation, 0.0);
  EXPECT_EQ(r.points, pts);
}

TEST(GeneralPosition, GridIsRotated) {
  std::vector<Vec2> c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.push_back({double(i), double(j)});
  const auto pts = make_points(c);
  const auto r = ensure_general_position(pts);
  EXPECT_NE(r.applied_rotation, 0.0);
  int pairs = 0;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = i + 1; j < 9; ++j) {
      ++pairs;
      const Vec2 d = r.points[j].pos() - r.points[i].pos();
      double a = std::atan2(d.y, d.x);
      const double rem = std::remainder(a, kPi / 3);
      EXPECT_GT(std::abs(rem), 1e-12);
    }
  EXPECT_EQ(pairs, 36);
  const auto again = ensure_general_position(r.points);
  EXPECT_EQ(again.applied_rotation, 0.0);
}

TEST(GeneralPosition, DuplicatesFail) {
  const auto pts = make_points({{0, 0}, {1, 2}, {0, 0}});
  EXPECT_THROW(ensure_general_position(pts), GeneralPositionFailure);
}
