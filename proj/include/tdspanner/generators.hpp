#pragma once

// Seeded point-set generators. All randomness comes from std::mt19937_64,
// whose output sequence is fixed by the standard, converted to doubles with
// explicit arithmetic so results do not depend on the library's
// distribution implementations.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tdspanner/errors.hpp"
#include "tdspanner/geometry.hpp"

namespace tdspanner {

enum class GenKind { uniform, convex, grid, clustered, lower_bound_rect };

inline constexpr std::string_view to_string(GenKind k) {
  switch (k) {
    case GenKind::uniform: return "uniform";
    case GenKind::convex: return "convex";
    case GenKind::grid: return "grid";
    case GenKind::clustered: return "clustered";
    case GenKind::lower_bound_rect: return "lower_bound_rect";
  }
  return "?";
}

inline GenKind parse_gen_kind(std::string_view s) {
  for (GenKind k : {GenKind::uniform, GenKind::convex, GenKind::grid, GenKind::clustered,
                    GenKind::lower_bound_rect}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidSpec("unknown generator kind '" + std::string(s) + "'");
}

struct GenSpec {
  GenKind kind = GenKind::uniform;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double rho = 2.0;                  ///< lower_bound_rect
  std::optional<std::size_t> rows{};   ///< grid
  std::optional<std::size_t> cols{};   ///< grid
  std::size_t clusters = 5;          ///< clustered
  double sigma = 0.05;               ///< clustered
  double perturbation = 1e-6;        ///< lower_bound_rect inward offset
};

class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal by Box-Muller.
  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    return r * std::cos(2.0 * kPi * u2);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Side parameters of the lower-bound rectangle: width b and N points per side.
struct RectParams {
  std::size_t b;
  std::size_t per_side;
};

inline RectParams lower_bound_rect_params(double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw InvalidSpec("lower_bound_rect needs rho >= 1");
  const auto b = static_cast<std::size_t>(std::floor(rho)) + 1;
  const auto per_side = 3 * (static_cast<std::size_t>(std::ceil(rho)) * b + 1) + 1;
  return {b, per_side};
}

inline std::vector<Point> generate(const GenSpec& spec) {
  std::vector<Vec2> c;
  SplitRng rng(spec.seed);
  switch (spec.kind) {
    case GenKind::uniform:
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double x = rng.uniform();
        c.push_back({x, rng.uniform()});
      }
      break;
    case GenKind::convex:
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = 2.0 * kPi * (static_cast<double>(i) + 0.25 + 0.5 * rng.uniform()) /
                         static_cast<double>(spec.n);
        c.push_back({std::cos(t), std::sin(t)});
      }
      break;
    case GenKind::grid: {
      std::size_t cols = spec.cols.value_or(0);
      std::size_t count = spec.n;
      if (spec.rows && spec.cols) {
        count = *spec.rows * *spec.cols;
      } else if (spec.rows) {
        cols = (spec.n + *spec.rows - 1) / *spec.rows;
      }
      if (cols == 0) cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
      for (std::size_t i = 0; i < count; ++i) {
        c.push_back({static_cast<double>(i % cols), static_cast<double>(i / cols)});
      }
      break;
    }
    case GenKind::clustered: {
      if (spec.clusters == 0) throw InvalidSpec("clustered needs at least one cluster");
      std::vector<Vec2> centers;
      for (std::size_t k = 0; k < spec.clusters; ++k) {
        const double x = rng.uniform();
        centers.push_back({x, rng.uniform()});
      }
      for (std::size_t i = 0; i < spec.n; ++i) {
        const Vec2 m = centers[rng.next() % spec.clusters];
        const double dx = rng.normal();
        c.push_back({m.x + spec.sigma * dx, m.y + spec.sigma * rng.normal()});
      }
      break;
    }
    case GenKind::lower_bound_rect: {
      const auto [b, per_side] = lower_bound_rect_params(spec.rho);
      const double mid = (static_cast<double>(per_side) + 1.0) / 2.0;
      const double half = (static_cast<double>(per_side) - 1.0) / 2.0;
      for (std::size_t i = 1; i <= per_side; ++i) {
        const double t = (static_cast<double>(i) - mid) / half;
        c.push_back({spec.perturbation * t * t, static_cast<double>(i - 1)});
      }
      for (std::size_t i = 1; i <= per_side; ++i) {
        const double t = (static_cast<double>(i) - mid) / half;
        c.push_back({static_cast<double>(b) - spec.perturbation * t * t, static_cast<double>(i - 1)});
      }
      break;
    }
  }
  return make_points(c);
}

}  // namespace tdspanner
