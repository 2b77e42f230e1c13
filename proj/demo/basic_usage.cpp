// Builds the spanner of a small random point set and prints its edges and
// the certified properties.

#include <cstdio>

#include "tdspanner/tdspanner.hpp"

int main() {
  using namespace tdspanner;

  const auto points = generate({GenKind::uniform, 40, 7});
  const auto built = build_spanner_full(points);
  const SpannerGraph& s = built.spanner;

  std::printf("%zu points, %zu edges, rotation %.3g rad\n", s.size(), s.edge_count(), s.rotation_applied());
  for (const auto& e : s.edges()) {
    std::printf("  %3u -- %3u  %-21s %s\n", e.u, e.v, std::string(to_string(e.kind)).c_str(),
                std::string(to_string(e.source_color)).c_str());
  }

  VerifyOptions opt;
  opt.bounds = true;
  opt.charging = true;
  const auto report = verify_spanner(s, opt, &built.td);
  std::printf("plane: %s\n", report.planarity.plane ? "yes" : "no");
  std::printf("max degree: %zu (limit %zu)\n", report.degree.max_degree, report.degree.limit);
  std::printf("stretch: %.4f between %u and %u\n", report.stretch.euclidean.value, report.stretch.euclidean.p,
              report.stretch.euclidean.q);
  std::printf("triangulation stretch: %.4f\n", report.td_stretch->value);
  std::printf("bound violations: %zu, charging %s\n", report.bounds->violations.size(),
              *report.charging_ok ? "ok" : "collided");
  return report.ok() ? 0 : 2;
}
