// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <array>
#include <span>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "structural.hpp"
#include "tdspanner/tdspanner.hpp"

using namespace tdspanner;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

struct Instance {
  std::string label;
  std::vector<Point> points;
};

std::vector<Instance> corpus() {
  std::vector<Instance> out;
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (GenKind k : {GenKind::uniform, GenKind::clustered, GenKind::convex}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        out.push_back({std::string(to_string(k)) + " n=" + std::to_string(n) + " seed=" + std::to_string(seed),
                       generate({k, n, seed})});
      }
    }
  }
  for (double rho : {1.0, 2.0, 5.0}) {
    GenSpec spec{GenKind::lower_bound_rect, 0, 0};
    spec.rho = rho;
    out.push_back({fmt("lower_bound_rect rho=%g", rho), generate(spec)});
  }
  return out;
}

struct Tally {
  // 1
  std::size_t crossings = 0;
  std::string first_crossing;
  // 2
  std::size_t degree_fail = 0;
  std::size_t max_deg = 0, max_deg_convex = 0, convex_instances = 0;
  // 3
  std::size_t stretch_viol = 0;
  double worst_eu = 1.0, worst_tri = 0.0;
  std::string worst_label;
  // 4
  double worst_td = 1.0;
  std::size_t td_viol = 0;
  // 7
  std::size_t canonical_audit = 0, shortcut_cones = 0, shortcut_records = 0, crossed_protected = 0, charging = 0;
  // 8, indexed by 0 canonical, 1 extracted
  std::array<std::size_t, 2> paths{}, not_monotone{}, not_contained{}, bad_projection{}, too_long{}, too_heavy{};
  std::array<double, 2> worst_excursion{};
  std::string first_uncontained;
  // 9
  std::size_t gating = 0, auxiliary = 0;
  std::array<double, kBoundClassCount> worst_ratio{};
  std::array<std::size_t, kBoundClassCount> checked{}, violations{};
};

// Largest distance by which a path point leaves the homothet of its endpoints,
// relative to the homothet's side.
double excursion(const TdGraph& g, std::span<const PointId> path) {
  Vec2 u = g.point(path.front()).pos(), v = g.point(path.back()).pos();
  if (!cone_of(u, v).positive()) std::swap(u, v);
  const Homothet h = Homothet::with_vertex(cone_of(u, v).color, u, tri_dist(u, v));
  double worst = 0.0;
  for (PointId p : path) {
    double lo = 0.0, hi = h.side;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (h.contains(g.point(p).pos(), mid) ? hi : lo) = mid;
    }
    worst = std::max(worst, hi / h.side);
  }
  return worst;
}

void run_instance(const Instance& inst, Tally& t, std::mt19937_64& rng) {
  const auto b = build_spanner_full(inst.points);
  const auto& g = b.td;
  const auto& s = b.spanner;
  const auto& pts = s.points();
  const std::size_t n = pts.size();
  const auto pairs = s.edge_pairs();

  const auto plan = check_planarity(pts, pairs);
  if (!plan.plane) {
    if (t.crossings++ == 0) t.first_crossing = inst.label;
  }

  const bool convex = check_convex_position(pts);
  const auto deg = check_degree(n, pairs, convex ? 3 : 4);
  if (!deg.ok()) ++t.degree_fail;
  if (convex) {
    ++t.convex_instances;
    t.max_deg_convex = std::max(t.max_deg_convex, deg.max_degree);
  } else {
    t.max_deg = std::max(t.max_deg, deg.max_degree);
  }

  const auto dm = all_pairs(GraphDistances(pts, pairs), 1);
  const auto td_pairs = td_edge_pairs(g);
  const auto dd = all_pairs(GraphDistances(pts, td_pairs), 1);
  const double slack = 1.0 + 1e-9;
  for (PointId p = 0; p < n; ++p) {
    for (PointId q = p + 1; q < n; ++q) {
      const double e = distance(pts[p], pts[q]);
      const double tr = tri_dist(pts[p], pts[q]);
      const double ds = dm(p, q);
      if (ds > 20.0 * tr * slack || ds > 20.0 * e * slack) ++t.stretch_viol;
      if (ds / e > t.worst_eu) {
        t.worst_eu = ds / e;
        t.worst_label = inst.label;
      }
      t.worst_tri = std::max(t.worst_tri, ds / tr);
      const double r = dd(p, q) / e;
      t.worst_td = std::max(t.worst_td, r);
      if (r > 2.0 + 1e-9) ++t.td_viol;
    }
  }

  t.canonical_audit += lemma1_audit(g).size();
  for (const auto& r : s.shortcut_records()) {
    ++t.shortcut_records;
    if (!structural::shortcut_cones_ok(g, r)) ++t.shortcut_cones;
  }
  t.crossed_protected += structural::crossed_protected_edges(g, s).size();
  try {
    (void)charge_edges(s);
  } catch (const ChargeCollision&) {
    ++t.charging;
  }

  const auto note_path = [&](std::span<const PointId> path, int kind, const std::string& what) {
    const auto a = audit_monotone_path(g, path);
    ++t.paths[kind];
    t.not_monotone[kind] += !a.monotone();
    t.bad_projection[kind] += !a.projections_monotone;
    t.too_long[kind] += !a.length_ok();
    t.too_heavy[kind] += !a.mass_ok();
    if (!a.contained) {
      if (t.not_contained[0] + t.not_contained[1] == 0) t.first_uncontained = inst.label + " " + what;
      ++t.not_contained[kind];
      t.worst_excursion[kind] = std::max(t.worst_excursion[kind], excursion(g, path));
    }
  };
  for (PointId w = 0; w < n; ++w) {
    for (Color c : kColors) {
      const auto path = g.canonical_path(w, c);
      if (path.size() < 2 || path.size() > 40) continue;
      for (std::size_t i = 0; i < path.size(); ++i) {
        for (std::size_t j = i + 1; j < path.size(); ++j) {
          const auto sub = canonical_subpath(g, w, c, path[i], path[j]);
          note_path(sub, 0, fmt("fan %u %s [%zu,%zu]", w, std::string(to_string(c)).c_str(), i, j));
        }
      }
    }
  }
  if (n >= 2) {
    const std::size_t samples = std::min<std::size_t>(500, n * (n - 1) / 2);
    for (std::size_t i = 0; i < samples; ++i) {
      const PointId p = static_cast<PointId>(rng() % n);
      PointId q = static_cast<PointId>(rng() % n);
      if (p == q) q = (q + 1) % n;
      note_path(extract_monotone_path(g, p, q).points, 1, fmt("path %u-%u", p, q));
    }
  }

  const auto audit = audit_edge_bounds(g, s, dm);
  for (std::size_t c = 0; c < kBoundClassCount; ++c) {
    t.checked[c] += audit.classes[c].checked;
    t.worst_ratio[c] = std::max(t.worst_ratio[c], audit.classes[c].worst_ratio);
  }
  for (const auto& v : audit.violations) {
    ++t.violations[static_cast<std::size_t>(v.cls)];
    ++(is_gating(v.cls) ? t.gating : t.auxiliary);
  }
}

Criterion sweep_vs_naive() {
  Criterion c{5, "sweep build equals naive build", true, ""};
  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0, instances = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 64;
    const GenKind k = i % 3 == 0 ? GenKind::clustered : GenKind::uniform;
    const auto pts = ensure_general_position(generate({k, n, rng()})).points;
    const auto a = build_sweep(pts).edges();
    const auto b = build_naive(pts).edges();
    std::set<std::tuple<PointId, PointId, Color>> sa, sb;
    for (const auto& e : a) sa.emplace(e.tail, e.head, e.color);
    for (const auto& e : b) sb.emplace(e.tail, e.head, e.color);
    mismatches += sa != sb;
    ++instances;
  }
  c.pass = mismatches == 0 && instances >= 1000;
  c.detail = fmt("%zu instances, n<=64, %zu mismatches", instances, mismatches);
  return c;
}

Criterion metric_oracle() {
  Criterion c{6, "triangular distance matches oracle, metric axioms", true, ""};
  std::mt19937_64 rng(77);
  std::size_t bad_oracle = 0, bad_axiom = 0;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto v = oracle::random_coords(rng, 2, -100, 100);
    const double want = oracle::tri_dist_bisect(v[0], v[1]);
    const double rel = std::abs(tri_dist(v[0], v[1]) - want) / want;
    worst = std::max(worst, rel);
    if (rel > 1e-6) ++bad_oracle;
  }
  for (int i = 0; i < 10000; ++i) {
    const auto v = oracle::random_coords(rng, 3, -100, 100);
    const double pq = tri_dist(v[0], v[1]), qp = tri_dist(v[1], v[0]);
    const double tol = 1e-12 * (pq + 1.0);
    const bool ok = pq > 0.0 && tri_dist(v[0], v[0]) == 0.0 && std::abs(pq - qp) <= tol &&
                    pq <= tri_dist(v[0], v[2]) + tri_dist(v[2], v[1]) + tol &&
                    distance(v[0], v[1]) <= pq + tol;
    if (!ok) ++bad_axiom;
  }
  c.pass = bad_oracle == 0 && bad_axiom == 0;
  c.detail = fmt("1e4 pairs: %zu off by >1e-6 (worst rel %.2e); 1e4 triples: %zu axiom failures", bad_oracle, worst,
                 bad_axiom);
  return c;
}

Criterion performance() {
  Criterion c{10, "build time", true, ""};
  const auto time_build = [](std::size_t n, std::uint64_t seed) {
    const auto pts = generate({GenKind::uniform, n, seed});
    const auto t0 = Clock::now();
    const auto s = build_spanner(pts);
    const double t = seconds_since(t0);
    if (s.size() != n) std::abort();
    return t;
  };
  const double big = time_build(100000, 1);
  const std::array<std::size_t, 3> sizes = {25000, 50000, 100000};
  std::array<double, 3> mean{};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (std::uint64_t r = 0; r < 5; ++r) mean[i] += time_build(sizes[i], 100 + r) / 5.0;
  }
  const double r1 = mean[1] / mean[0], r2 = mean[2] / mean[1];
  c.pass = big <= 5.0 && r1 <= 2.6 && r2 <= 2.6;
  c.detail = fmt("n=1e5 in %.3f s (limit 5); mean %.3f/%.3f/%.3f s at 2.5e4/5e4/1e5, ratios %.2f %.2f (limit 2.6)",
                 big, mean[0], mean[1], mean[2], r1, r2);
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  const auto t0 = Clock::now();
  const auto instances = corpus();
  Tally t;
  std::mt19937_64 rng(5);
  for (const auto& inst : instances) run_instance(inst, t, rng);
  const double corpus_s = seconds_since(t0);

  results.push_back({1, "planarity", t.crossings == 0 && corpus_s < 300.0,
                     fmt("%zu instances, %zu with crossings%s%s; corpus pass %.1f s (limit 300)", instances.size(),
                         t.crossings, t.crossings ? ", first: " : "", t.first_crossing.c_str(), corpus_s)});
  results.push_back({2, "degree", t.degree_fail == 0,
                     fmt("max degree %zu general, %zu over %zu convex-position instances; %zu over limit", t.max_deg,
                         t.max_deg_convex, t.convex_instances, t.degree_fail)});
  results.push_back({3, "stretch <= 20", t.stretch_viol == 0,
                     fmt("%zu violating pairs; worst Euclidean %.4f (%s), worst triangular %.4f", t.stretch_viol,
                         t.worst_eu, t.worst_label.c_str(), t.worst_tri)});
  results.push_back({4, "triangulation is a 2-spanner", t.td_viol == 0,
                     fmt("worst %.6f, %zu violating pairs", t.worst_td, t.td_viol)});
  results.push_back(sweep_vs_naive());
  results.push_back(metric_oracle());
  results.push_back({7, "structural facts",
                     t.canonical_audit == 0 && t.shortcut_cones == 0 && t.crossed_protected == 0 && t.charging == 0,
                     fmt("canonical-edge audit %zu; shortcut cones %zu of %zu; crossed protected edges %zu; "
                         "charging collisions %zu",
                         t.canonical_audit, t.shortcut_cones, t.shortcut_records, t.crossed_protected, t.charging)});
  {
    std::size_t bad = 0;
    std::string d;
    for (int k = 0; k < 2; ++k) {
      bad += t.not_monotone[k] + t.not_contained[k] + t.bad_projection[k] + t.too_long[k] + t.too_heavy[k];
      d += fmt("\n      %-9s %8zu paths: not monotone %zu, outside homothet %zu (worst %.3g of side), "
               "projections %zu, length %zu, mass %zu",
               k == 0 ? "canonical" : "extracted", t.paths[k], t.not_monotone[k], t.not_contained[k],
               t.worst_excursion[k], t.bad_projection[k], t.too_long[k], t.too_heavy[k]);
    }
    if (!t.first_uncontained.empty()) d += "\n      first path outside its homothet: " + t.first_uncontained;
    results.push_back({8, "path facts", bad == 0, fmt("%zu failures", bad) + d});
  }
  {
    std::string d = fmt("%zu gating violations", t.gating);
    for (std::size_t c = 0; c < kBoundClassCount; ++c) {
      const auto cls = static_cast<BoundClass>(c);
      d += fmt("\n      %-28s %s checked %8zu  violations %5zu  worst ratio %.4f", std::string(to_string(cls)).c_str(),
               is_gating(cls) ? "gate" : "aux ", t.checked[c], t.violations[c], t.worst_ratio[c]);
    }
    results.push_back({9, "per-class bound audit", t.gating == 0, d});
  }
  results.push_back(performance());

  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %2d %-45s %s  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.detail.c_str());
    all = all && r.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
