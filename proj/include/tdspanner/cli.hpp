#pragma once

// Command line front end. Exit codes: 0 success, 1 usage or input error,
// 2 certification failure (failed checks named on stderr).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdspanner/errors.hpp"
#include "tdspanner/generators.hpp"
#include "tdspanner/io.hpp"
#include "tdspanner/spanner.hpp"
#include "tdspanner/svg.hpp"
#include "tdspanner/verify.hpp"

namespace tdspanner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertification = 2;

namespace detail {

inline std::optional<double> parse_rotation(const std::string& s) {
  if (s == "auto") return std::nullopt;
  double v = 0;
  if (!parse_number(s, v) || !std::isfinite(v)) throw InvalidSpec("--rotate expects 'auto' or radians");
  return v;
}

inline std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    double v = 0;
    if (!parse_number(std::string_view(s).substr(start, end - start), v) || v < 1 || v > 1e9) {
      throw InvalidSpec("--sizes expects a comma-separated list of sizes");
    }
    out.push_back(static_cast<std::size_t>(std::llround(v)));
    start = end + 1;
  }
  return out;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded-degree plane spanners from the TD-Delaunay triangulation"};
  app.require_subcommand(1);

  struct {
    std::string input, output, rotate = "auto";
    bool naive = false;
  } build;
  auto* build_cmd = app.add_subcommand("build", "Build the spanner of a point set");
  build_cmd->add_option("--input", build.input, "Point file (.csv or .json)")->required();
  build_cmd->add_option("--output", build.output, "Graph file to write")->required();
  build_cmd->add_flag("--naive", build.naive, "Use the quadratic triangulation builder");
  build_cmd->add_option("--rotate", build.rotate, "'auto' or a fixed rotation in radians");

  struct {
    std::string points, graph, stats, baseline = "complete";
    bool bounds = false, charging = false, timing = false;
    unsigned threads = 0;
  } ver;
  auto* verify_cmd = app.add_subcommand("verify", "Certify a built spanner");
  verify_cmd->add_option("--points", ver.points, "Original point file")->required();
  verify_cmd->add_option("--graph", ver.graph, "Graph file")->required();
  verify_cmd->add_flag("--bounds", ver.bounds, "Audit per-edge reconstruction bounds");
  verify_cmd->add_flag("--charging", ver.charging, "Audit the sector charging");
  verify_cmd->add_option("--baseline", ver.baseline, "complete or td")
      ->check(CLI::IsMember({"complete", "td"}));
  verify_cmd->add_option("--stats", ver.stats, "Stats file to write");
  verify_cmd->add_flag("--timing", ver.timing, "Rebuild the spanner and record build_ms");
  verify_cmd->add_option("--threads", ver.threads, "Worker threads (0 = all cores)");

  struct {
    std::string kind, out;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double rho = 2.0;
    std::optional<std::size_t> rows, cols;
  } gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a point set");
  gen_cmd->add_option("--kind", gen.kind, "uniform|convex|grid|clustered|lower_bound_rect")->required();
  gen_cmd->add_option("--n", gen.n, "Number of points");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Point file to write")->required();
  gen_cmd->add_option("--rho", gen.rho, "Stretch parameter for lower_bound_rect");
  gen_cmd->add_option("--rows", gen.rows, "Grid rows");
  gen_cmd->add_option("--cols", gen.cols, "Grid columns");

  struct {
    std::string points, graph, out;
  } render;
  auto* render_cmd = app.add_subcommand("render", "Draw a spanner as SVG");
  render_cmd->add_option("--points", render.points, "Original point file")->required();
  render_cmd->add_option("--graph", render.graph, "Graph file")->required();
  render_cmd->add_option("--out", render.out, "SVG file to write")->required();

  struct {
    std::string sizes = "1e3,1e4,1e5";
    std::uint64_t seed = 1;
    std::size_t runs = 1;
  } bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the build on uniform inputs");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes");
  bench_cmd->add_option("--seed", bench.seed, "Random seed");
  bench_cmd->add_option("--runs", bench.runs, "Runs per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build_cmd) {
      const auto pts = read_points(build.input);
      BuildOptions opt;
      opt.method = build.naive ? BuildMethod::naive : BuildMethod::sweep;
      opt.rotation = detail::parse_rotation(build.rotate);
      const auto s = build_spanner(pts, opt);
      write_graph(build.output, to_graph_file(s));
      out << "n=" << s.size() << " m=" << s.edge_count()
          << " rotation_applied=" << format_double(s.rotation_applied()) << "\n";
      return kExitOk;
    }

    if (*verify_cmd) {
      const auto pts = read_points(ver.points);
      const auto file = read_graph(ver.graph);
      const auto s = spanner_from_file(pts, file);
      VerifyOptions opt;
      opt.bounds = ver.bounds;
      opt.charging = ver.charging;
      opt.baseline = ver.baseline == "td" ? Baseline::td : Baseline::complete;
      opt.stretch.threads = ver.threads;
      VerificationReport report;
      try {
        report = verify_spanner(s, opt);
      } catch (const Disconnected& e) {
        err << "certification failed: stretch (" << e.what() << ")\n";
        return kExitCertification;
      }
      double build_ms = 0.0;
      if (ver.timing) {
        BuildOptions bopt;
        bopt.rotation = file.rotation_applied;
        const auto t0 = std::chrono::steady_clock::now();
        (void)build_spanner(pts, bopt);
        build_ms = detail::elapsed_ms(t0);
      }
      if (!ver.stats.empty()) write_file(ver.stats, stats_to_json(report, build_ms));
      const auto& st = report.headline_stretch();
      out << "n=" << report.n << " m=" << report.m << " plane=" << (report.planarity.plane ? "yes" : "no")
          << " max_degree=" << report.degree.max_degree << " stretch=" << format_double(st.value) << " ("
          << st.p << "," << st.q << ")" << (st.sampled ? " sampled" : "") << "\n";
      const auto failures = report.failures();
      if (!failures.empty()) {
        for (const auto& f : failures) err << "certification failed: " << f << "\n";
        if (report.planarity.witness) {
          const auto& [a, b] = *report.planarity.witness;
          err << "crossing: (" << a.first << "," << a.second << ") x (" << b.first << "," << b.second
              << ")\n";
        }
        if (!report.charging_error.empty()) err << report.charging_error << "\n";
        return kExitCertification;
      }
      return kExitOk;
    }

    if (*gen_cmd) {
      GenSpec spec;
      spec.kind = parse_gen_kind(gen.kind);
      spec.n = gen.n;
      spec.seed = gen.seed;
      spec.rho = gen.rho;
      spec.rows = gen.rows;
      spec.cols = gen.cols;
      const auto pts = generate(spec);
      write_points(gen.out, pts);
      out << "wrote " << pts.size() << " points\n";
      return kExitOk;
    }

    if (*render_cmd) {
      const auto pts = read_points(render.points);
      const auto s = spanner_from_file(pts, read_graph(render.graph));
      write_svg(render.out, s);
      return kExitOk;
    }

    if (*bench_cmd) {
      const auto sizes = detail::parse_sizes(bench.sizes);
      out << "n,build_ms\n";
      for (std::size_t n : sizes) {
        const auto pts = generate({GenKind::uniform, n, bench.seed});
        double total = 0.0;
        for (std::size_t r = 0; r < std::max<std::size_t>(1, bench.runs); ++r) {
          const auto t0 = std::chrono::steady_clock::now();
          (void)build_spanner(pts);
          total += detail::elapsed_ms(t0);
        }
        char line[64];
        std::snprintf(line, sizeof line, "%zu,%.3f\n", n, total / static_cast<double>(std::max<std::size_t>(1, bench.runs)));
        out << line;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tdspanner
