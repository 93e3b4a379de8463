#pragma once

// Batch command-line front end. One subcommand per invocation; every run
// writes its declared CSV/SVG artifacts plus a JSON summary with the
// echoed configuration, versions and timings. Exit codes: 0 success,
// 1 domain error, 2 usage error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexwave/atlas.hpp"
#include "hexwave/io.hpp"
#include "hexwave/report.hpp"
#include "hexwave/sieve.hpp"
#include "hexwave/svg.hpp"
#include "hexwave/version.hpp"
#include "hexwave/xray.hpp"
#include "hexwave/zeta.hpp"

namespace hexwave::cli {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string subcommand;
  fs::path out_dir = ".";
  bool emit_csv = true;
  bool emit_svg = true;
  json params;
};

namespace detail {

inline std::pair<double, double> parse_range(const std::string& s, const char* flag) {
  auto pos = s.find(':');
  if (pos == std::string::npos)
    throw CLI::ValidationError(std::string(flag) + ": expected A:B");
  try {
    double a = std::stod(s.substr(0, pos)), b = std::stod(s.substr(pos + 1));
    if (!(a < b)) throw CLI::ValidationError(std::string(flag) + ": need A < B");
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(std::string(flag) + ": expected numbers A:B");
  }
}

inline void write_summary(const RunConfig& cfg, const json& results, double seconds,
                          const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "hexwave";
  j["version"] = hexwave::version;
  j["subcommand"] = cfg.subcommand;
  j["params"] = cfg.params;
  j["outputs"] = outputs;
  j["seconds"] = seconds;
  j["results"] = results;
  std::ofstream out(cfg.out_dir / (cfg.subcommand + "_summary.json"), std::ios::binary);
  out << j.dump(2) << "\n";
}

inline const char* seq_name(SeqId s) { return to_string(s); }

}  // namespace detail

inline int run_sieve(RunConfig& cfg, u64 limit, u64 segment_size, unsigned threads) {
  auto t0 = std::chrono::steady_clock::now();
  SieveResult res = primes_up_to(limit, segment_size, threads);
  std::vector<std::string> outputs;
  if (cfg.emit_csv) {
    CsvWriter primes(cfg.out_dir / "primes.csv", "p");
    for (u64 p : res.primes) primes.row(p);
    outputs.push_back("primes.csv");
    if (res.stats.marks_retained) {
      CsvWriter marks(cfg.out_dir / "marks.csv", "value,x,cofactor,branch,seq");
      for (const auto& m : res.marks)
        marks.row(m.value, m.x, m.cofactor, m.branch, detail::seq_name(seq_of_value(m.value)));
      outputs.push_back("marks.csv");
    }
  }
  json results;
  results["limit"] = res.limit;
  results["prime_count"] = res.primes.size();
  results["mark_count"] = res.marks.size();
  results["segment_size"] = segment_size;
  // the defining set formulas use unions of the two wave branches over
  // SQ1 u SQ2; written with intersections in the source material, which
  // is empty on disjoint sequences, so the union reading is implemented
  results["set_convention"] =
      "primes = {2,3} u ((SQ1 u SQ2) \\ marked); marked = union over waves of both branches";
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_summary(cfg, results, secs, outputs);
  return 0;
}

inline int run_atlas(RunConfig& cfg, int host, u64 limit, int table, u64 factor) {
  auto t0 = std::chrono::steady_clock::now();
  const SeqId host_id = host == 1 ? SeqId::SQ1 : SeqId::SQ2;
  std::vector<std::string> outputs;
  DerivationGraph graph = build_derivation_graph(host_id, limit);
  if (cfg.emit_csv) {
    CsvWriter gcsv(cfg.out_dir / "atlas_graph.csv", "parent,child,class,origin_value");
    for (const auto& n : graph.nodes)
      gcsv.row(n.parent ? to_string(*n.parent) : detail::seq_name(host_id), to_string(n.name),
               to_string(n.cls), n.origin_value);
    outputs.push_back("atlas_graph.csv");
  }
  json results;
  results["host"] = detail::seq_name(host_id);
  results["limit"] = limit;
  results["node_count"] = graph.nodes.size();
  if (table != 0) {
    TableKind kind;
    switch (table) {
      case 1: kind = TableKind::table1; break;
      case 3: kind = TableKind::table3; break;
      case 4: kind = TableKind::table4; break;
      case 5: kind = TableKind::table5; break;
      case 7: kind = TableKind::table7; break;
      default: throw std::domain_error("atlas: --table must be one of 1,3,4,5,7");
    }
    AtlasTable tbl = emit_table(kind, {host_id, factor, limit});
    if (cfg.emit_csv) {
      CsvWriter tcsv(cfg.out_dir / "atlas_table.csv", "value,host,path,label,class");
      for (const auto& r : tbl.rows)
        tcsv.row(r.value, detail::seq_name(r.host), r.path, r.label, r.cls);
      outputs.push_back("atlas_table.csv");
    }
    results["table"] = table;
    results["table_rows"] = tbl.rows.size();
  }
  CoverageReport cov = coverage_check(host_id, limit);
  results["coverage"] = {{"members_checked", cov.members_checked},
                         {"composites", cov.composites},
                         {"uncovered", cov.uncovered.size()},
                         {"covered_only_deeper", cov.covered_only_deeper.size()}};
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_summary(cfg, results, secs, outputs);
  return 0;
}

inline int run_xray(RunConfig& cfg, double t_max, double sigma_lo, double sigma_hi,
                    double resolution, unsigned threads) {
  XrayOptions opt;
  opt.t_max = t_max;
  opt.sigma_lo = sigma_lo;
  opt.sigma_hi = sigma_hi;
  opt.resolution = resolution;
  opt.threads = threads;
  XrayReport rep = xray_report(opt);
  std::vector<std::string> outputs;
  if (cfg.emit_csv) {
    CsvWriter csv(cfg.out_dir / "xray.csv", "label,parity,escapes,asym_index,sq_class,t_at_reference");
    for (const auto& lr : rep.labels)
      csv.row(lr.label, to_string(lr.parity), int(lr.escapes),
              lr.asym_index ? std::to_string(*lr.asym_index) : std::string(),
              lr.sq ? detail::seq_name(*lr.sq) : "", lr.t_ref);
    outputs.push_back("xray.csv");
  }
  if (cfg.emit_svg) {
    GridSpec display = rep.grid;  // picture covers [0, t_max]; strips of 40 when it divides
    display.t_hi = t_max;
    std::ofstream svg(cfg.out_dir / "xray.svg", std::ios::binary);
    svg << render_strip_svg(rep.curves, display, rep.numbering, rep.zeros, sigma_hi);
    outputs.push_back("xray.svg");
  }
  json results;
  results["t_max"] = rep.t_max;
  results["curves"] = rep.curves.size();
  results["crossings"] = rep.numbering.crossings.size();
  results["gaps"] = rep.gaps.size();
  results["alternation_violations"] = rep.numbering.alternation_violations;
  results["zero_count"] = rep.zeros.size();
  results["sq3_escaping_measured"] = rep.sq3.measured;
  results["sq3_reference_expected"] = rep.sq3.expected;
  results["sq3_missing"] = rep.sq3.missing;
  results["sq3_extra"] = rep.sq3.extra;
  results["family_complete"] = rep.family.complete;
  results["family_max_m"] = rep.family.max_m;
  results["coverage_note"] = rep.coverage_note;
  if (rep.parallel_lines.labels_found) {
    results["parallel_lines"] = {{"lo", rep.parallel_lines.lo_label},
                                 {"hi", rep.parallel_lines.hi_label},
                                 {"cutter", rep.parallel_lines.cutter_label},
                                 {"thin_loops", rep.parallel_lines.thin_loops},
                                 {"loops_cut", rep.parallel_lines.loops_cut_by_cutter},
                                 {"matches_description", rep.parallel_lines.matches_description}};
  }
  detail::write_summary(cfg, results, rep.seconds, outputs);
  return 0;
}

inline int run_argand(RunConfig& cfg, double sigma, double t_lo, double t_hi, double step) {
  auto t0 = std::chrono::steady_clock::now();
  ArgandPath path = argand_path(sigma, t_lo, t_hi, step);
  std::vector<std::string> outputs;
  if (cfg.emit_csv) {
    CsvWriter csv(cfg.out_dir / "argand.csv", "t,re,im");
    for (size_t i = 0; i < path.t.size(); ++i)
      csv.row(path.t[i], path.z[i].real(), path.z[i].imag());
    outputs.push_back("argand.csv");
  }
  if (cfg.emit_svg) {
    std::vector<double> xs, ys;
    for (const auto& z : path.z) { xs.push_back(z.real()); ys.push_back(z.imag()); }
    std::ofstream svg(cfg.out_dir / "argand.svg", std::ios::binary);
    svg << render_xy_svg(xs, ys, "argand path, sigma = " + format_double(sigma));
    outputs.push_back("argand.svg");
  }
  json results;
  results["sigma"] = sigma;
  results["samples"] = path.t.size();
  results["origin_approaches"] = path.origin_approaches;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_summary(cfg, results, secs, outputs);
  return 0;
}

inline int run_phase(RunConfig& cfg, double sigma, double t_lo, double t_hi, double step) {
  auto t0 = std::chrono::steady_clock::now();
  PhaseTrace tr = phase_trace(sigma, t_lo, t_hi, step);
  std::vector<std::string> outputs;
  if (cfg.emit_csv) {
    CsvWriter csv(cfg.out_dir / "phase.csv", "t,theta,jump_flag");
    size_t jk = 0;
    for (size_t i = 0; i < tr.t.size(); ++i) {
      int flag = 0;
      while (jk < tr.jumps.size() && tr.jumps[jk] <= tr.t[i]) { flag = 1; ++jk; }
      csv.row(tr.t[i], tr.theta[i], flag);
    }
    outputs.push_back("phase.csv");
  }
  if (cfg.emit_svg) {
    std::ofstream svg(cfg.out_dir / "phase.svg", std::ios::binary);
    svg << render_xy_svg(tr.t, tr.theta, "unwrapped arg zeta, sigma = " + format_double(sigma));
    outputs.push_back("phase.svg");
  }
  json results;
  results["sigma"] = sigma;
  results["samples"] = tr.t.size();
  results["jumps"] = tr.jumps;
  results["pi_like_steps"] = tr.pi_like_steps;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_summary(cfg, results, secs, outputs);
  return 0;
}

inline int run_zeros(RunConfig& cfg, double t_lo, double t_hi) {
  auto t0 = std::chrono::steady_clock::now();
  ZeroList zl = find_zeros(t_lo, t_hi);
  std::vector<std::string> outputs;
  if (cfg.emit_csv) {
    CsvWriter csv(cfg.out_dir / "zeros.csv", "t_zero,bracket_lo,bracket_hi");
    for (const auto& z : zl.zeros) csv.row(z.t, z.lo, z.hi);
    outputs.push_back("zeros.csv");
  }
  json results;
  results["count"] = zl.zeros.size();
  results["theta_estimate"] = zl.theta_estimate;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail::write_summary(cfg, results, secs, outputs);
  return 0;
}

inline int run(int argc, const char* const* argv) {
  CLI::App app{"wave-model sieve and zeta level-curve toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_dir;
  if (const char* env = std::getenv("HEXWAVE_OUT")) out_dir = env;
  std::vector<std::string> emit = {"csv", "svg"};
  app.add_option("--out", out_dir, "output directory (default: $HEXWAVE_OUT or .)");
  app.add_option("--emit", emit, "formats to write: csv svg")->delimiter(',');

  auto* sieve = app.add_subcommand("sieve", "wave sieve: primes and composite marks");
  u64 limit = 1000000;
  u64 segment_size = 1u << 16;
  unsigned threads = 1;
  sieve->add_option("--limit", limit, "upper bound")->required();
  sieve->add_option("--segment-size", segment_size, "wheel positions per segment");
  sieve->add_option("--threads", threads, "worker threads");

  auto* atlas = app.add_subcommand("atlas", "sub-sequence derivation graph and tables");
  int host = 1;
  u64 atlas_limit = 1000;
  int table = 0;
  u64 factor = 5;
  atlas->add_option("--host", host, "host sequence: 1 or 2")->required()->check(CLI::Range(1, 2));
  atlas->add_option("--limit", atlas_limit, "value bound")->required();
  atlas->add_option("--table", table, "emit a table: 1, 3, 4, 5 or 7");
  atlas->add_option("--factor", factor, "periodic factor for --table 7");

  auto* xray = app.add_subcommand("xray", "level-curve topography and line numbering");
  double t_max = 160.0;
  std::string sigma_range = "-1:2";
  double resolution = 1.0;
  unsigned xthreads = 1;
  xray->add_option("--t-max", t_max, "trace up to this height")->required();
  xray->add_option("--sigma", sigma_range, "display strip A:B");
  xray->add_option("--resolution", resolution, "grid density multiplier");
  xray->add_option("--threads", xthreads, "worker threads");

  auto* argand = app.add_subcommand("argand", "zeta path in the complex plane");
  auto* phase = app.add_subcommand("phase", "unwrapped phase along a vertical line");
  double sigma = 0.5, step = 0.01;
  std::string t_range = "0:50";
  for (auto* sub : {argand, phase}) {
    sub->add_option("--sigma", sigma, "real part")->required();
    sub->add_option("--t", t_range, "range A:B")->required();
    sub->add_option("--step", step, "sample step")->required();
  }

  auto* zeros = app.add_subcommand("zeros", "critical-line zeros by Hardy Z sign changes");
  std::string zrange = "0:50";
  zeros->add_option("--t", zrange, "range A:B")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.out_dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  cfg.emit_csv = std::find(emit.begin(), emit.end(), "csv") != emit.end();
  cfg.emit_svg = std::find(emit.begin(), emit.end(), "svg") != emit.end();

  try {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!fs::is_directory(cfg.out_dir)) {
      std::cerr << "hexwave: output directory not writable: " << cfg.out_dir << "\n";
      return 1;
    }
    if (app.got_subcommand(sieve)) {
      cfg.subcommand = "sieve";
      cfg.params = {{"limit", limit}, {"segment_size", segment_size}, {"threads", threads}};
      return run_sieve(cfg, limit, segment_size, threads);
    }
    if (app.got_subcommand(atlas)) {
      cfg.subcommand = "atlas";
      cfg.params = {{"host", host}, {"limit", atlas_limit}, {"table", table}, {"factor", factor}};
      return run_atlas(cfg, host, atlas_limit, table, factor);
    }
    if (app.got_subcommand(xray)) {
      if (!(t_max > 0.0)) throw CLI::ValidationError("xray: --t-max must be positive");
      auto [slo, shi] = detail::parse_range(sigma_range, "--sigma");
      cfg.subcommand = "xray";
      cfg.params = {{"t_max", t_max}, {"sigma", sigma_range}, {"resolution", resolution},
                    {"threads", xthreads}};
      return run_xray(cfg, t_max, slo, shi, resolution, xthreads);
    }
    if (app.got_subcommand(argand)) {
      auto [a, b] = detail::parse_range(t_range, "--t");
      cfg.subcommand = "argand";
      cfg.params = {{"sigma", sigma}, {"t", t_range}, {"step", step}};
      return run_argand(cfg, sigma, a, b, step);
    }
    if (app.got_subcommand(phase)) {
      auto [a, b] = detail::parse_range(t_range, "--t");
      cfg.subcommand = "phase";
      cfg.params = {{"sigma", sigma}, {"t", t_range}, {"step", step}};
      return run_phase(cfg, sigma, a, b, step);
    }
    if (app.got_subcommand(zeros)) {
      auto [a, b] = detail::parse_range(zrange, "--t");
      cfg.subcommand = "zeros";
      cfg.params = {{"t", zrange}};
      return run_zeros(cfg, a, b);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "hexwave: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hexwave: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hexwave::cli
