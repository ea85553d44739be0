#pragma once

// Command-line front end: monoid, gauss, quad, fit, table1, table2.
//
// Exit codes: 0 success, 2 argument error, 3 resource guard, 4 I/O.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <new>
#include <ostream>
#include <string>
#include <vector>

#include "primes_lab/analysis.hpp"
#include "primes_lab/reporting.hpp"
#include "primes_lab/summaries.hpp"

namespace primes_lab {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitResource = 3,
  kExitIo = 4,
};

inline constexpr std::uint64_t kDefaultMaxLimit = 100'000'000;
inline constexpr const char* kMaxLimitEnv = "PRIMES_LAB_MAX_LIMIT";

/// Largest census limit the CLI accepts: PRIMES_LAB_MAX_LIMIT if set to a
/// positive integer, else 10^8; never above the sieve guard.
inline std::uint64_t cli_max_limit() {
  std::uint64_t guard = kDefaultMaxLimit;
  if (const char* env = std::getenv(kMaxLimitEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) guard = v;
  }
  return std::min(guard, kMaxSieveLimit);
}

struct RunConfig {
  std::string subcommand;
  std::int64_t d = 0;
  std::int64_t limit = 0;  // monoid limit, gauss norm limit, quad bound, fit limit
  std::string eval_at = "limit";
  std::string region = "norm";
  std::string domain = "monoid";
  bool dedupe_axes = false;
  std::uint64_t grid_step = 1;
  std::string csv_path;
  std::string summary_csv_path;
  std::string svg_path;
  std::string svg_dir;
};

namespace cli_detail {

inline std::uint64_t checked_limit(std::int64_t value, const char* name) {
  if (value < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
  const auto v = static_cast<std::uint64_t>(value);
  if (v > cli_max_limit())
    throw limit_exceeded(std::string(name) + " " + std::to_string(v) + " exceeds resource guard " +
                         std::to_string(cli_max_limit()) + " (set " + kMaxLimitEnv +
                         " to raise it)");
  return v;
}

inline std::uint64_t monoid_modulus(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("--d must be >= 2 for a congruence monoid, got " +
                                         std::to_string(d));
  return static_cast<std::uint64_t>(d);
}

inline AxisConvention convention(const RunConfig& cfg) {
  return cfg.dedupe_axes ? AxisConvention::dedupe_axes : AxisConvention::both_axes;
}

inline RegionKind region_kind(const RunConfig& cfg) {
  return cfg.region == "euclidean" ? RegionKind::euclidean_ball : RegionKind::norm_ball;
}

template <class Census, class Estimator>
CountSeries output_series(const Census& census, const Grid& grid, Estimator&& estimator,
                          SeriesMetadata meta, std::uint64_t step) {
  if (step <= 1) return build_series(census, estimator, grid.view(), std::move(meta));
  return build_series(census, estimator, grid.thinned(step), std::move(meta));
}

inline void emit(const CountSeries& series, const RunConfig& cfg, std::ostream& out) {
  if (!cfg.csv_path.empty()) {
    write_csv(series, cfg.csv_path);
    out << "wrote series csv " << cfg.csv_path << " (" << series.size() << " rows)\n";
  }
  if (!cfg.svg_path.empty()) {
    render_svg(series, cfg.svg_path);
    out << "wrote svg " << cfg.svg_path << '\n';
  }
}

inline std::string monoid_title(std::uint64_t d) {
  return "Monoid primes in A_" + std::to_string(d) + ": actual vs x/(" + std::to_string(d) +
         " (ln x)^(1/" + std::to_string(d) + "))";
}

inline CountSeries monoid_series(const MonoidCensus& census, std::uint64_t step) {
  const std::uint64_t d = census.d();
  return output_series(census, default_grid(census), monoid_estimator(d),
                       {"monoid d=" + std::to_string(d), monoid_title(d)}, step);
}

inline std::string summary_line(const MonoidSummary& s) {
  std::string line = "monoid d=" + std::to_string(s.d) +
                     " largest_element=" + std::to_string(s.largest_element) +
                     " count=" + std::to_string(s.actual_count) +
                     " estimate=" + format_fixed(s.estimate, 2) + " R_d=" + format_fixed(s.r_d, 5) +
                     " abs_R_minus_1=" + format_fixed(s.abs_r_minus_1, 5) +
                     " mape_pct=" + format_fixed(s.mape_pct, 2) + " crossover=";
  line += s.crossover ? std::to_string(*s.crossover) : std::string("none");
  return line;
}

inline int run_monoid(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t d = monoid_modulus(cfg.d);
  const std::uint64_t limit = checked_limit(cfg.limit, "--limit");
  const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
  const auto census = monoid_census({d, limit}, table);
  if (census.total() == 0) {
    out << "monoid d=" << d << " limit=" << limit << " count=0 (no monoid primes)\n";
    return kExitOk;
  }
  const auto summary =
      summarize(census, cfg.eval_at == "largest" ? EvalAt::largest : EvalAt::limit);
  out << summary_line(summary) << " limit=" << limit << " eval_at=" << cfg.eval_at << '\n';
  if (!cfg.summary_csv_path.empty()) {
    write_csv(std::vector<MonoidSummary>{summary}, cfg.summary_csv_path);
    out << "wrote summary csv " << cfg.summary_csv_path << '\n';
  }
  emit(monoid_series(census, cfg.grid_step), cfg, out);
  return kExitOk;
}

inline std::string gauss_title(AxisConvention c) {
  return "Gaussian primes (" + std::string(to_string(c)) + ") in norm circles vs r^2/(2 ln r)";
}

inline int run_gauss(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t limit = checked_limit(cfg.limit, "--norm-limit");
  const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
  const auto census = gaussian_census(limit, convention(cfg), table);
  out << "gauss norm_limit=" << limit << " convention=" << to_string(census.convention())
      << " count=" << census.total();
  if (limit < 2 || census.total() == 0) {
    out << '\n';
    return kExitOk;
  }
  const Grid grid = default_grid(census);
  const double estimate = estimate_pi_G(std::sqrt(static_cast<double>(limit)));
  out << " estimate=" << format_fixed(estimate, 2)
      << " ratio=" << format_fixed(ratio_R(census.total(), estimate), 5)
      << " mape_pct=" << format_fixed(mape_over(census, gaussian_estimator(), grid.view()), 3)
      << '\n';
  if (!cfg.csv_path.empty() || !cfg.svg_path.empty())
    emit(output_series(census, grid, gaussian_estimator(),
                       {"gaussian " + std::string(to_string(census.convention())),
                        gauss_title(census.convention())},
                       cfg.grid_step),
         cfg, out);
  return kExitOk;
}

inline QuadCensus make_quad_census(const RunConfig& cfg) {
  validate_ring(cfg.d);
  if (cfg.limit < 1) throw std::invalid_argument("--bound must be >= 1");
  const RegionSpec region{region_kind(cfg), static_cast<std::uint64_t>(cfg.limit)};
  if (region.bound > kMaxQuadBound)
    throw limit_exceeded("--bound " + std::to_string(region.bound) +
                         " exceeds the 10^6 brute-force scale");
  if (cfg.d > kMaxQuadCensusD) throw limit_exceeded("--d exceeds 10^6");
  const std::uint64_t max_norm = region.kind == RegionKind::norm_ball
                                     ? region.bound
                                     : region.bound * static_cast<std::uint64_t>(cfg.d);
  const auto table = sieve_primes(std::max<std::uint64_t>(isqrt(max_norm), 2));
  return quad_census(cfg.d, region, table);
}

inline std::string quad_domain(const QuadCensus& census) {
  return "quadratic " + census.label() + " " + std::string(to_string(census.region().kind)) +
         " irreducibles";
}

inline int run_quad(const RunConfig& cfg, std::ostream& out) {
  const auto census = make_quad_census(cfg);
  out << "quad ring=" << census.label() << " region=" << to_string(census.region().kind)
      << " bound=" << census.region().bound << " counting=irreducibles count=" << census.total();
  const Grid grid = default_grid(census);
  if (grid.count == 0) {
    out << '\n';
    return kExitOk;
  }
  // No conjectured formula exists for these rings; x / ln x is a reference curve.
  out << " reference=x/ln(x) mape_pct="
      << format_fixed(mape_over(census, classical_estimator(), grid.view()), 3) << '\n';
  emit(output_series(census, grid, classical_estimator(),
                     {quad_domain(census), "Irreducibles of " + census.label() + " (" +
                                               std::string(to_string(census.region().kind)) +
                                               ") vs x/ln x"},
                     cfg.grid_step),
       cfg, out);
  return kExitOk;
}

inline int run_fit(const RunConfig& cfg, std::ostream& out) {
  CountSeries series;
  std::string what;
  if (cfg.domain == "classical") {
    const std::uint64_t limit = checked_limit(cfg.limit, "--limit");
    const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
    series = output_series(table, default_grid(table), classical_estimator(),
                           {"classical", "pi(x)"}, cfg.grid_step);
    what = "classical limit=" + std::to_string(limit);
  } else if (cfg.domain == "monoid") {
    const std::uint64_t d = monoid_modulus(cfg.d);
    const std::uint64_t limit = checked_limit(cfg.limit, "--limit");
    const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
    series = monoid_series(monoid_census({d, limit}, table), cfg.grid_step);
    what = "monoid d=" + std::to_string(d) + " limit=" + std::to_string(limit);
  } else if (cfg.domain == "gauss") {
    const std::uint64_t limit = checked_limit(cfg.limit, "--limit");
    const auto table = sieve_primes(std::max<std::uint64_t>(limit, 2));
    const auto census = gaussian_census(limit, convention(cfg), table);
    series = output_series(census, default_grid(census), gaussian_estimator(),
                           {"gaussian " + std::string(to_string(census.convention())),
                            gauss_title(census.convention())},
                           cfg.grid_step);
    what = "gauss norm_limit=" + std::to_string(limit) + " convention=" +
           std::string(to_string(census.convention()));
  } else {
    const auto census = make_quad_census(cfg);
    series = output_series(census, default_grid(census), classical_estimator(),
                           {quad_domain(census), quad_domain(census)}, cfg.grid_step);
    what = "quad ring=" + census.label() + " region=" +
           std::string(to_string(census.region().kind)) + " bound=" +
           std::to_string(census.region().bound);
  }
  const FitResult fit = fit_model(series);
  out << "fit " << what << " model=c*x/(ln x)^e c=" << format_sig(fit.c, 6)
      << " e=" << format_sig(fit.e, 6) << " rms_rel_err=" << format_sig(fit.rms_rel_err, 6)
      << " points=" << series.size() << '\n';
  if (!cfg.csv_path.empty() || !cfg.svg_path.empty()) {
    CountSeries fitted;
    fitted.metadata = {series.metadata.domain + " fitted",
                       series.metadata.domain + ": actual vs " + format_sig(fit.c, 4) +
                           " x/(ln x)^" + format_sig(fit.e, 4)};
    const auto model = power_log_estimator(fit.c, fit.e);
    for (const auto& p : series.points)
      if (p.x >= 3) fitted.points.push_back(make_point(p.x, p.actual, model(static_cast<double>(p.x))));
    emit(fitted, cfg, out);
  }
  return kExitOk;
}

inline constexpr std::array<std::uint64_t, 4> kFigureModuli{3, 7, 13, 50};

inline int run_table1(const RunConfig& cfg, std::ostream& out) {
  const auto table = sieve_primes(kReferenceMonoidLimit);
  const auto rows = reference_monoid_table(table);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%4s %16s %12s %10s %9s %12s %9s\n", "d", "largest_element",
                "actual_count", "estimate", "R_d", "|R_d - 1|", "MAPE(%)");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%4llu %16llu %12llu %10.2f %9.5f %12.5f %9.2f\n",
                  static_cast<unsigned long long>(r.d),
                  static_cast<unsigned long long>(r.largest_element),
                  static_cast<unsigned long long>(r.actual_count), r.estimate, r.r_d,
                  r.abs_r_minus_1, r.mape_pct);
    out << buf;
  }
  if (!cfg.csv_path.empty()) {
    write_csv(rows, cfg.csv_path);
    out << "wrote table csv " << cfg.csv_path << '\n';
  }
  if (!cfg.svg_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.svg_dir, ec);
    if (ec) throw io_error("cannot create directory " + cfg.svg_dir + ": " + ec.message());
    for (std::uint64_t d : kFigureModuli) {
      const auto census = monoid_census({d, kReferenceMonoidLimit}, table);
      const auto path =
          (std::filesystem::path(cfg.svg_dir) / ("monoid_d" + std::to_string(d) + ".svg")).string();
      render_svg(monoid_series(census, 1), path);
      out << "wrote svg " << path << '\n';
    }
  }
  return kExitOk;
}

inline int run_table2(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t top = kReferenceNormBounds.back();
  const auto table = sieve_primes(top);
  const auto census = gaussian_census(top, convention(cfg), table);
  const auto rows = gaussian_mape_table(census);
  out << "norm_bound    mape_pct  (convention=" << to_string(census.convention()) << ")\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%10llu %11.3f\n", static_cast<unsigned long long>(r.norm_bound),
                  r.mape_pct);
    out << buf;
  }
  if (!cfg.csv_path.empty()) {
    write_csv(rows, cfg.csv_path);
    out << "wrote table csv " << cfg.csv_path << '\n';
  }
  if (!cfg.svg_path.empty()) {
    const Grid grid = default_grid(census);
    const auto series = build_series(census, gaussian_estimator(),
                                     grid.thinned(std::max<std::uint64_t>(1, grid.count / kSvgMaxPoints)),
                                     {"gaussian " + std::string(to_string(census.convention())),
                                      gauss_title(census.convention())});
    render_svg(series, cfg.svg_path);
    out << "wrote svg " << cfg.svg_path << '\n';
  }
  return kExitOk;
}

} // namespace cli_detail

/// Parse `args` (without the program name) and run one subcommand.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime censuses in congruence monoids, Gaussian integers and Z[sqrt(-d)]",
               "primes_lab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_outputs = [&cfg](CLI::App* sub) {
    sub->add_option("--csv", cfg.csv_path, "Write the evaluation series as CSV");
    sub->add_option("--svg", cfg.svg_path, "Render actual vs estimate as SVG");
    sub->add_option("--grid-step", cfg.grid_step,
                    "Keep every k-th series point in CSV/SVG output (statistics use all points)")
        ->check(CLI::PositiveNumber);
  };

  auto* monoid = app.add_subcommand("monoid", "Census of monoid primes in A_d = {n = 1 mod d}");
  monoid->add_option("--d", cfg.d, "Modulus d >= 2")->required();
  monoid->add_option("--limit", cfg.limit, "Inclusive census bound x")->required();
  monoid->add_option("--eval-at", cfg.eval_at, "Evaluate the summary estimate at the limit or the largest element of A_d")
      ->check(CLI::IsMember({"limit", "largest"}));
  monoid->add_option("--summary-csv", cfg.summary_csv_path, "Write the one-row summary CSV");
  add_outputs(monoid);

  auto* gauss = app.add_subcommand("gauss", "Census of first-quadrant Gaussian primes by norm");
  gauss->add_option("--norm-limit", cfg.limit, "Count points with a^2 + b^2 <= N")->required();
  gauss->add_flag("--dedupe-axes", cfg.dedupe_axes, "Count (q,0) but not (0,q) for inert q");
  add_outputs(gauss);

  auto* quad = app.add_subcommand("quad", "Census of irreducibles in Z[sqrt(-d)]");
  quad->add_option("--d", cfg.d, "Squarefree d >= 1")->required();
  quad->add_option("--bound", cfg.limit, "Region bound")->required();
  quad->add_option("--region", cfg.region, "norm: a^2 + d b^2 <= bound; euclidean: a^2 + b^2 <= bound")
      ->check(CLI::IsMember({"norm", "euclidean"}));
  add_outputs(quad);

  auto* fit = app.add_subcommand("fit", "Fit count(x) ~ c x / (ln x)^e to a census");
  fit->add_option("--domain", cfg.domain, "classical, monoid, gauss or quad")
      ->check(CLI::IsMember({"classical", "monoid", "gauss", "quad"}));
  fit->add_option("--d", cfg.d, "Modulus (monoid) or ring parameter (quad)");
  fit->add_option("--limit,--bound", cfg.limit, "Census limit, norm limit or region bound")->required();
  fit->add_option("--region", cfg.region, "Region for --domain quad")
      ->check(CLI::IsMember({"norm", "euclidean"}));
  fit->add_flag("--dedupe-axes", cfg.dedupe_axes, "Axis convention for --domain gauss");
  add_outputs(fit);

  auto* table1 = app.add_subcommand("table1", "Monoid summary for d in {3,5,7,9,11,13,21,50} at 10^4");
  table1->add_option("--csv", cfg.csv_path, "Write the summary table as CSV");
  table1->add_option("--svg-dir", cfg.svg_dir, "Write actual-vs-estimate charts for d = 3, 7, 13, 50");

  auto* table2 = app.add_subcommand("table2", "Gaussian MAPE at norm bounds 10^3 .. 10^7");
  table2->add_option("--csv", cfg.csv_path, "Write the MAPE table as CSV");
  table2->add_option("--svg", cfg.svg_path, "Render the norm-10^7 census chart");
  table2->add_flag("--dedupe-axes", cfg.dedupe_axes, "Count (q,0) but not (0,q) for inert q");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (monoid->parsed()) return cli_detail::run_monoid(cfg, out);
    if (gauss->parsed()) return cli_detail::run_gauss(cfg, out);
    if (quad->parsed()) return cli_detail::run_quad(cfg, out);
    if (fit->parsed()) return cli_detail::run_fit(cfg, out);
    if (table1->parsed()) return cli_detail::run_table1(cfg, out);
    if (table2->parsed()) return cli_detail::run_table2(cfg, out);
  } catch (const limit_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResource;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

} // namespace primes_lab
