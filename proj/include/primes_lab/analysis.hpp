#pragma once

// Evaluation series (actual count vs. estimate), accuracy statistics and
// a two-parameter fit of count(x) ~ c * x / (ln x)^e.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <ranges>
#include <string>
#include <vector>

#include "primes_lab/arithmetic_core.hpp"
#include "primes_lab/congruence_monoid.hpp"
#include "primes_lab/gaussian_integers.hpp"
#include "primes_lab/quadratic_rings.hpp"

namespace primes_lab {

struct SeriesPoint {
  std::uint64_t x = 0;
  std::uint64_t actual = 0;
  double estimate = 0.0;
  double ratio = 0.0;
  std::optional<double> pct_err;  // absent when actual == 0
};

struct SeriesMetadata {
  std::string domain;  // e.g. "monoid d=3", "gaussian both-axes"
  std::string title;
};

struct CountSeries {
  std::vector<SeriesPoint> points;
  SeriesMetadata metadata;

  bool empty() const noexcept { return points.empty(); }
  std::size_t size() const noexcept { return points.size(); }
};

struct FitResult {
  double c = 0.0;
  double e = 0.0;
  double rms_rel_err = 0.0;

  bool operator==(const FitResult&) const = default;
};

/// Anything answering "how many primes up to x".
template <class C>
concept CountingCensus = requires(const C& census, std::uint64_t x) {
  { census.count_up_to(x) } -> std::convertible_to<std::uint64_t>;
};

inline double ratio_R(std::uint64_t actual, double estimate) {
  if (!(estimate > 0.0)) throw std::invalid_argument("ratio_R: estimate must be positive");
  return static_cast<double>(actual) / estimate;
}

inline std::optional<double> percent_error(std::uint64_t actual, double estimate) {
  if (actual == 0) return std::nullopt;
  const double a = static_cast<double>(actual);
  return 100.0 * std::abs(a - estimate) / a;
}

inline SeriesPoint make_point(std::uint64_t x, std::uint64_t actual, double estimate) {
  return {x, actual, estimate, ratio_R(actual, estimate), percent_error(actual, estimate)};
}

/// Running mean of percentage errors; shared by the materialized and
/// streaming paths so both sum in the same order.
class MapeAccumulator {
public:
  void add(const std::optional<double>& pct) {
    if (!pct) return;
    sum_ += *pct;
    ++n_;
  }
  std::uint64_t count() const noexcept { return n_; }
  double value() const {
    if (n_ == 0) throw std::invalid_argument("mape: no points with actual >= 1");
    return sum_ / static_cast<double>(n_);
  }

private:
  double sum_ = 0.0;
  std::uint64_t n_ = 0;
};

namespace detail {

template <std::ranges::input_range Grid, class Visit>
void walk_grid(Grid&& grid, Visit&& visit) {
  bool any = false;
  std::uint64_t prev = 0;
  for (auto&& raw : grid) {
    const auto x = static_cast<std::uint64_t>(raw);
    if (any && x <= prev) throw std::invalid_argument("series grid must be strictly increasing");
    if (x > kMaxExactDouble) throw std::invalid_argument("series grid point exceeds 2^53");
    visit(x);
    prev = x;
    any = true;
  }
  if (!any) throw std::invalid_argument("series grid is empty");
}

} // namespace detail

template <CountingCensus Census, class Estimator, std::ranges::input_range Grid>
CountSeries build_series(const Census& census, Estimator&& estimator, Grid&& grid,
                         SeriesMetadata metadata = {}) {
  CountSeries series;
  series.metadata = std::move(metadata);
  if constexpr (std::ranges::sized_range<Grid>) series.points.reserve(std::ranges::size(grid));
  detail::walk_grid(std::forward<Grid>(grid), [&](std::uint64_t x) {
    series.points.push_back(
        make_point(x, census.count_up_to(x), estimator(static_cast<double>(x))));
  });
  return series;
}

inline double mape(const CountSeries& series) {
  MapeAccumulator acc;
  for (const auto& p : series.points) acc.add(p.pct_err);
  return acc.value();
}

/// mape(build_series(census, estimator, grid)) without materializing the series.
template <CountingCensus Census, class Estimator, std::ranges::input_range Grid>
double mape_over(const Census& census, Estimator&& estimator, Grid&& grid) {
  MapeAccumulator acc;
  detail::walk_grid(std::forward<Grid>(grid), [&](std::uint64_t x) {
    acc.add(make_point(x, census.count_up_to(x), estimator(static_cast<double>(x))).pct_err);
  });
  return acc.value();
}

/// Arithmetic progression first, first + step, ... (count terms).
struct Grid {
  std::uint64_t first = 1;
  std::uint64_t step = 1;
  std::uint64_t count = 0;

  std::uint64_t last() const noexcept { return first + (count - 1) * step; }

  auto view() const {
    return std::views::iota(std::uint64_t{0}, count) |
           std::views::transform([f = first, s = step](std::uint64_t i) { return f + i * s; });
  }

  /// The points up to and including x.
  Grid truncated(std::uint64_t x) const {
    if (count == 0 || x < first) return {first, step, 0};
    return {first, step, std::min(count, (x - first) / step + 1)};
  }

  /// Every k-th point, always keeping the last one.
  std::vector<std::uint64_t> thinned(std::uint64_t every) const {
    std::vector<std::uint64_t> out;
    if (count == 0) return out;
    every = std::max<std::uint64_t>(every, 1);
    for (std::uint64_t i = 0; i < count; i += every) out.push_back(first + i * step);
    if (out.back() != last()) out.push_back(last());
    return out;
  }
};

namespace detail {

// First x in [lo, hi] (stepping by `step`) with count >= 1; counts are monotone.
template <CountingCensus Census>
Grid grid_from_first_prime(const Census& census, std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t step) {
  if (hi < lo || census.count_up_to(hi) == 0) return {lo, step, 0};
  std::uint64_t left = 0, right = (hi - lo) / step;  // answer index in [left, right]
  while (left < right) {
    const std::uint64_t mid = left + (right - left) / 2;
    if (census.count_up_to(lo + mid * step) >= 1) right = mid;
    else left = mid + 1;
  }
  return {lo + left * step, step, (hi - lo) / step - left + 1};
}

} // namespace detail

/// Members of A_d, from the first monoid prime to the limit.
inline Grid default_grid(const MonoidCensus& census) {
  const std::uint64_t last = largest_element(census.params());
  return detail::grid_from_first_prime(census, 1, last, census.d());
}

/// Integer norms from the first Gaussian prime to the norm limit.
inline Grid default_grid(const GaussianCensus& census) {
  return detail::grid_from_first_prime(census, 1, census.norm_limit(), 1);
}

inline Grid default_grid(const QuadCensus& census) {
  return detail::grid_from_first_prime(census, 1, census.region().bound, 1);
}

inline Grid default_grid(const PrimeTable& table) {
  return detail::grid_from_first_prime(table, 1, table.limit(), 1);
}

/// x / (d (ln x)^(1/d)) as a series estimator.
inline auto monoid_estimator(std::uint64_t d) {
  return [d](double x) { return estimate_pi_d(d, x); };
}

/// r^2 / (2 ln r) evaluated at r = sqrt(norm bound).
inline auto gaussian_estimator() {
  return [](double n) { return estimate_pi_G(std::sqrt(n)); };
}

/// c x / (ln x)^e.
inline auto power_log_estimator(double c, double e) {
  return [c, e](double x) {
    if (!(x > 1.0)) throw std::invalid_argument("power-log estimate needs x > 1");
    return c * x / std::pow(std::log(x), e);
  };
}

/// x / ln x.
inline auto classical_estimator() { return power_log_estimator(1.0, 1.0); }

/// Smallest grid point after which estimate >= actual for the rest of the
/// series, i.e. the point following the last one where actual > estimate.
inline std::optional<std::uint64_t> find_crossover(const CountSeries& series) {
  const auto& pts = series.points;
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (static_cast<double>(pts[i].actual) > pts[i].estimate) {
      if (i + 1 == pts.size()) return std::nullopt;
      return pts[i + 1].x;
    }
  }
  return std::nullopt;
}

inline constexpr std::size_t kMinFitPoints = 8;

/// Minimize the RMS relative error of c x / (ln x)^e over the series.
///
/// For fixed e the best c has the closed form sum(u) / sum(u^2) with
/// u = x / ((ln x)^e actual), clamped to [1e-3, 10]. That profile is
/// scanned on a coarse grid of e over [-2, 3] (step 0.1) and then refined
/// by golden-section search within one grid step of the best grid value.
inline FitResult fit_model(const CountSeries& series) {
  constexpr double c_min = 1e-3, c_max = 10.0, e_min = -2.0, e_max = 3.0;
  constexpr int e_steps = 51;

  std::vector<double> log_x, log_log_x, log_y;
  for (const auto& p : series.points) {
    if (p.actual < 1 || p.x < 3) continue;
    const double lx = std::log(static_cast<double>(p.x));
    log_x.push_back(lx);
    log_log_x.push_back(std::log(lx));
    log_y.push_back(std::log(static_cast<double>(p.actual)));
  }
  const std::size_t n = log_x.size();
  if (n < kMinFitPoints)
    throw std::invalid_argument("fit_model: need at least 8 points with actual >= 1 and x >= 3, got " +
                                std::to_string(n));
  const double dn = static_cast<double>(n);

  auto u_at = [&](std::size_t i, double e) {
    return std::exp(log_x[i] - e * log_log_x[i] - log_y[i]);
  };
  auto best_c = [&](double e) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = u_at(i, e);
      s1 += u;
      s2 += u * u;
    }
    return std::clamp(s1 / s2, c_min, c_max);
  };
  auto sum_sq = [&](double c, double e) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = c * u_at(i, e) - 1.0;
      s += r * r;
    }
    return s;
  };
  auto profile = [&](double e) { return sum_sq(best_c(e), e); };

  double grid_e = e_min;
  double grid_obj = std::numeric_limits<double>::infinity();
  for (int j = 0; j < e_steps; ++j) {
    const double e = e_min + (e_max - e_min) * j / (e_steps - 1);
    const double obj = profile(e);
    if (obj < grid_obj) {
      grid_obj = obj;
      grid_e = e;
    }
  }

  const double step = (e_max - e_min) / (e_steps - 1);
  double lo = std::max(e_min, grid_e - step), hi = std::min(e_max, grid_e + step);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
  double f1 = profile(m1), f2 = profile(m2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - phi * (hi - lo);
      f1 = profile(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + phi * (hi - lo);
      f2 = profile(m2);
    }
  }
  const double e = (lo + hi) / 2.0;
  const double c = best_c(e);
  return {c, e, std::sqrt(sum_sq(c, e) / dn)};
}

} // namespace primes_lab
