#pragma once

// One-row summaries of monoid censuses and Gaussian MAPE checkpoints.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "primes_lab/analysis.hpp"

namespace primes_lab {

/// Moduli and bound of the reference monoid table.
inline constexpr std::array<std::uint64_t, 8> kReferenceModuli{3, 5, 7, 9, 11, 13, 21, 50};
inline constexpr std::uint64_t kReferenceMonoidLimit = 10'000;

/// Norm bounds of the reference Gaussian MAPE table.
inline constexpr std::array<std::uint64_t, 5> kReferenceNormBounds{
    1'000, 10'000, 100'000, 1'000'000, 10'000'000};

/// Where the summary estimate is evaluated.
enum class EvalAt {
  limit,    // at the census limit x
  largest,  // at the largest element of A_d <= x
};

struct MonoidSummary {
  std::uint64_t d = 0;
  std::uint64_t largest_element = 0;
  std::uint64_t actual_count = 0;
  double estimate = 0.0;
  double r_d = 0.0;
  double abs_r_minus_1 = 0.0;
  double mape_pct = 0.0;
  std::optional<std::uint64_t> crossover;
};

struct GaussianMapeRow {
  std::uint64_t norm_bound = 0;
  double mape_pct = 0.0;
};

/// Summary of an existing census. MAPE runs over the default grid.
inline MonoidSummary summarize(const MonoidCensus& census, EvalAt eval_at) {
  MonoidSummary s;
  s.d = census.d();
  s.largest_element = largest_element(census.params());
  s.actual_count = census.total();
  const std::uint64_t at = eval_at == EvalAt::largest ? s.largest_element : census.limit();
  s.estimate = estimate_pi_d(s.d, static_cast<double>(at));
  s.r_d = ratio_R(s.actual_count, s.estimate);
  s.abs_r_minus_1 = std::abs(s.r_d - 1.0);
  const Grid grid = default_grid(census);
  const auto series = build_series(census, monoid_estimator(s.d), grid.view());
  s.mape_pct = mape(series);
  s.crossover = find_crossover(series);
  return s;
}

inline std::vector<MonoidSummary> reference_monoid_table(const PrimeTable& table) {
  std::vector<MonoidSummary> rows;
  for (std::uint64_t d : kReferenceModuli) {
    const auto census = monoid_census({d, kReferenceMonoidLimit}, table);
    rows.push_back(summarize(census, EvalAt::largest));
  }
  return rows;
}

/// MAPE of r^2 / (2 ln r) over every integer norm up to each bound.
/// The census must reach the largest bound.
inline std::vector<GaussianMapeRow> gaussian_mape_table(
    const GaussianCensus& census,
    const std::vector<std::uint64_t>& bounds = {kReferenceNormBounds.begin(),
                                                kReferenceNormBounds.end()}) {
  const Grid full = default_grid(census);
  std::vector<GaussianMapeRow> rows;
  for (std::uint64_t bound : bounds) {
    if (bound > census.norm_limit())
      throw std::invalid_argument("gaussian_mape_table: bound exceeds census norm limit");
    rows.push_back({bound, mape_over(census, gaussian_estimator(), full.truncated(bound).view())});
  }
  return rows;
}

} // namespace primes_lab
