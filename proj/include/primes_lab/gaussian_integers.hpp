#pragma once

// Gaussian primes in the closed first quadrant and their counts inside
// norm circles {a + bi : a^2 + b^2 <= n}.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "primes_lab/arithmetic_core.hpp"

namespace primes_lab {

struct GaussPoint {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  std::uint64_t norm() const noexcept { return a * a + b * b; }
  bool operator==(const GaussPoint&) const = default;
};

/// How the axis associates q and qi of an inert prime q = 3 (mod 4) are counted.
enum class AxisConvention {
  both_axes,    // every point with a, b >= 0: both (q, 0) and (0, q)
  dedupe_axes,  // only (q, 0)
};

inline std::string_view to_string(AxisConvention c) noexcept {
  return c == AxisConvention::both_axes ? "both-axes" : "dedupe-axes";
}

/// Standard classification against a rational prime table.
inline bool is_gaussian_prime(GaussPoint p, const PrimeTable& table) {
  if (p.a == 0 && p.b == 0) throw std::invalid_argument("is_gaussian_prime: zero is not classifiable");
  if (p.b == 0) return table.is_prime(p.a) && p.a % 4 == 3;
  if (p.a == 0) return table.is_prime(p.b) && p.b % 4 == 3;
  return table.is_prime(p.norm());
}

inline constexpr std::uint64_t kMaxBruteForceNorm = 1'000'000;

/// Irreducibility straight from the definition: not a unit, and no beta
/// with 1 < N(beta) < N(p) divides p. Every nonzero beta is an associate
/// of exactly one x + yi with x > 0, y >= 0, so only those are tried.
inline bool gaussian_brute_irreducible(GaussPoint p) {
  const std::uint64_t n = p.norm();
  if (n < 1 || n > kMaxBruteForceNorm)
    throw std::invalid_argument("gaussian_brute_irreducible: norm " + std::to_string(n) +
                                " outside [1, 10^6]");
  if (n == 1) return false;
  const auto a = static_cast<std::int64_t>(p.a);
  const auto b = static_cast<std::int64_t>(p.b);
  for (std::int64_t x = 1; x * x < static_cast<std::int64_t>(n); ++x) {
    for (std::int64_t y = 0; x * x + y * y < static_cast<std::int64_t>(n); ++y) {
      const std::int64_t m = x * x + y * y;
      if (m == 1) continue;
      // (a + bi)(x - yi) = (ax + by) + (bx - ay)i
      if ((a * x + b * y) % m == 0 && (b * x - a * y) % m == 0) return false;
    }
  }
  return true;
}

class GaussianCensus;
inline GaussianCensus gaussian_census(std::uint64_t norm_limit, AxisConvention convention,
                                      const PrimeTable& table);

/// Cumulative Gaussian-prime counts indexed by integer norm bound.
class GaussianCensus {
public:
  std::uint64_t norm_limit() const noexcept { return cumulative_.size() - 1; }
  AxisConvention convention() const noexcept { return convention_; }

  /// pi_G at radius sqrt(norm_bound), 1 <= norm_bound <= norm_limit.
  std::uint64_t count_up_to(std::uint64_t norm_bound) const {
    if (norm_bound < 1 || norm_bound > norm_limit())
      throw std::out_of_range("pi_G: norm bound " + std::to_string(norm_bound) +
                              " outside [1, " + std::to_string(norm_limit()) + "]");
    return cumulative_[norm_bound];
  }

  std::uint64_t total() const { return cumulative_.back(); }

private:
  friend GaussianCensus gaussian_census(std::uint64_t, AxisConvention, const PrimeTable&);

  GaussianCensus(AxisConvention convention, std::vector<std::uint32_t> cumulative)
      : convention_(convention), cumulative_(std::move(cumulative)) {}

  AxisConvention convention_;
  std::vector<std::uint32_t> cumulative_;  // [0, norm_limit]
};

inline constexpr std::uint64_t kMaxGaussianNormLimit = 0xFFFF'FFFFULL;

inline GaussianCensus gaussian_census(std::uint64_t norm_limit, AxisConvention convention,
                                      const PrimeTable& table) {
  if (norm_limit < 1) throw std::invalid_argument("gaussian_census: norm limit must be >= 1");
  if (norm_limit > kMaxGaussianNormLimit)
    throw limit_exceeded("gaussian_census: norm limit " + std::to_string(norm_limit) +
                         " exceeds 2^32 - 1");
  if (norm_limit > table.limit())
    throw std::invalid_argument("gaussian_census: prime table limit " +
                                std::to_string(table.limit()) + " below norm limit " +
                                std::to_string(norm_limit));

  std::vector<std::uint32_t> counts(norm_limit + 1, 0);
  const std::uint64_t max_b = isqrt(norm_limit);
  for (std::uint64_t b = 0; b <= max_b; ++b) {
    for (std::uint64_t a = (b == 0 ? 1 : 0); a * a + b * b <= norm_limit; ++a) {
      if (a == 0 && convention == AxisConvention::dedupe_axes) continue;
      const GaussPoint p{a, b};
      if (is_gaussian_prime(p, table)) ++counts[p.norm()];
    }
  }
  for (std::uint64_t n = 1; n <= norm_limit; ++n) counts[n] += counts[n - 1];
  return GaussianCensus(convention, std::move(counts));
}

inline std::uint64_t pi_G(const GaussianCensus& census, std::uint64_t norm_bound) {
  return census.count_up_to(norm_bound);
}

/// r^2 / (2 ln r).
inline double estimate_pi_G(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("estimate_pi_G: r must exceed 1");
  return r * r / (2.0 * std::log(r));
}

} // namespace primes_lab
