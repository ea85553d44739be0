#pragma once

// Exact arithmetic in the imaginary quadratic rings Z[sqrt(-d)], d >= 1
// squarefree, and brute-force counting of irreducible elements.
//
// These are the literal rings {a + b sqrt(-d) : a, b in Z}. For d = 3 (mod 4)
// that is a proper suborder of the ring of integers; labels say so. Only
// irreducibility is decided: in rings without unique factorization an
// irreducible need not be prime (2 in Z[sqrt(-5)] divides 6 = (1 + s)(1 - s)
// but neither factor).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "primes_lab/arithmetic_core.hpp"

namespace primes_lab {

namespace detail {

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("quadratic ring: coordinate overflow");
  return r;
}
inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("quadratic ring: coordinate overflow");
  return r;
}
inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("quadratic ring: coordinate overflow");
  return r;
}

} // namespace detail

inline bool is_squarefree(std::uint64_t n) noexcept {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

/// Checks that d names a supported ring Z[sqrt(-d)].
inline void validate_ring(std::int64_t d) {
  if (d < 0)
    throw std::invalid_argument(
        "d = " + std::to_string(d) + " gives the real quadratic ring Z[sqrt(" +
        std::to_string(-d) +
        ")], which has infinitely many units; only imaginary rings Z[sqrt(-d)], d >= 1, "
        "are supported");
  if (d == 0) throw std::invalid_argument("d must be >= 1 (d = 0 is not a quadratic ring)");
  if (!is_squarefree(static_cast<std::uint64_t>(d)))
    throw std::invalid_argument("d = " + std::to_string(d) + " is not squarefree");
}

inline std::string ring_label(std::int64_t d) {
  std::string label = "Z[sqrt(-" + std::to_string(d) + ")]";
  if (d % 4 == 3) label += " (non-maximal order)";
  return label;
}

/// a + b sqrt(-d).
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t d = 1;

  static QuadInt make(std::int64_t a, std::int64_t b, std::int64_t d) {
    validate_ring(d);
    return QuadInt{a, b, d};
  }

  bool is_zero() const noexcept { return a == 0 && b == 0; }
  QuadInt conj() const { return {a, detail::checked_sub(0, b), d}; }
  bool operator==(const QuadInt&) const = default;
};

/// a^2 + d b^2.
inline std::int64_t quad_norm(const QuadInt& x) {
  using detail::checked_add;
  using detail::checked_mul;
  return checked_add(checked_mul(x.a, x.a), checked_mul(x.d, checked_mul(x.b, x.b)));
}

inline QuadInt quad_mul(const QuadInt& x, const QuadInt& y) {
  using namespace detail;
  if (x.d != y.d) throw std::invalid_argument("quad_mul: elements of different rings");
  return {checked_sub(checked_mul(x.a, y.a), checked_mul(x.d, checked_mul(x.b, y.b))),
          checked_add(checked_mul(x.a, y.b), checked_mul(y.a, x.b)), x.d};
}

/// q with q * y = x, if it exists in the ring.
inline std::optional<QuadInt> quad_divide_exact(const QuadInt& x, const QuadInt& y) {
  if (x.d != y.d) throw std::invalid_argument("quad_divide_exact: elements of different rings");
  if (y.is_zero()) throw std::invalid_argument("quad_divide_exact: division by zero");
  const std::int64_t n = quad_norm(y);
  const QuadInt t = quad_mul(x, y.conj());
  if (t.a % n != 0 || t.b % n != 0) return std::nullopt;
  return QuadInt{t.a / n, t.b / n, x.d};
}

inline bool quad_is_unit(const QuadInt& x) { return quad_norm(x) == 1; }

namespace detail {

// Does some element of norm m divide x? Elements of norm m are
// +-alpha +- beta sqrt(-d) with alpha^2 = m - d beta^2; the overall sign is
// a unit and never affects divisibility.
inline bool has_divisor_of_norm(const QuadInt& x, std::int64_t m) {
  for (std::int64_t beta = 0; x.d * beta * beta <= m; ++beta) {
    const std::int64_t rest = m - x.d * beta * beta;
    const auto alpha = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest)));
    if (alpha * alpha != rest) continue;
    for (const std::int64_t sb : {beta, -beta}) {
      // x * conj(alpha + sb sqrt(-d)) = (a alpha + d b sb) + (b alpha - a sb) sqrt(-d)
      if ((x.a * alpha + x.d * x.b * sb) % m == 0 && (x.b * alpha - x.a * sb) % m == 0)
        return true;
      if (beta == 0) break;
    }
  }
  return false;
}

// If x = y z with both non-units then min(N(y), N(z)) <= sqrt(N(x)), so only
// divisor norms up to sqrt(N(x)) need checking.
template <class DivisorSource>
bool irreducible_by_norm_divisors(const QuadInt& x, std::int64_t n, DivisorSource&& divisors) {
  if (n <= 1) return false;
  bool found = false;
  divisors(n, [&](std::int64_t m) {
    if (!found && has_divisor_of_norm(x, m)) found = true;
    return !found;
  });
  return !found;
}

} // namespace detail

inline constexpr std::int64_t kMaxIrreducibleNorm = 1'000'000;

/// Brute-force irreducibility for 2 <= N(x) <= 10^6.
inline bool quad_is_irreducible(const QuadInt& x) {
  const std::int64_t n = quad_norm(x);
  if (n < 2)
    throw std::invalid_argument("quad_is_irreducible: norm " + std::to_string(n) +
                                " marks zero or a unit");
  if (n > kMaxIrreducibleNorm)
    throw limit_exceeded("quad_is_irreducible: norm " + std::to_string(n) + " exceeds 10^6");
  return detail::irreducible_by_norm_divisors(x, n, [](std::int64_t norm, auto&& visit) {
    for (std::int64_t m = 2; m * m <= norm; ++m)
      if (norm % m == 0 && !visit(m)) return;
  });
}

enum class RegionKind {
  norm_ball,       // a^2 + d b^2 <= bound
  euclidean_ball,  // a^2 + b^2 <= bound
};

inline std::string_view to_string(RegionKind k) noexcept {
  return k == RegionKind::norm_ball ? "norm-ball" : "euclidean-ball";
}

/// Quadrant region a, b >= 0 bounded by one of two metrics.
struct RegionSpec {
  RegionKind kind = RegionKind::norm_ball;
  std::uint64_t bound = 1;

  std::uint64_t metric(std::uint64_t a, std::uint64_t b, std::uint64_t d) const noexcept {
    return kind == RegionKind::norm_ball ? a * a + d * b * b : a * a + b * b;
  }
};

inline constexpr std::uint64_t kMaxQuadBound = 1'000'000;
inline constexpr std::int64_t kMaxQuadCensusD = 1'000'000;

class QuadCensus;
inline QuadCensus quad_census(std::int64_t d, const RegionSpec& region, const PrimeTable& table);

/// Cumulative irreducible counts indexed by the region metric.
class QuadCensus {
public:
  std::int64_t d() const noexcept { return d_; }
  const RegionSpec& region() const noexcept { return region_; }
  std::string label() const { return ring_label(d_); }

  std::uint64_t count_up_to(std::uint64_t t) const {
    if (t < 1 || t > region_.bound)
      throw std::out_of_range("quad census: bound " + std::to_string(t) + " outside [1, " +
                              std::to_string(region_.bound) + "]");
    return cumulative_[t];
  }

  std::uint64_t total() const { return cumulative_.back(); }

private:
  friend QuadCensus quad_census(std::int64_t, const RegionSpec&, const PrimeTable&);

  QuadCensus(std::int64_t d, RegionSpec region, std::vector<std::uint64_t> cumulative)
      : d_(d), region_(region), cumulative_(std::move(cumulative)) {}

  std::int64_t d_;
  RegionSpec region_;
  std::vector<std::uint64_t> cumulative_;  // [0, bound]
};

/// Enumerate a, b >= 0 inside the region (zero and units excluded) and
/// count irreducibles. Norm divisors are generated from a factorization
/// against the prime table, which must reach sqrt of the largest norm.
inline QuadCensus quad_census(std::int64_t d, const RegionSpec& region, const PrimeTable& table) {
  validate_ring(d);
  if (region.bound < 1) throw std::invalid_argument("quad_census: bound must be >= 1");
  if (region.bound > kMaxQuadBound)
    throw limit_exceeded("quad_census: bound " + std::to_string(region.bound) +
                         " exceeds 10^6 brute-force scale");
  if (d > kMaxQuadCensusD)
    throw limit_exceeded("quad_census: d " + std::to_string(d) + " exceeds 10^6");

  const auto ud = static_cast<std::uint64_t>(d);
  const std::uint64_t max_norm =
      region.kind == RegionKind::norm_ball ? region.bound : region.bound * ud;
  const std::uint64_t root = isqrt(max_norm);
  if (table.limit() < root)
    throw std::invalid_argument("quad_census: prime table limit " + std::to_string(table.limit()) +
                                " below sqrt of max norm " + std::to_string(root));
  const auto small_primes = table.primes_between(2, root);

  std::vector<std::pair<std::uint64_t, int>> factors;
  std::vector<std::int64_t> divs;
  auto norm_divisors = [&](std::int64_t norm, auto&& visit) {
    factors.clear();
    auto rest = static_cast<std::uint64_t>(norm);
    for (std::uint64_t p : small_primes) {
      if (p > rest / p) break;
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e > 0) factors.emplace_back(p, e);
    }
    if (rest > 1) factors.emplace_back(rest, 1);
    divs.assign(1, 1);
    for (auto [p, e] : factors) {
      const std::size_t base = divs.size();
      std::int64_t pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= static_cast<std::int64_t>(p);
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    std::sort(divs.begin(), divs.end());
    for (std::int64_t m : divs) {
      if (m < 2) continue;
      if (m > norm / m) break;
      if (!visit(m)) return;
    }
  };

  std::vector<std::uint64_t> counts(region.bound + 1, 0);
  for (std::uint64_t b = 0; region.metric(0, b, ud) <= region.bound; ++b) {
    for (std::uint64_t a = 0; region.metric(a, b, ud) <= region.bound; ++a) {
      const QuadInt x{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), d};
      const std::int64_t n = quad_norm(x);
      if (n <= 1) continue;
      if (detail::irreducible_by_norm_divisors(x, n, norm_divisors))
        ++counts[region.metric(a, b, ud)];
    }
  }
  for (std::size_t t = 1; t < counts.size(); ++t) counts[t] += counts[t - 1];
  return QuadCensus(d, region, std::move(counts));
}

} // namespace primes_lab
