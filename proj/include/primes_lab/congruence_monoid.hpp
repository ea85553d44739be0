#pragma once

// Congruence monoids A_d = {n >= 1 : n = 1 (mod d)} under multiplication.
//
// A monoid prime is an element other than 1 with no factorization a * b,
// a, b in A_d, a, b > 1. Divisors outside A_d do not count, so 9 and 21
// are primes of A_4 while 25 = 5 * 5 and 45 = 5 * 9 are not.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "primes_lab/arithmetic_core.hpp"

namespace primes_lab {

struct MonoidParams {
  std::uint64_t d = 2;      // modulus, >= 2
  std::uint64_t limit = 1;  // inclusive census bound

  void validate() const {
    if (d < 2)
      throw std::invalid_argument("monoid modulus d must be >= 2, got " + std::to_string(d));
    if (limit < 1) throw std::invalid_argument("monoid limit must be >= 1");
    if (limit > kMaxSieveLimit)
      throw limit_exceeded("monoid limit " + std::to_string(limit) + " exceeds guard 2^40");
  }
};

/// Largest n <= limit with n = 1 (mod d).
inline std::uint64_t largest_element(const MonoidParams& params) {
  params.validate();
  return (params.limit - 1) / params.d * params.d + 1;
}

class MonoidCensus;
inline MonoidCensus monoid_census(const MonoidParams& params, const PrimeTable& table);

/// Monoid primes of A_d up to a limit. Element 1 + k*d lives at index k.
class MonoidCensus {
public:
  const MonoidParams& params() const noexcept { return params_; }
  std::uint64_t d() const noexcept { return params_.d; }
  std::uint64_t limit() const noexcept { return params_.limit; }

  /// Number of elements of A_d in [1, limit].
  std::uint64_t size() const noexcept { return flags_.size(); }
  std::uint64_t element(std::uint64_t k) const noexcept { return 1 + k * params_.d; }

  bool is_prime_at(std::uint64_t k) const { return flags_.at(k); }

  /// Monoid primes <= 1 + k*d.
  std::uint64_t cumulative_at(std::uint64_t k) const { return cumulative_.at(k); }

  /// pi_d(x): monoid primes <= x, for 1 <= x <= limit.
  std::uint64_t count_up_to(std::uint64_t x) const {
    if (x < 1 || x > params_.limit)
      throw std::out_of_range("pi_d: x = " + std::to_string(x) + " outside [1, " +
                              std::to_string(params_.limit) + "]");
    return cumulative_[(x - 1) / params_.d];
  }

  std::uint64_t total() const { return cumulative_.back(); }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> out;
    out.reserve(total());
    for (std::uint64_t k = 0; k < flags_.size(); ++k)
      if (flags_[k]) out.push_back(element(k));
    return out;
  }

private:
  friend MonoidCensus monoid_census(const MonoidParams&, const PrimeTable&);

  MonoidCensus(MonoidParams params, std::vector<bool> flags)
      : params_(params), flags_(std::move(flags)), cumulative_(flags_.size()) {
    std::uint64_t running = 0;
    for (std::size_t k = 0; k < flags_.size(); ++k) {
      running += flags_[k] ? 1 : 0;
      cumulative_[k] = running;
    }
  }

  MonoidParams params_;
  std::vector<bool> flags_;
  std::vector<std::uint64_t> cumulative_;
};

/// Sieve the monoid primes of A_d up to params.limit.
///
/// Every composite n <= limit of A_d is a * b with a, b in A_d and
/// 1 < a <= b; if a | n and both are 1 (mod d) the cofactor is 1 (mod d)
/// too, so marking a * b for a <= b covers all of them. Only a that are
/// themselves monoid primes need marking, since a composite a = a1 * a2
/// yields a * b = a1 * (a2 * b) with a1 <= a2 * b.
inline MonoidCensus monoid_census(const MonoidParams& params, const PrimeTable& table) {
  params.validate();
  if (table.limit() < params.limit)
    throw std::invalid_argument("monoid_census: prime table limit " +
                                std::to_string(table.limit()) + " below census limit " +
                                std::to_string(params.limit));
  const std::uint64_t d = params.d;
  const std::uint64_t limit = params.limit;
  const std::uint64_t n = (limit - 1) / d + 1;

  std::vector<bool> prime(n, true);
  prime[0] = false;
  for (std::uint64_t ka = 1; ka < n; ++ka) {
    const std::uint64_t a = 1 + ka * d;
    if (a > limit / a) break;
    if (!prime[ka]) continue;
    for (std::uint64_t b = a; b <= limit / a; b += d) prime[(a * b - 1) / d] = false;
  }
  return MonoidCensus(params, std::move(prime));
}

inline std::uint64_t pi_d(const MonoidCensus& census, std::uint64_t x) {
  return census.count_up_to(x);
}

/// Trial-division predicate, independent of the sieve.
inline bool is_monoid_prime(std::uint64_t n, std::uint64_t d) {
  if (d < 2) throw std::invalid_argument("is_monoid_prime: d must be >= 2");
  if (n % d != 1)
    throw std::invalid_argument("is_monoid_prime: " + std::to_string(n) +
                                " is not an element of A_" + std::to_string(d));
  if (n == 1) return false;
  for (std::uint64_t a = 1 + d; a <= n / a; a += d)
    if (n % a == 0) return false;
  return true;
}

/// x / (d * (ln x)^(1/d)).
inline double estimate_pi_d(std::uint64_t d, double x) {
  if (d < 2) throw std::invalid_argument("estimate_pi_d: d must be >= 2");
  if (!(x > 1.0))
    throw std::invalid_argument("estimate_pi_d: x must exceed 1");
  return x / (static_cast<double>(d) * std::pow(std::log(x), 1.0 / static_cast<double>(d)));
}

/// Classification of A_4 primes via rational factorization: a rational
/// prime, or a product of two primes that are both 3 (mod 4).
inline bool hilbert_classify(std::uint64_t n, const PrimeTable& table) {
  if (n < 1 || n % 4 != 1)
    throw std::invalid_argument("hilbert_classify: " + std::to_string(n) +
                                " is not 1 (mod 4)");
  if (n == 1) return false;
  if (isqrt(n) > table.limit())
    throw std::invalid_argument("hilbert_classify: prime table too small to factor " +
                                std::to_string(n));
  std::vector<std::uint64_t> factors;
  std::uint64_t rest = n;
  for (std::uint64_t p = 3; p <= rest / p; p += 2) {
    if (!table.is_prime(p)) continue;
    while (rest % p == 0) {
      factors.push_back(p);
      rest /= p;
      if (factors.size() > 2) return false;
    }
  }
  if (rest > 1) factors.push_back(rest);
  if (factors.size() == 1) return true;
  return factors.size() == 2 && factors[0] % 4 == 3 && factors[1] % 4 == 3;
}

} // namespace primes_lab
