#pragma once

// Rational-prime sieving and the classical counting function pi(x).
//
// PrimeTable stores one bit per odd integer; 2 is handled out of band.
// Limits above the segmentation threshold are sieved segment by segment
// with base primes up to sqrt(limit), which keeps the working set in cache.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "primes_lab/errors.hpp"

namespace primes_lab {

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 40;
inline constexpr std::uint64_t kMaxExactDouble = std::uint64_t{1} << 53;

/// floor(sqrt(n)), exact for all 64-bit n.
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept {
  if (n < 2) return n;
  // Newton iteration from an overestimate.
  std::uint64_t x = std::uint64_t{1} << ((std::bit_width(n) + 1) / 2);
  while (true) {
    std::uint64_t y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

struct SieveOptions {
  /// Limits strictly above this use the segmented path.
  std::uint64_t segment_threshold = 100'000'000;
  /// Odd integers per segment; rounded up to a multiple of 64.
  std::uint64_t segment_span = std::uint64_t{1} << 21;
};

class PrimeTable;
inline PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options);

/// Immutable table of rational-prime flags over [0, limit].
class PrimeTable {
public:
  std::uint64_t limit() const noexcept { return limit_; }

  /// flags[n] of the table; n must not exceed limit().
  bool is_prime(std::uint64_t n) const {
    if (n > limit_)
      throw std::out_of_range("is_prime: " + std::to_string(n) +
                              " exceeds table limit " + std::to_string(limit_));
    return test(n);
  }
  bool operator[](std::uint64_t n) const { return is_prime(n); }

  /// Number of primes <= x.
  std::uint64_t pi(std::uint64_t x) const {
    if (x > limit_)
      throw std::out_of_range("pi: " + std::to_string(x) +
                              " exceeds table limit " + std::to_string(limit_));
    if (x < 2) return 0;
    // Odd n = 2i + 1 with i <= (x - 1) / 2; bit 0 (n = 1) is never set.
    const std::uint64_t last = (x - 1) / 2;
    const std::uint64_t word = last / 64;
    const std::uint64_t bit = last % 64;
    const std::uint64_t mask =
        bit == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bit + 1)) - 1);
    return 1 + prefix_[word] +
           static_cast<std::uint64_t>(std::popcount(words_[word] & mask));
  }

  std::uint64_t count() const { return pi(limit_); }
  std::uint64_t count_up_to(std::uint64_t x) const { return pi(x); }

  /// All primes in [lo, hi], hi clamped to limit().
  std::vector<std::uint64_t> primes_between(std::uint64_t lo,
                                            std::uint64_t hi) const {
    hi = std::min(hi, limit_);
    std::vector<std::uint64_t> out;
    if (lo <= 2 && hi >= 2) out.push_back(2);
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 3) | 1; n <= hi; n += 2)
      if (test(n)) out.push_back(n);
    return out;
  }

  bool operator==(const PrimeTable&) const = default;

private:
  friend PrimeTable sieve_primes(std::uint64_t, const SieveOptions&);

  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> words)
      : limit_(limit), words_(std::move(words)), prefix_(words_.size() + 1, 0) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      prefix_[w + 1] = prefix_[w] + static_cast<std::uint64_t>(std::popcount(words_[w]));
  }

  bool test(std::uint64_t n) const noexcept {
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    const std::uint64_t i = n / 2;
    return (words_[i / 64] >> (i % 64)) & 1U;
  }

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_;   // bit i <-> odd integer 2i + 1
  std::vector<std::uint64_t> prefix_;  // popcount of words_[0 .. w)
};

namespace detail {

inline void clear_bit(std::vector<std::uint64_t>& words, std::uint64_t i) noexcept {
  words[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

inline std::vector<std::uint64_t> all_odd_candidates(std::uint64_t limit) {
  const std::uint64_t bits = limit / 2 + 1;  // odd integers 1, 3, ..., <= limit (+1 slack)
  std::vector<std::uint64_t> words((bits + 63) / 64, ~std::uint64_t{0});
  // Drop bits past the last odd integer <= limit, and the bit for 1.
  const std::uint64_t used = (limit - 1) / 2 + 1;
  for (std::uint64_t i = used; i < words.size() * 64; ++i) clear_bit(words, i);
  clear_bit(words, 0);
  return words;
}

// Classical in-place sieve over the whole odd range.
inline std::vector<std::uint64_t> sieve_flat(std::uint64_t limit) {
  auto words = all_odd_candidates(limit);
  for (std::uint64_t p = 3; p * p <= limit; p += 2) {
    const std::uint64_t ip = p / 2;
    if (!((words[ip / 64] >> (ip % 64)) & 1U)) continue;
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) clear_bit(words, m / 2);
  }
  return words;
}

// Sieve [1, limit] in windows of `span` odd integers using base primes
// up to sqrt(limit) from a flat sieve.
inline std::vector<std::uint64_t> sieve_segmented(std::uint64_t limit,
                                                  std::uint64_t span) {
  span = std::max<std::uint64_t>(64, (span + 63) / 64 * 64);
  auto words = all_odd_candidates(limit);
  const std::uint64_t root = isqrt(limit);
  std::vector<std::uint64_t> base;
  if (root >= 3) {
    const auto small = sieve_flat(root);
    for (std::uint64_t p = 3; p <= root; p += 2)
      if ((small[(p / 2) / 64] >> ((p / 2) % 64)) & 1U) base.push_back(p);
  }
  const std::uint64_t total_bits = (limit - 1) / 2 + 1;
  for (std::uint64_t lo = 0; lo < total_bits; lo += span) {
    const std::uint64_t hi = std::min(total_bits, lo + span);  // bit range [lo, hi)
    const std::uint64_t n_lo = 2 * lo + 1;
    const std::uint64_t n_hi = 2 * (hi - 1) + 1;
    for (std::uint64_t p : base) {
      if (p * p > n_hi) break;
      std::uint64_t m = std::max(p * p, (n_lo + p - 1) / p * p);
      if (m % 2 == 0) m += p;
      for (; m <= n_hi; m += 2 * p) clear_bit(words, m / 2);
    }
  }
  return words;
}

} // namespace detail

inline PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2)
    throw std::invalid_argument("sieve_primes: limit must be >= 2, got " +
                                std::to_string(limit));
  if (limit > kMaxSieveLimit)
    throw limit_exceeded("sieve_primes: limit " + std::to_string(limit) +
                         " exceeds guard 2^40");
  auto words = limit > options.segment_threshold
                   ? detail::sieve_segmented(limit, options.segment_span)
                   : detail::sieve_flat(limit);
  return PrimeTable(limit, std::move(words));
}

inline PrimeTable sieve_primes(std::uint64_t limit) {
  return sieve_primes(limit, SieveOptions{});
}

inline std::uint64_t pi(const PrimeTable& table, std::uint64_t x) { return table.pi(x); }

} // namespace primes_lab
