#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "primes_lab/arithmetic_core.hpp"

using namespace primes_lab;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

} // namespace

TEST(SievePrimes, LimitTenFlagsExactlySmallPrimes) {
  const auto table = sieve_primes(10);
  std::vector<std::uint64_t> flagged;
  for (std::uint64_t n = 0; n <= 10; ++n)
    if (table.is_prime(n)) flagged.push_back(n);
  EXPECT_EQ(flagged, (std::vector<std::uint64_t>{2, 3, 5, 7}));
}

TEST(SievePrimes, AgreesWithTrialDivisionUpTo10k) {
  const auto table = sieve_primes(10'000);
  std::uint64_t oracle_count = 0;
  for (std::uint64_t n = 0; n <= 10'000; ++n) {
    ASSERT_EQ(table.is_prime(n), trial_division_prime(n)) << n;
    oracle_count += trial_division_prime(n) ? 1 : 0;
  }
  EXPECT_EQ(oracle_count, 1229u);
  EXPECT_EQ(table.count(), oracle_count);
}

TEST(SievePrimes, RejectsBadLimits) {
  EXPECT_THROW(sieve_primes(1), std::invalid_argument);
  EXPECT_THROW(sieve_primes(0), std::invalid_argument);
  EXPECT_THROW(sieve_primes(kMaxSieveLimit + 1), limit_exceeded);
}

TEST(SievePrimes, SmallestTable) {
  const auto table = sieve_primes(2);
  EXPECT_FALSE(table.is_prime(0));
  EXPECT_FALSE(table.is_prime(1));
  EXPECT_TRUE(table.is_prime(2));
  EXPECT_THROW((void)table.is_prime(3), std::out_of_range);
}

TEST(SievePrimes, RandomSamplesAgreeWithTrialDivision) {
  const auto table = sieve_primes(100'000);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> dist(0, 100'000);
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t n = dist(rng);
    ASSERT_EQ(table.is_prime(n), trial_division_prime(n)) << n;
  }
}

TEST(SievePrimes, SegmentedMatchesFlat) {
  for (std::uint64_t limit : {2ull, 3ull, 63ull, 64ull, 65ull, 127ull, 128ull, 129ull, 1000ull,
                              99'991ull, 1'000'001ull}) {
    const auto flat = sieve_primes(limit, {.segment_threshold = ~0ull});
    for (std::uint64_t span : {1ull, 64ull, 100ull, 4096ull}) {
      const auto seg = sieve_primes(limit, {.segment_threshold = 0, .segment_span = span});
      ASSERT_EQ(flat, seg) << "limit " << limit << " span " << span;
    }
  }
}

TEST(SievePrimes, DefaultSegmentedPathAboveThreshold) {
  // Exercises the threshold switch with the default span on a limit just above it.
  const auto seg = sieve_primes(3'000'017, {.segment_threshold = 3'000'000});
  const auto flat = sieve_primes(3'000'017);
  EXPECT_EQ(seg, flat);
  EXPECT_EQ(seg.count(), 216'817u);  // independent numpy sieve
  std::uint64_t oracle = 0;
  for (std::uint64_t n = 2'999'000; n <= 3'000'017; ++n) oracle += trial_division_prime(n) ? 1 : 0;
  EXPECT_EQ(seg.pi(3'000'017) - seg.pi(2'998'999), oracle);
}

TEST(Pi, Examples) {
  const auto table = sieve_primes(10'000);
  EXPECT_EQ(pi(table, 2), 1u);
  EXPECT_EQ(pi(table, 0), 0u);
  EXPECT_EQ(pi(table, 1), 0u);
  EXPECT_EQ(pi(table, 10'000), 1229u);
  EXPECT_THROW((void)pi(table, 10'001), std::out_of_range);
}

TEST(Pi, StepsAreZeroOrOne) {
  const auto table = sieve_primes(100'000);
  std::uint64_t prev = 0;
  for (std::uint64_t x = 1; x <= 100'000; ++x) {
    const std::uint64_t cur = table.pi(x);
    ASSERT_LE(cur - prev, 1u);
    ASSERT_EQ(cur - prev, table.is_prime(x) ? 1u : 0u);
    prev = cur;
  }
}

TEST(Pi, WordBoundaries) {
  // Odd bit index 63 / 64 sit at n = 127 / 129.
  const auto table = sieve_primes(1000);
  std::uint64_t brute = 0;
  for (std::uint64_t x = 0; x <= 1000; ++x) {
    brute += trial_division_prime(x) ? 1 : 0;
    ASSERT_EQ(table.pi(x), brute) << x;
  }
}

TEST(PrimesBetween, ListsPrimesInRange) {
  const auto table = sieve_primes(50);
  EXPECT_EQ(table.primes_between(0, 12), (std::vector<std::uint64_t>{2, 3, 5, 7, 11}));
  EXPECT_EQ(table.primes_between(20, 1000), (std::vector<std::uint64_t>{23, 29, 31, 37, 41, 43, 47}));
  EXPECT_TRUE(table.primes_between(24, 28).empty());
}

TEST(Isqrt, ExactFloorRoot) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t n = rng() >> (rng() % 64);
    const std::uint64_t r = isqrt(n);
    ASSERT_LE(static_cast<unsigned __int128>(r) * r, n);
    ASSERT_GT(static_cast<unsigned __int128>(r + 1) * (r + 1), n);
  }
  EXPECT_EQ(isqrt(0), 0u);
  EXPECT_EQ(isqrt(1), 1u);
  EXPECT_EQ(isqrt(24), 4u);
  EXPECT_EQ(isqrt(25), 5u);
  EXPECT_EQ(isqrt(~std::uint64_t{0}), 4'294'967'295u);
}
