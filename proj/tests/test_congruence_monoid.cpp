#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "primes_lab/congruence_monoid.hpp"

using namespace primes_lab;

namespace {

// Exhaustive divisor search over A_d, straight from the definition.
bool brute_monoid_prime(std::uint64_t n, std::uint64_t d) {
  if (n == 1) return false;
  for (std::uint64_t a = 1 + d; a < n; a += d)
    if (n % a == 0 && (n / a) % d == 1) return false;
  return true;
}

std::vector<std::uint64_t> brute_primes(std::uint64_t d, std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; n += d)
    if (brute_monoid_prime(n, d)) out.push_back(n);
  return out;
}

} // namespace

TEST(MonoidCensus, HilbertMonoidTo45) {
  const auto table = sieve_primes(100);
  const auto census = monoid_census({4, 45}, table);
  const std::vector<std::uint64_t> expected = brute_primes(4, 45);
  ASSERT_EQ(expected, (std::vector<std::uint64_t>{5, 9, 13, 17, 21, 29, 33, 37, 41}));
  EXPECT_EQ(census.primes(), expected);
}

TEST(MonoidCensus, SingleElementAboveOne) {
  const auto table = sieve_primes(10);
  EXPECT_EQ(monoid_census({4, 5}, table).primes(), (std::vector<std::uint64_t>{5}));
}

TEST(MonoidCensus, ModulusThreeTo10k) {
  const auto table = sieve_primes(10'000);
  const auto census = monoid_census({3, 10'000}, table);
  EXPECT_EQ(census.total(), 1380u);
}

TEST(MonoidCensus, Errors) {
  const auto table = sieve_primes(100);
  EXPECT_THROW(monoid_census({4, 101}, table), std::invalid_argument);
  EXPECT_THROW(monoid_census({1, 50}, table), std::invalid_argument);
  EXPECT_THROW(monoid_census({4, 0}, table), std::invalid_argument);
}

TEST(MonoidCensus, StructuralInvariants) {
  const auto table = sieve_primes(20'000);
  for (std::uint64_t d : {2, 3, 4, 7, 10, 50}) {
    const auto census = monoid_census({d, 20'000}, table);
    EXPECT_FALSE(census.is_prime_at(0));
    std::uint64_t prev = 0;
    for (std::uint64_t k = 0; k < census.size(); ++k) {
      const std::uint64_t cur = census.cumulative_at(k);
      ASSERT_EQ(cur - prev, census.is_prime_at(k) ? 1u : 0u);
      prev = cur;
      const std::uint64_t n = census.element(k);
      if (n <= 20'000 && table.is_prime(n)) {
        ASSERT_TRUE(census.is_prime_at(k)) << n;
      }
      // pi_d(x) <= |A_d n [2, x]| = k
      ASSERT_LE(cur, k);
    }
  }
}

TEST(IsMonoidPrime, Examples) {
  EXPECT_TRUE(is_monoid_prime(9, 4));
  EXPECT_TRUE(is_monoid_prime(21, 4));
  EXPECT_TRUE(is_monoid_prime(33, 4));
  EXPECT_FALSE(is_monoid_prime(25, 4));
  EXPECT_FALSE(is_monoid_prime(1, 4));
  EXPECT_FALSE(is_monoid_prime(45, 4));
  EXPECT_THROW(is_monoid_prime(7, 4), std::invalid_argument);
  EXPECT_THROW(is_monoid_prime(0, 4), std::invalid_argument);
  EXPECT_THROW(is_monoid_prime(5, 1), std::invalid_argument);
}

TEST(IsMonoidPrime, SieveEquivalenceSmallModuli) {
  const auto table = sieve_primes(10'000);
  for (std::uint64_t d = 2; d <= 12; ++d) {
    const auto census = monoid_census({d, 10'000}, table);
    for (std::uint64_t k = 0; k < census.size(); ++k) {
      const std::uint64_t n = census.element(k);
      ASSERT_EQ(census.is_prime_at(k), is_monoid_prime(n, d)) << "d=" << d << " n=" << n;
    }
  }
}

TEST(IsMonoidPrime, AgreesWithExhaustiveDivisorSearch) {
  for (std::uint64_t d : {2, 3, 5, 6, 9}) {
    for (std::uint64_t n = 1; n <= 3000; n += d)
      ASSERT_EQ(is_monoid_prime(n, d), brute_monoid_prime(n, d)) << "d=" << d << " n=" << n;
  }
}

TEST(PiD, Examples) {
  const auto table = sieve_primes(10'000);
  EXPECT_EQ(pi_d(monoid_census({3, 10'000}, table), 10'000), 1380u);
  EXPECT_EQ(pi_d(monoid_census({5, 100}, table), 5), 0u);
  const auto a4 = monoid_census({4, 45}, table);
  EXPECT_EQ(pi_d(a4, 45), 9u);
  EXPECT_EQ(pi_d(a4, 1), 0u);
  EXPECT_EQ(pi_d(a4, 8), 1u);  // 5 only
  EXPECT_THROW((void)pi_d(a4, 0), std::out_of_range);
  EXPECT_THROW((void)pi_d(a4, 46), std::out_of_range);
}

TEST(EstimatePiD, Examples) {
  EXPECT_NEAR(estimate_pi_d(3, 10'000), 1590.20, 0.05);
  EXPECT_NEAR(estimate_pi_d(7, 9997), 1039.97, 0.05);
  EXPECT_NEAR(estimate_pi_d(3, std::numbers::e), std::numbers::e / 3.0, 1e-12);
  EXPECT_THROW(estimate_pi_d(3, 1.0), std::invalid_argument);
  EXPECT_THROW(estimate_pi_d(3, 0.5), std::invalid_argument);
  EXPECT_THROW(estimate_pi_d(1, 100.0), std::invalid_argument);
}

TEST(EstimatePiD, RulesOutLogOfRootReading) {
  // ln(x^(1/d)) instead of (ln x)^(1/d) would give ~1085.7 at d = 3.
  const double alt = 10'000.0 / (3.0 * std::log(std::pow(10'000.0, 1.0 / 3.0)));
  EXPECT_NEAR(alt, 1085.7, 0.05);
  EXPECT_GT(std::abs(estimate_pi_d(3, 10'000) - alt), 500.0);
}

TEST(EstimatePiD, Monotonicity) {
  for (std::uint64_t d = 2; d <= 60; ++d) {
    double prev = estimate_pi_d(d, 3.0);
    for (double x = 3.5; x < 1e6; x *= 1.37) {
      const double cur = estimate_pi_d(d, x);
      ASSERT_GT(cur, prev) << "d=" << d << " x=" << x;
      prev = cur;
    }
  }
  // d (ln x)^(1/d) increases in d once d >= ln ln x, so the estimate falls there.
  for (double x : {3.0, 10.0, 1e3, 1e5, 4.2e5, 1e8}) {
    const auto d0 = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(std::log(std::log(x)))));
    for (std::uint64_t d = d0; d < 60; ++d)
      ASSERT_GT(estimate_pi_d(d, x), estimate_pi_d(d + 1, x)) << "d=" << d << " x=" << x;
  }
  // Below that threshold the order flips: 2 (ln x)^(1/2) > 3 (ln x)^(1/3) at x = 10^5.
  EXPECT_LT(estimate_pi_d(2, 1e5), estimate_pi_d(3, 1e5));
}

TEST(LargestElement, Examples) {
  EXPECT_EQ(largest_element({5, 10'000}), 9996u);
  EXPECT_EQ(largest_element({3, 10'000}), 10'000u);
  EXPECT_EQ(largest_element({7, 10'000}), 9997u);
  EXPECT_EQ(largest_element({50, 10'000}), 9951u);
  EXPECT_EQ(largest_element({4, 1}), 1u);
}

TEST(HilbertClassify, Examples) {
  const auto table = sieve_primes(1000);
  EXPECT_TRUE(hilbert_classify(21, table));
  EXPECT_TRUE(hilbert_classify(49, table));
  EXPECT_TRUE(hilbert_classify(9, table));
  EXPECT_TRUE(hilbert_classify(5, table));
  EXPECT_FALSE(hilbert_classify(105, table));
  EXPECT_FALSE(hilbert_classify(25, table));
  EXPECT_FALSE(hilbert_classify(1, table));
  EXPECT_FALSE(hilbert_classify(441, table));  // 3 * 3 * 7 * 7 = 9 * 49
  EXPECT_TRUE(is_monoid_prime(49, 4));
  EXPECT_FALSE(is_monoid_prime(105, 4));
  EXPECT_THROW(hilbert_classify(7, table), std::invalid_argument);
}

TEST(HilbertClassify, MatchesSieveTo200k) {
  const auto table = sieve_primes(200'000);
  const auto census = monoid_census({4, 200'000}, table);
  for (std::uint64_t k = 0; k < census.size(); ++k)
    ASSERT_EQ(hilbert_classify(census.element(k), table), census.is_prime_at(k))
        << census.element(k);
}
