// Prints pi_d(x) against x / (d (ln x)^(1/d)) for a few moduli.

#include <cstdio>

#include "primes_lab/primes_lab.hpp"

int main() {
  using namespace primes_lab;
  const auto table = sieve_primes(100'000);
  std::printf("%4s %10s %12s %9s\n", "d", "pi_d(x)", "estimate", "R_d");
  for (std::uint64_t d : {3, 5, 7, 11}) {
    const auto census = monoid_census({d, 100'000}, table);
    const double est = estimate_pi_d(d, 100'000.0);
    std::printf("%4llu %10llu %12.2f %9.5f\n", static_cast<unsigned long long>(d),
                static_cast<unsigned long long>(census.total()), est,
                ratio_R(census.total(), est));
  }
}
