#pragma once

#include <stdexcept>
#include <string>

namespace primes_lab {

/// Raised when a request is well-formed but exceeds a size guard
/// (sieve limit, brute-force scale, census memory).
class limit_exceeded : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an output artifact cannot be written.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace primes_lab
