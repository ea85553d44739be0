#pragma once

#include "primes_lab/errors.hpp"
#include "primes_lab/arithmetic_core.hpp"
#include "primes_lab/congruence_monoid.hpp"
#include "primes_lab/gaussian_integers.hpp"
#include "primes_lab/quadratic_rings.hpp"
#include "primes_lab/analysis.hpp"
#include "primes_lab/summaries.hpp"
#include "primes_lab/reporting.hpp"
