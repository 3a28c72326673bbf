#pragma once

// Independent reference computations used by the test suites. Everything in
// here deliberately avoids the library's sieve/extrapolation code paths: the
// point is to check those paths against a second route.

#include <cstdint>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/real.hpp"

namespace ekron::oracles {

// Euler-Mascheroni constant by Euler-Maclaurin summation of H_N - log N.
Real euler_mascheroni(mpfr_prec_t prec);

// digamma(x) for x >= 16, by the Bernoulli asymptotic series.
Real digamma_asymptotic(const Real& x, mpfr_prec_t prec);

// L(1, chi_D) by brute-force Dirichlet series, accelerated with a
// digamma-based tail over full character periods.
Real dirichlet_l1(std::int64_t fundamental_d, mpfr_prec_t prec);

// Leibniz series 1 - 1/3 + 1/5 - ... with Cohen-Rodriguez Villegas-Zagier
// acceleration (equals pi/4).
Real leibniz_accelerated(mpfr_prec_t prec);

// L'(1, chi_{-4}) = -sum (-1)^k log(2k+1)/(2k+1), CVZ-accelerated. Together
// with gamma this pins gamma_{Q(i)} = gamma + L'(1)/L(1).
Real l_prime_chi4(mpfr_prec_t prec);

// a_m for Q(sqrt(-1)) via the divisor sum over the Kronecker character
// mod 4: a_m = sum_{d | m} chi_{-4}(d).
std::vector<std::uint64_t> chi4_divisor_counts(std::uint64_t x);

// a_m for any supported field by direct enumeration of prime-ideal-power
// combinations with norm <= bound (exponential in the prime count; use for
// small bounds only).
std::vector<std::uint64_t> enumeration_counts(const NumberField& field, std::uint64_t bound);

}  // namespace ekron::oracles
