#pragma once

#include <string>
#include <vector>

#include "ekron/generalized.hpp"
#include "ekron/logform.hpp"

namespace ekron {

struct SetDifferences {
    std::vector<PrimeIdeal> in_i_not_j;
    std::vector<PrimeIdeal> in_j_not_i;
};

// Omega_i(x) \ Omega_j(x) and Omega_j(x) \ Omega_i(x), sorted by norm.
SetDifferences symmetric_difference(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                    std::uint64_t x);

struct HypothesisReport {
    bool ok = false;
    std::vector<std::uint64_t> primes_i_not_j;  // N_{Omega_i} \ N_{Omega_j} at truncation
    std::vector<std::uint64_t> primes_j_not_i;
    std::string caveat;  // non-empty for rule-based sets: check is at-truncation only
};

// Both rational-prime set differences must be nonempty (finiteness is
// automatic at a truncation).
HypothesisReport check_hypothesis(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                  std::uint64_t x);

// The single-logarithm reduction: each p in Omega_i \ Omega_j contributes
// +f/(p^f - 1) on log p, each q in Omega_j \ Omega_i contributes -g/(q^g - 1),
// everything exact and canonical.
LogLinearForm difference_form(const OmegaSet& omega_i, const OmegaSet& omega_j,
                              std::uint64_t x);

enum class WitnessVerdict { ZeroDifference, TranscendentalDifference };
const char* witness_verdict_name(WitnessVerdict v);

// Nonzero form <=> TranscendentalDifference. alpha = prod p^{c_p} with a
// nonzero exponent vector cannot equal 1 (clear denominators and apply
// unique factorization), so log alpha falls under Lindemann's theorem.
WitnessVerdict classify(const LogLinearForm& form);

struct WitnessCertificate {
    std::string field_spec;
    std::string omega_i_desc;
    std::string omega_j_desc;
    std::uint64_t bound = 0;
    HypothesisReport hypothesis;
    LogLinearForm form;           // the exact exponent vector of alpha
    WitnessVerdict verdict = WitnessVerdict::ZeroDifference;
    Real numeric_value;           // evaluated form
    std::string statement;        // the conditional claim the certificate makes
};

// Builds the full certificate for the pair at truncation x. The verdict is
// TranscendentalDifference iff the form is nonzero: alpha = prod p^{c_p} is a
// positive algebraic number and, by unique factorization extended to rational
// exponents, alpha = 1 would force every c_p to vanish; log alpha is then
// transcendental by Lindemann's theorem. The certificate proves the exact
// reduction and records the analytic step as an assumption.
WitnessCertificate make_certificate(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                    std::uint64_t x, mpfr_prec_t prec = kDefaultPrecision);

// | (gamma_i/delta_i - gamma_j/delta_j) - value(form) |, the numerical check
// of the normalized-difference identity.
Real numeric_crosscheck(const WitnessCertificate& cert, const Real& gamma_i,
                        const Real& gamma_j, const DeltaValue& delta_i,
                        const DeltaValue& delta_j, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace ekron
