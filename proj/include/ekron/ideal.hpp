#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/logform.hpp"

namespace ekron {

inline constexpr std::uint64_t kDefaultDivisorCap = 1ULL << 20;

// An integral ideal in factored form: a multiset of (prime ideal, exponent)
// pairs over one field, sorted, exponents >= 1. The empty multiset is the
// unit ideal O_K. Norms are exact big integers.
class FactoredIdeal {
public:
    explicit FactoredIdeal(const NumberField& field) : field_(field) {}

    static FactoredIdeal unit(const NumberField& field) { return FactoredIdeal(field); }
    static FactoredIdeal from_factors(const NumberField& field,
                                      std::vector<std::pair<PrimeIdeal, std::uint32_t>> factors);

    const NumberField& field() const { return field_; }
    const std::vector<std::pair<PrimeIdeal, std::uint32_t>>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    std::size_t num_prime_factors() const { return factors_.size(); }

    std::uint32_t valuation(const PrimeIdeal& p) const;
    bool is_squarefree() const;

    mpz_class norm() const;

    // this * P^e (e may be 0)
    FactoredIdeal times(const PrimeIdeal& p, std::uint32_t e) const;

    friend bool operator==(const FactoredIdeal& a, const FactoredIdeal& b) {
        return a.field_ == b.field_ && a.factors_ == b.factors_;
    }
    friend bool operator!=(const FactoredIdeal& a, const FactoredIdeal& b) { return !(a == b); }

    std::string str() const;

private:
    NumberField field_;
    std::vector<std::pair<PrimeIdeal, std::uint32_t>> factors_;
};

// mu_K: 1 on the unit ideal, (-1)^r on a product of r distinct prime ideals,
// 0 when any exponent is >= 2.
int mobius(const FactoredIdeal& a);

// Lambda_K as an exact symbolic value: f*log(p) when a = P^m with N(P) = p^f,
// the zero form otherwise (including the unit ideal).
LogLinearForm mangoldt(const FactoredIdeal& a);

// Componentwise min of valuations; throws usage_error on mixed fields.
FactoredIdeal gcd(const FactoredIdeal& a, const FactoredIdeal& b);

FactoredIdeal multiply(const FactoredIdeal& a, const FactoredIdeal& b);

// I * J^{-1}, defined only when J | I; anything else is a precondition error.
FactoredIdeal quotient_exact(const FactoredIdeal& numerator, const FactoredIdeal& divisor);

bool divides(const FactoredIdeal& divisor, const FactoredIdeal& of);

// Visits every J | a exactly once. The divisor count prod(e_i + 1) must not
// exceed cap, else data_error naming the cap.
void for_each_divisor(const FactoredIdeal& a,
                      const std::function<void(const FactoredIdeal&)>& visit,
                      std::uint64_t cap = kDefaultDivisorCap);

std::vector<FactoredIdeal> divisors(const FactoredIdeal& a,
                                    std::uint64_t cap = kDefaultDivisorCap);

// sum_{J | I} mu(J)/N(J)  ==  prod_{P | I} (1 - 1/N(P)), both sides exact.
// A failed equality is a library bug and throws internal_error.
std::pair<ExactRational, ExactRational> check_mobius_identity(
    const FactoredIdeal& a, std::uint64_t cap = kDefaultDivisorCap);

// mu(I) log N(I)  ==  -sum_{J | I} Lambda(J) mu(I J^{-1}), as exact log forms.
std::pair<LogLinearForm, LogLinearForm> check_mangoldt_identity(
    const FactoredIdeal& a, std::uint64_t cap = kDefaultDivisorCap);

struct IdentityCheckSummary {
    std::uint64_t ideals_checked = 0;
    std::uint64_t mobius_failures = 0;
    std::uint64_t mangoldt_failures = 0;
};

// Runs both exact identities over a deterministic corpus of test ideals with
// at most max_factors distinct prime factors of norm <= max_norm and
// exponents in [1, max_exp]: every exponent pattern over every subset of a
// 12-prime pool (the 10 smallest prime ideals plus the 2 largest under the
// norm bound), plus every squarefree pair from the full prime list.
IdentityCheckSummary verify_ideal_identities(const NumberField& field,
                                             std::uint64_t max_norm = 1000,
                                             std::uint32_t max_factors = 4,
                                             std::uint32_t max_exp = 3);

}  // namespace ekron
