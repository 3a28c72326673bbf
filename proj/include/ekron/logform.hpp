#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

#include "ekron/real.hpp"

namespace ekron {

// Exact rational arithmetic is GMP's canonical mpq: reduced, denominator > 0.
using ExactRational = mpq_class;

// A finite sum  sum_p c_p * log p  over rational primes with exact rational
// coefficients, kept canonical (zero coefficients are dropped). The
// represented real equals log(prod p^{c_p}); the form is zero iff the map is
// empty.
class LogLinearForm {
public:
    LogLinearForm() = default;

    void add_term(std::uint64_t prime, const ExactRational& coeff);

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::uint64_t, ExactRational>& terms() const { return terms_; }

    LogLinearForm& operator+=(const LogLinearForm& o);
    LogLinearForm& operator-=(const LogLinearForm& o);
    friend LogLinearForm operator+(LogLinearForm a, const LogLinearForm& b) { return a += b; }
    friend LogLinearForm operator-(LogLinearForm a, const LogLinearForm& b) { return a -= b; }
    friend LogLinearForm operator-(const LogLinearForm& a);
    LogLinearForm& scale(const ExactRational& c);

    friend bool operator==(const LogLinearForm& a, const LogLinearForm& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LogLinearForm& a, const LogLinearForm& b) { return !(a == b); }

    // sum c_p * log p at the given precision
    Real evaluate(mpfr_prec_t prec = kDefaultPrecision) const;

    // e.g. "log(2) - 1/2*log(3)"; "0" for the zero form
    std::string str() const;

private:
    std::map<std::uint64_t, ExactRational> terms_;
};

}  // namespace ekron
