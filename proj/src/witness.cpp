#include "ekron/witness.hpp"

#include <algorithm>

namespace ekron {

namespace {

void require_same_field(const OmegaSet& a, const OmegaSet& b) {
    if (a.field() != b.field())
        throw usage_error("Omega sets belong to different fields");
}

std::vector<std::uint64_t> sorted_difference(const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// "2^(1) * 3^(-1/2)" for the factored argument alpha = prod p^{c_p}
std::string factored_argument(const LogLinearForm& form) {
    std::string s;
    for (const auto& [p, c] : form.terms()) {
        if (!s.empty()) s += " * ";
        s += std::to_string(p) + "^(" + c.get_str() + ")";
    }
    return s;
}

}  // namespace

const char* witness_verdict_name(WitnessVerdict v) {
    return v == WitnessVerdict::ZeroDifference ? "ZeroDifference" : "TranscendentalDifference";
}

WitnessVerdict classify(const LogLinearForm& form) {
    return form.is_zero() ? WitnessVerdict::ZeroDifference
                          : WitnessVerdict::TranscendentalDifference;
}

SetDifferences symmetric_difference(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                    std::uint64_t x) {
    require_same_field(omega_i, omega_j);
    std::vector<PrimeIdeal> ti = omega_i.truncate(x);
    std::vector<PrimeIdeal> tj = omega_j.truncate(x);
    SetDifferences out;
    std::set_difference(ti.begin(), ti.end(), tj.begin(), tj.end(),
                        std::back_inserter(out.in_i_not_j));
    std::set_difference(tj.begin(), tj.end(), ti.begin(), ti.end(),
                        std::back_inserter(out.in_j_not_i));
    return out;
}

HypothesisReport check_hypothesis(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                  std::uint64_t x) {
    require_same_field(omega_i, omega_j);
    HypothesisReport report;
    std::vector<std::uint64_t> ni = omega_i.rational_primes(x);
    std::vector<std::uint64_t> nj = omega_j.rational_primes(x);
    report.primes_i_not_j = sorted_difference(ni, nj);
    report.primes_j_not_i = sorted_difference(nj, ni);
    report.ok = !report.primes_i_not_j.empty() && !report.primes_j_not_i.empty();
    if (omega_i.is_rule() || omega_j.is_rule())
        report.caveat = "rule-based Omega: nonemptiness/finiteness checked at truncation x = " +
                        std::to_string(x) + " only";
    return report;
}

LogLinearForm difference_form(const OmegaSet& omega_i, const OmegaSet& omega_j,
                              std::uint64_t x) {
    SetDifferences diff = symmetric_difference(omega_i, omega_j, x);
    LogLinearForm form = convergence_form(diff.in_i_not_j);
    form -= convergence_form(diff.in_j_not_i);
    return form;
}

WitnessCertificate make_certificate(const OmegaSet& omega_i, const OmegaSet& omega_j,
                                    std::uint64_t x, mpfr_prec_t prec) {
    WitnessCertificate cert;
    cert.field_spec = omega_i.field().spec_string();
    cert.omega_i_desc = omega_i.description();
    cert.omega_j_desc = omega_j.description();
    cert.bound = x;
    cert.hypothesis = check_hypothesis(omega_i, omega_j, x);
    cert.form = difference_form(omega_i, omega_j, x);
    cert.numeric_value = cert.form.evaluate(prec);
    cert.verdict = classify(cert.form);
    if (cert.verdict == WitnessVerdict::ZeroDifference) {
        cert.statement =
            "gamma(Omega_i)/delta(Omega_i) - gamma(Omega_j)/delta(Omega_j) reduces to the "
            "empty logarithm: the normalized constants coincide at this truncation";
    } else {
        cert.statement =
            "the difference equals log(alpha) with alpha = " + cert.form.str() +
            " in exponent form; alpha is algebraic, positive, and alpha != 1 because the "
            "exponent vector is nonzero (unique prime factorization with rational "
            "exponents), so the difference is transcendental conditional on Lindemann's "
            "theorem";
    }
    return cert;
}

Real numeric_crosscheck(const WitnessCertificate& cert, const Real& gamma_i,
                        const Real& gamma_j, const DeltaValue& delta_i,
                        const DeltaValue& delta_j, mpfr_prec_t prec) {
    Real lhs = gamma_i / Real::of_q(delta_i.exact, prec);
    lhs -= gamma_j / Real::of_q(delta_j.exact, prec);
    Real rhs = cert.form.evaluate(prec);
    return abs(lhs - rhs);
}

}  // namespace ekron
