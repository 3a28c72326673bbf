#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/logform.hpp"
#include "ekron/residues.hpp"

namespace ekron {

// A set of prime ideals: either an explicit finite list or a named predicate
// rule. Infinite sets are only ever touched through truncations
// Omega(x) = members of norm <= x, so every computation below is finite.
class OmegaSet {
public:
    static OmegaSet empty(const NumberField& field);
    static OmegaSet explicit_set(const NumberField& field, std::vector<PrimeIdeal> members);
    static OmegaSet rule(const NumberField& field, std::string name,
                         std::function<bool(const PrimeIdeal&)> predicate);
    // built-in rules: "all", "degree-one", "split-only"
    static OmegaSet builtin_rule(const NumberField& field, const std::string& name);

    const NumberField& field() const { return field_; }
    bool is_rule() const { return static_cast<bool>(predicate_); }
    const std::string& description() const { return description_; }

    // Omega(x): members of norm <= x, sorted by (norm, p, index).
    std::vector<PrimeIdeal> truncate(std::uint64_t x) const;

    // N_Omega at the truncation: rational primes under the members, sorted.
    std::vector<std::uint64_t> rational_primes(std::uint64_t x) const;

private:
    OmegaSet(const NumberField& field, std::string description)
        : field_(field), description_(std::move(description)) {}

    NumberField field_;
    std::string description_;
    std::vector<PrimeIdeal> members_;  // explicit sets only, sorted
    std::function<bool(const PrimeIdeal&)> predicate_;
};

// Parse "p:f:index,p:f:index,..." into an explicit OmegaSet (empty string ->
// empty set).
OmegaSet parse_omega_spec(const NumberField& field, const std::string& spec);

struct DeltaValue {
    ExactRational exact;     // prod (1 - 1/N(p)) over Omega(x), in (0, 1]
    std::uint64_t bound = 0;
};

// delta_K(Omega(x)), exact.
DeltaValue delta(const OmegaSet& omega, std::uint64_t x);

struct ConvergenceSum {
    Real value;                          // sum log N(p) / (N(p) - 1) over Omega(x)
    std::optional<LogLinearForm> form;   // exact form when |Omega(x)| <= 64
    std::size_t truncation_size = 0;
};

ConvergenceSum convergence_sum(const OmegaSet& omega, std::uint64_t x,
                               mpfr_prec_t prec = kDefaultPrecision);

// Exact coefficient form of the convergence sum of a finite truncation:
// each prime ideal contributes f/(p^f - 1) on log p.
LogLinearForm convergence_form(const std::vector<PrimeIdeal>& truncation);

// Closed form: delta_K(Omega(x)) * (gamma_K + sum_{p in Omega(x)} log N(p)/(N(p)-1)).
Real gamma_omega_closed(const OmegaSet& omega, std::uint64_t x, const EKEstimate& gamma_k,
                        mpfr_prec_t prec = kDefaultPrecision);

struct GammaOmegaEstimate {
    Real value;
    Real residual;   // extrapolation residual
    Real raw_S;      // S at the largest sample point
    std::uint64_t bound = 0;
    ExtrapolationModel model = ExtrapolationModel::TwoTerm;
};

// Direct limit: S(t) = (1/rho) sum over ideals of norm <= t coprime to
// P(Omega(t)) of 1/N(I) - delta(Omega(t)) log t, evaluated on geometric
// sample points (re-truncating Omega at each) and extrapolated with the same
// model as euler_kronecker.
GammaOmegaEstimate gamma_omega_direct(const OmegaSet& omega, std::uint64_t x,
                                      const ResidueEstimate& rho,
                                      ExtrapolationModel model = ExtrapolationModel::TwoTerm,
                                      mpfr_prec_t prec = kDefaultPrecision,
                                      const SieveOptions& sieve_options = {});

}  // namespace ekron
