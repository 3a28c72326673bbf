#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/real.hpp"
#include "ekron/sieve.hpp"

namespace ekron {

class unsupported_exact_residue : public error {
public:
    using error::error;
};

enum class ResidueMethod { ExactRational, ExactLValue, Fit };
const char* residue_method_name(ResidueMethod m);

struct ResidueEstimate {
    NumberField field = NumberField::rationals();
    Real value;
    ResidueMethod method = ResidueMethod::ExactRational;
    Real uncertainty;        // 0 for exact methods
    std::uint64_t bound = 0; // sieve bound when method == Fit
};

enum class ExtrapolationModel { Raw, OneTerm, TwoTerm };
const char* extrapolation_model_name(ExtrapolationModel m);
ExtrapolationModel parse_extrapolation_model(const std::string& name);

struct EKEstimate {
    NumberField field = NumberField::rationals();
    Real gamma;              // the extrapolated limit
    Real c_k;                // gamma * rho, by construction
    Real rho;                // residue used
    std::uint64_t bound = 0;
    ExtrapolationModel model = ExtrapolationModel::TwoTerm;
    Real residual;           // RMS extrapolation residual
    Real raw_S;              // un-extrapolated S at the largest sample point
};

// rho_K in closed form: 1 for Q; L(1, chi_D) for quadratic fields by the
// finite character-sum formulas (odd case: -pi |D|^{-3/2} sum chi(a) a;
// even case: -D^{-1/2} sum chi(a) log sin(pi a / D)). Cyclotomic fields
// throw unsupported_exact_residue; use residue_fit.
ResidueEstimate residue_exact(const NumberField& field, mpfr_prec_t prec = kDefaultPrecision);

// Least-squares fit of A(t) = rho t + c t^{1-1/n} over geometric sample
// points t = x/2^k. Uncertainty is the residual-based standard error.
ResidueEstimate residue_fit(const NumberField& field, std::uint64_t x,
                            mpfr_prec_t prec = kDefaultPrecision,
                            const SieveOptions& sieve_options = {});

// Exact where available, fit otherwise.
ResidueEstimate residue_auto(const NumberField& field, std::uint64_t x,
                             mpfr_prec_t prec = kDefaultPrecision,
                             const SieveOptions& sieve_options = {});

// Geometric sample points floor(x / 2^k), k = 7..0, deduplicated ascending.
std::vector<std::uint64_t> limit_sample_points(std::uint64_t x);

// Evaluates S(t) = (1/rho) * sum_{N(I)<=t, I coprime to the excluded set at t}
// 1/N(I) - delta(t) * log t at the sample points, where truncate(t) supplies
// the excluded prime ideals and their exact density product delta(t). This is
// the single code path shared by the plain Euler-Kronecker limit (empty
// truncation) and the generalized one.
struct LimitSamples {
    std::vector<std::uint64_t> ts;
    std::vector<Real> S;
};
LimitSamples coprime_limit_samples(
    const NumberField& field, std::uint64_t x,
    const std::function<std::vector<PrimeIdeal>(std::uint64_t)>& truncate,
    const Real& rho, mpfr_prec_t prec, const SieveOptions& sieve_options);

struct ExtrapolationResult {
    Real value;
    Real residual;
    Real raw_S;
};
// Fit S(t) = value + c1 t^{-1/n} (+ c2 t^{-2/n}) and return the constant term.
ExtrapolationResult extrapolate_limit(const LimitSamples& samples, std::uint32_t degree,
                                      ExtrapolationModel model, mpfr_prec_t prec);

// gamma_K via the limit of S(t) with convergence acceleration. rho may be
// supplied to avoid recomputation; otherwise exact-or-fit is chosen.
EKEstimate euler_kronecker(const NumberField& field, std::uint64_t x,
                           ExtrapolationModel model = ExtrapolationModel::TwoTerm,
                           mpfr_prec_t prec = kDefaultPrecision,
                           const SieveOptions& sieve_options = {},
                           std::optional<ResidueEstimate> rho = std::nullopt);

}  // namespace ekron
