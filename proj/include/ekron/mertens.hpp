#pragma once

#include <optional>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/logform.hpp"
#include "ekron/real.hpp"
#include "ekron/residues.hpp"

namespace ekron {

// One row of the Mertens/Rosen table: delta_K over all prime ideals of norm
// <= x, normalized by rho_K log x, against e^{-gamma}.
struct AsymptoticRow {
    std::uint64_t x = 0;
    ExactRational delta_exact;   // valid when exact == true
    bool exact = true;           // false after the floating-product fallback kicked in
    Real delta_value;            // delta as a working-precision real (always set)
    Real normalized;             // delta * rho_K * log x
    Real target;                 // e^{-gamma}
    Real relative_error;
};

struct RosenOptions {
    // switch from the exact rational running product to a floating one after
    // this many prime ideals
    std::uint64_t exact_threshold = 100000;
    mpfr_prec_t prec = kDefaultPrecision;
    SieveOptions sieve;  // only used when gamma_reference must be computed
};

// Rows for ascending checkpoints xs. gamma_reference is the Euler-Mascheroni
// constant; when absent it is computed from the rationals via the residues
// module (bound 10^6, two-term model).
std::vector<AsymptoticRow> rosen_table(const NumberField& field,
                                       const std::vector<std::uint64_t>& xs,
                                       const ResidueEstimate& rho,
                                       std::optional<Real> gamma_reference = std::nullopt,
                                       const RosenOptions& options = {});

}  // namespace ekron
