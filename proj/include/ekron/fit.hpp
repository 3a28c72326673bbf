#pragma once

#include <vector>

#include "ekron/real.hpp"

namespace ekron {

// Ordinary least squares for a small dense design matrix (rows x k), solved
// by normal equations with partial-pivot elimination in working precision.
struct LinearFit {
    std::vector<Real> coeffs;
    Real residual_rms;    // sqrt(RSS / max(1, m - k))
    Real stderr_first;    // residual-based standard error of coeffs[0]
};

LinearFit least_squares(const std::vector<std::vector<Real>>& design,
                        const std::vector<Real>& y, mpfr_prec_t prec);

}  // namespace ekron
