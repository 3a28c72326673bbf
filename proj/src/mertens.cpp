#include "ekron/mertens.hpp"

#include <algorithm>

namespace ekron {

std::vector<AsymptoticRow> rosen_table(const NumberField& field,
                                       const std::vector<std::uint64_t>& xs,
                                       const ResidueEstimate& rho,
                                       std::optional<Real> gamma_reference,
                                       const RosenOptions& options) {
    if (xs.empty()) throw usage_error("rosen_table: no checkpoints");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (xs[i] >= xs[i + 1]) throw usage_error("rosen_table: checkpoints must ascend");
    if (xs.front() < 2) throw usage_error("rosen_table: checkpoints must be >= 2");
    if (rho.field != field)
        throw usage_error("rosen_table: residue belongs to a different field");

    const mpfr_prec_t prec = options.prec;
    Real gamma = gamma_reference.has_value()
                     ? *gamma_reference
                     : euler_kronecker(NumberField::rationals(), 1000000,
                                       ExtrapolationModel::TwoTerm, prec, options.sieve)
                           .gamma;
    Real target = exp(-gamma);

    std::vector<PrimeIdeal> ideals = enumerate_prime_ideals(field, xs.back());

    std::vector<AsymptoticRow> rows;
    rows.reserve(xs.size());

    // running product: numerator prod (N-1), denominator prod N, reduced only
    // at checkpoints; switches to a floating product past the threshold
    mpz_class num = 1, den = 1;
    Real float_delta = Real::of_ui(1, prec);
    bool exact = true;
    std::uint64_t count = 0;
    std::size_t idx = 0;

    for (std::uint64_t x : xs) {
        while (idx < ideals.size() && ideals[idx].norm <= x) {
            std::uint64_t norm = ideals[idx].norm;
            if (exact && count >= options.exact_threshold) {
                // carry the exact value into the floating product
                ExactRational carried(num, den);
                carried.canonicalize();
                float_delta = Real::of_q(carried, prec);
                exact = false;
            }
            if (exact) {
                num *= static_cast<unsigned long>(norm - 1);
                den *= static_cast<unsigned long>(norm);
            } else {
                Real factor = Real::of_ui(static_cast<unsigned long>(norm - 1), prec);
                factor /= Real::of_ui(static_cast<unsigned long>(norm), prec);
                float_delta *= factor;
            }
            ++count;
            ++idx;
        }

        AsymptoticRow row;
        row.x = x;
        row.exact = exact;
        if (exact) {
            row.delta_exact = ExactRational(num, den);
            row.delta_exact.canonicalize();
            row.delta_value = Real::of_q(row.delta_exact, prec);
        } else {
            row.delta_value = float_delta;
        }
        row.normalized = row.delta_value * rho.value * Real::log_ui(x, prec);
        row.target = target;
        row.relative_error = abs(row.normalized - target) / target;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ekron
