#include "ekron/residues.hpp"

#include <algorithm>
#include <cmath>

#include "ekron/fit.hpp"
#include "ekron/logform.hpp"

namespace ekron {

namespace {

constexpr std::int64_t kMaxExactDiscriminant = 1000000;

// prod (1 - 1/N(p)) over a finite truncation, exact
ExactRational truncation_delta(const std::vector<PrimeIdeal>& omega) {
    ExactRational d = 1;
    for (const PrimeIdeal& p : omega) {
        mpz_class norm;
        mpz_ui_pow_ui(norm.get_mpz_t(), p.p, p.f);
        d *= ExactRational(norm - 1, norm);
    }
    d.canonicalize();
    return d;
}

Real inv_root(std::uint64_t t, std::uint32_t n, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.raw(), static_cast<unsigned long>(t), MPFR_RNDN);
    mpfr_rootn_ui(r.raw(), r.raw(), n, MPFR_RNDN);
    mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    return r;
}

}  // namespace

const char* residue_method_name(ResidueMethod m) {
    switch (m) {
        case ResidueMethod::ExactRational: return "exact_rational";
        case ResidueMethod::ExactLValue: return "exact_L_value";
        case ResidueMethod::Fit: return "fit";
    }
    return "?";
}

const char* extrapolation_model_name(ExtrapolationModel m) {
    switch (m) {
        case ExtrapolationModel::Raw: return "raw";
        case ExtrapolationModel::OneTerm: return "one-term";
        case ExtrapolationModel::TwoTerm: return "two-term";
    }
    return "?";
}

ExtrapolationModel parse_extrapolation_model(const std::string& name) {
    if (name == "raw") return ExtrapolationModel::Raw;
    if (name == "one-term") return ExtrapolationModel::OneTerm;
    if (name == "two-term") return ExtrapolationModel::TwoTerm;
    throw usage_error("unknown extrapolation model \"" + name +
                      "\" (expected raw, one-term or two-term)");
}

ResidueEstimate residue_exact(const NumberField& field, mpfr_prec_t prec) {
    ResidueEstimate est;
    est.field = field;
    est.uncertainty = Real(prec);

    switch (field.kind()) {
        case FieldKind::Rational: {
            est.value = Real::of_ui(1, prec);
            est.method = ResidueMethod::ExactRational;
            return est;
        }
        case FieldKind::Quadratic: {
            std::int64_t D = field.fundamental_discriminant();
            std::int64_t aD = D < 0 ? -D : D;
            if (aD > kMaxExactDiscriminant)
                throw unsupported_exact_residue(
                    "character sum over |D| = " + std::to_string(aD) +
                    " terms is impractical; use residue_fit");
            est.method = ResidueMethod::ExactLValue;
            if (D < 0) {
                // L(1, chi_D) = -pi |D|^{-3/2} sum_{a=1}^{|D|-1} chi_D(a) a
                std::int64_t weighted = 0;
                for (std::int64_t a = 1; a < aD; ++a)
                    weighted += kronecker_symbol(D, a) * a;
                Real value = Real::pi(prec);
                value *= Real::of_si(-weighted, prec);
                Real denom = sqrt(Real::of_si(aD, prec));
                denom *= Real::of_si(aD, prec);
                value /= denom;
                est.value = value;
            } else {
                // L(1, chi_D) = -D^{-1/2} sum_{a=1}^{D-1} chi_D(a) log sin(pi a / D)
                Real pi = Real::pi(prec);
                KahanSum sum(prec);
                Real term(prec);
                for (std::int64_t a = 1; a < aD; ++a) {
                    int chi = kronecker_symbol(D, a);
                    if (chi == 0) continue;
                    mpfr_mul_si(term.raw(), pi.raw(), a, MPFR_RNDN);
                    mpfr_div_si(term.raw(), term.raw(), aD, MPFR_RNDN);
                    mpfr_sin(term.raw(), term.raw(), MPFR_RNDN);
                    mpfr_log(term.raw(), term.raw(), MPFR_RNDN);
                    if (chi < 0) mpfr_neg(term.raw(), term.raw(), MPFR_RNDN);
                    sum.add(term);
                }
                Real value = -sum.value();
                value /= sqrt(Real::of_si(aD, prec));
                est.value = value;
            }
            return est;
        }
        case FieldKind::Cyclotomic:
            throw unsupported_exact_residue(
                "exact residue for cyclotomic fields is not implemented; use residue_fit");
    }
    throw internal_error("unreachable field kind");
}

std::vector<std::uint64_t> limit_sample_points(std::uint64_t x) {
    std::vector<std::uint64_t> ts;
    for (int k = 7; k >= 0; --k) {
        std::uint64_t t = x >> k;
        if (t >= 1 && (ts.empty() || t != ts.back())) ts.push_back(t);
    }
    return ts;
}

ResidueEstimate residue_fit(const NumberField& field, std::uint64_t x, mpfr_prec_t prec,
                            const SieveOptions& sieve_options) {
    if (x < 1000) throw usage_error("residue_fit requires bound >= 1000");
    IdealCountTable table = build_table(field, x, {}, sieve_options);
    std::vector<std::uint64_t> ts = limit_sample_points(x);

    const std::uint32_t n = field.degree();
    auto correction = [&](std::uint64_t t) {
        // A(t) = rho * t + c * t^{1-1/n}; for n = 1 the correction is constant
        return n == 1 ? Real::of_ui(1, prec)
                      : Real::of_ui(static_cast<unsigned long>(t), prec) * inv_root(t, n, prec);
    };
    std::vector<std::vector<Real>> design;
    std::vector<Real> y;
    for (std::uint64_t t : ts) {
        design.push_back({Real::of_ui(static_cast<unsigned long>(t), prec), correction(t)});
        y.push_back(Real::of_ui(static_cast<unsigned long>(table.cumulative(t)), prec));
    }
    LinearFit fit = least_squares(design, y, prec);

    // Uncertainty: the fluctuation of A(t) around the model is oscillatory,
    // so a white-noise standard error undershoots. Bound the coefficient
    // error instead: rho_err = |sum w_i E(t_i)| <= (sum |w_i|) * max |E|,
    // with max |E| measured on a dense geometric grid (6 points per octave,
    // containing the fit points) against the fitted model.
    double g00 = 0, g01 = 0, g11 = 0;
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double a = design[i][0].to_double(), b = design[i][1].to_double();
        rows.emplace_back(a, b);
        g00 += a * a;
        g01 += a * b;
        g11 += b * b;
    }
    double det = g00 * g11 - g01 * g01;
    if (det == 0) throw data_error("degenerate fit: singular normal equations");
    double z0 = g11 / det, z1 = -g01 / det;
    double sum_abs_w = 0;
    for (auto [a, b] : rows) sum_abs_w += std::fabs(z0 * a + z1 * b);

    double rho_hat = fit.coeffs[0].to_double();
    double c_hat = fit.coeffs[1].to_double();
    double max_resid = 0;
    for (int k = 0; k <= 42; ++k) {
        auto t = static_cast<std::uint64_t>(static_cast<double>(x) / std::pow(2.0, k / 6.0));
        if (t < 1) break;
        double corr = n == 1 ? 1.0
                             : static_cast<double>(t) /
                                   std::pow(static_cast<double>(t), 1.0 / n);
        double pred = rho_hat * static_cast<double>(t) + c_hat * corr;
        double resid = std::fabs(static_cast<double>(table.cumulative(t)) - pred);
        max_resid = std::max(max_resid, resid);
    }

    ResidueEstimate est;
    est.field = field;
    est.value = fit.coeffs[0];
    est.method = ResidueMethod::Fit;
    est.uncertainty = Real(sum_abs_w * max_resid, prec);
    est.bound = x;
    if (est.value.sign() <= 0)
        throw internal_error("residue fit produced a non-positive value");
    return est;
}

ResidueEstimate residue_auto(const NumberField& field, std::uint64_t x, mpfr_prec_t prec,
                             const SieveOptions& sieve_options) {
    try {
        return residue_exact(field, prec);
    } catch (const unsupported_exact_residue&) {
        return residue_fit(field, x, prec, sieve_options);
    }
}

LimitSamples coprime_limit_samples(
    const NumberField& field, std::uint64_t x,
    const std::function<std::vector<PrimeIdeal>(std::uint64_t)>& truncate,
    const Real& rho, mpfr_prec_t prec, const SieveOptions& sieve_options) {
    LimitSamples samples;
    samples.ts = limit_sample_points(x);

    // The truncation may change across sample points (rule-based sets).
    // Group consecutive sample points sharing a truncation so each group
    // costs one sieve and one harmonic pass.
    std::vector<std::vector<PrimeIdeal>> truncations;
    truncations.reserve(samples.ts.size());
    for (std::uint64_t t : samples.ts) truncations.push_back(truncate(t));

    samples.S.assign(samples.ts.size(), Real(prec));
    std::size_t lo = 0;
    while (lo < samples.ts.size()) {
        std::size_t hi = lo + 1;
        while (hi < samples.ts.size() && truncations[hi] == truncations[lo]) ++hi;
        std::vector<std::uint64_t> group_ts(samples.ts.begin() + lo, samples.ts.begin() + hi);
        IdealCountTable table =
            build_table(field, group_ts.back(), truncations[lo], sieve_options);
        std::vector<Real> h = harmonic_prefix(table, group_ts, prec);
        Real delta = Real::of_q(truncation_delta(truncations[lo]), prec);
        for (std::size_t j = lo; j < hi; ++j) {
            Real s = h[j - lo] / rho;
            Real logt = Real::log_ui(static_cast<unsigned long>(samples.ts[j]), prec);
            s -= delta * logt;
            samples.S[j] = s;
        }
        lo = hi;
    }
    return samples;
}

ExtrapolationResult extrapolate_limit(const LimitSamples& samples, std::uint32_t degree,
                                      ExtrapolationModel model, mpfr_prec_t prec) {
    if (samples.ts.empty()) throw usage_error("extrapolate_limit: no sample points");
    ExtrapolationResult out;
    out.raw_S = samples.S.back();
    if (model == ExtrapolationModel::Raw || samples.ts.size() == 1) {
        out.value = samples.S.back();
        out.residual = Real(prec);
        return out;
    }
    std::size_t k = model == ExtrapolationModel::OneTerm ? 2 : 3;
    std::vector<std::vector<Real>> design;
    std::vector<Real> y;
    for (std::size_t i = 0; i < samples.ts.size(); ++i) {
        Real u = inv_root(samples.ts[i], degree, prec);
        std::vector<Real> row{Real::of_ui(1, prec), u};
        if (k == 3) row.push_back(u * u);
        design.push_back(std::move(row));
        y.push_back(samples.S[i]);
    }
    LinearFit fit = least_squares(design, y, prec);
    out.value = fit.coeffs[0];
    out.residual = fit.residual_rms;
    return out;
}

EKEstimate euler_kronecker(const NumberField& field, std::uint64_t x, ExtrapolationModel model,
                           mpfr_prec_t prec, const SieveOptions& sieve_options,
                           std::optional<ResidueEstimate> rho) {
    if (model != ExtrapolationModel::Raw && x < 1000)
        throw usage_error("euler_kronecker with extrapolation requires bound >= 1000");
    ResidueEstimate residue =
        rho.has_value() ? *rho : residue_auto(field, x, prec, sieve_options);
    if (residue.field != field)
        throw usage_error("euler_kronecker: residue was computed for a different field");

    auto empty_truncation = [](std::uint64_t) { return std::vector<PrimeIdeal>{}; };
    LimitSamples samples =
        coprime_limit_samples(field, x, empty_truncation, residue.value, prec, sieve_options);
    ExtrapolationResult ext = extrapolate_limit(samples, field.degree(), model, prec);

    EKEstimate est;
    est.field = field;
    est.gamma = ext.value;
    est.rho = residue.value;
    est.c_k = ext.value * residue.value;
    est.bound = x;
    est.model = model;
    est.residual = ext.residual;
    est.raw_S = ext.raw_S;
    return est;
}

}  // namespace ekron
