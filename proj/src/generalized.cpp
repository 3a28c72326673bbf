#include "ekron/generalized.hpp"

#include <algorithm>

namespace ekron {

OmegaSet OmegaSet::empty(const NumberField& field) { return OmegaSet(field, "{}"); }

OmegaSet OmegaSet::explicit_set(const NumberField& field, std::vector<PrimeIdeal> members) {
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw usage_error("duplicate prime ideal in explicit Omega set");
    std::string desc = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        const PrimeIdeal& p = members[i];
        if (p.field != field) throw usage_error("Omega member belongs to a different field");
        if (i) desc += ",";
        desc += std::to_string(p.p) + ":" + std::to_string(p.f) + ":" + std::to_string(p.index);
    }
    desc += "}";
    OmegaSet out(field, desc);
    out.members_ = std::move(members);
    return out;
}

OmegaSet OmegaSet::rule(const NumberField& field, std::string name,
                        std::function<bool(const PrimeIdeal&)> predicate) {
    OmegaSet out(field, "rule:" + name);
    out.predicate_ = std::move(predicate);
    return out;
}

OmegaSet OmegaSet::builtin_rule(const NumberField& field, const std::string& name) {
    if (name == "all")
        return rule(field, name, [](const PrimeIdeal&) { return true; });
    if (name == "degree-one")
        return rule(field, name, [](const PrimeIdeal& p) { return p.f == 1; });
    if (name == "split-only")
        return rule(field, name, [](const PrimeIdeal& p) {
            return splitting_type_unchecked(p.field, p.p).g >= 2;
        });
    throw usage_error("unknown Omega rule \"" + name +
                      "\" (expected all, degree-one or split-only)");
}

std::vector<PrimeIdeal> OmegaSet::truncate(std::uint64_t x) const {
    if (!predicate_) {
        std::vector<PrimeIdeal> out;
        for (const PrimeIdeal& p : members_)
            if (p.norm <= x) out.push_back(p);
        return out;  // members_ already sorted
    }
    std::vector<PrimeIdeal> out;
    if (x < 2) return out;
    for (const PrimeIdeal& p : enumerate_prime_ideals(field_, x))
        if (predicate_(p)) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> OmegaSet::rational_primes(std::uint64_t x) const {
    std::vector<std::uint64_t> out;
    for (const PrimeIdeal& p : truncate(x)) out.push_back(p.p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

OmegaSet parse_omega_spec(const NumberField& field, const std::string& spec) {
    std::vector<PrimeIdeal> members;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        std::string item = spec.substr(pos, end - pos);
        std::uint64_t vals[3];
        std::size_t ipos = 0;
        for (int k = 0; k < 3; ++k) {
            std::size_t colon = k < 2 ? item.find(':', ipos) : item.size();
            if (colon == std::string::npos)
                throw usage_error("Omega spec item \"" + item +
                                  "\" must have the form p:f:index (position " +
                                  std::to_string(pos) + ")");
            try {
                vals[k] = std::stoull(item.substr(ipos, colon - ipos));
            } catch (const std::exception&) {
                throw usage_error("Omega spec item \"" + item + "\": bad integer (position " +
                                  std::to_string(pos + ipos) + ")");
            }
            ipos = colon + 1;
        }
        PrimeIdeal ideal = make_prime_ideal(field, vals[0], static_cast<std::uint32_t>(vals[2]));
        if (ideal.f != vals[1])
            throw usage_error("Omega spec item \"" + item + "\": residue degree is " +
                              std::to_string(ideal.f) + " above p = " + std::to_string(vals[0]));
        members.push_back(ideal);
        pos = end + (end < spec.size() ? 1 : 0);
    }
    return OmegaSet::explicit_set(field, std::move(members));
}

DeltaValue delta(const OmegaSet& omega, std::uint64_t x) {
    if (x < 1) throw usage_error("delta requires bound >= 1");
    DeltaValue out;
    out.bound = x;
    out.exact = 1;
    for (const PrimeIdeal& p : omega.truncate(x)) {
        mpz_class norm;
        mpz_ui_pow_ui(norm.get_mpz_t(), p.p, p.f);
        out.exact *= ExactRational(norm - 1, norm);
    }
    out.exact.canonicalize();
    return out;
}

LogLinearForm convergence_form(const std::vector<PrimeIdeal>& truncation) {
    LogLinearForm form;
    for (const PrimeIdeal& p : truncation) {
        mpz_class norm;
        mpz_ui_pow_ui(norm.get_mpz_t(), p.p, p.f);
        ExactRational coeff(p.f, norm - 1);
        coeff.canonicalize();
        form.add_term(p.p, coeff);
    }
    return form;
}

ConvergenceSum convergence_sum(const OmegaSet& omega, std::uint64_t x, mpfr_prec_t prec) {
    std::vector<PrimeIdeal> truncation = omega.truncate(x);
    ConvergenceSum out;
    out.truncation_size = truncation.size();
    if (truncation.size() <= 64) {
        out.form = convergence_form(truncation);
        out.value = out.form->evaluate(prec);
        return out;
    }
    // large truncation: sum log N / (N - 1) directly
    KahanSum sum(prec);
    Real term(prec);
    for (const PrimeIdeal& p : truncation) {
        mpfr_log_ui(term.raw(), static_cast<unsigned long>(p.norm), MPFR_RNDN);
        mpfr_div_ui(term.raw(), term.raw(), static_cast<unsigned long>(p.norm - 1), MPFR_RNDN);
        sum.add(term);
    }
    out.value = sum.value();
    return out;
}

Real gamma_omega_closed(const OmegaSet& omega, std::uint64_t x, const EKEstimate& gamma_k,
                        mpfr_prec_t prec) {
    if (gamma_k.field != omega.field())
        throw usage_error("gamma_omega_closed: gamma_K belongs to a different field");
    DeltaValue d = delta(omega, x);
    ConvergenceSum conv = convergence_sum(omega, x, prec);
    Real value = gamma_k.gamma + conv.value;
    value *= Real::of_q(d.exact, prec);
    return value;
}

GammaOmegaEstimate gamma_omega_direct(const OmegaSet& omega, std::uint64_t x,
                                      const ResidueEstimate& rho, ExtrapolationModel model,
                                      mpfr_prec_t prec, const SieveOptions& sieve_options) {
    if (rho.field != omega.field())
        throw usage_error("gamma_omega_direct: residue belongs to a different field");
    if (model != ExtrapolationModel::Raw && x < 1000)
        throw usage_error("gamma_omega_direct with extrapolation requires bound >= 1000");

    auto truncate = [&omega](std::uint64_t t) { return omega.truncate(t); };
    LimitSamples samples =
        coprime_limit_samples(omega.field(), x, truncate, rho.value, prec, sieve_options);
    ExtrapolationResult ext = extrapolate_limit(samples, omega.field().degree(), model, prec);

    GammaOmegaEstimate est;
    est.value = ext.value;
    est.residual = ext.residual;
    est.raw_S = ext.raw_S;
    est.bound = x;
    est.model = model;
    return est;
}

}  // namespace ekron
