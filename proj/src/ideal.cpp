#include "ekron/ideal.hpp"

#include <algorithm>

namespace ekron {

FactoredIdeal FactoredIdeal::from_factors(
    const NumberField& field, std::vector<std::pair<PrimeIdeal, std::uint32_t>> factors) {
    FactoredIdeal out(field);
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [p, e] : factors) {
        if (p.field != field) throw usage_error("ideal factor belongs to a different field");
        if (e == 0) continue;
        if (!out.factors_.empty() && out.factors_.back().first == p)
            out.factors_.back().second += e;
        else
            out.factors_.emplace_back(p, e);
    }
    return out;
}

std::uint32_t FactoredIdeal::valuation(const PrimeIdeal& p) const {
    for (const auto& [q, e] : factors_)
        if (q == p) return e;
    return 0;
}

bool FactoredIdeal::is_squarefree() const {
    for (const auto& [p, e] : factors_)
        if (e >= 2) return false;
    return true;
}

mpz_class FactoredIdeal::norm() const {
    mpz_class n = 1;
    for (const auto& [p, e] : factors_) {
        mpz_class pf;
        mpz_ui_pow_ui(pf.get_mpz_t(), p.p, static_cast<unsigned long>(p.f) * e);
        n *= pf;
    }
    return n;
}

FactoredIdeal FactoredIdeal::times(const PrimeIdeal& p, std::uint32_t e) const {
    if (e == 0) return *this;
    if (p.field != field_) throw usage_error("ideal factor belongs to a different field");
    FactoredIdeal out(field_);
    out.factors_.reserve(factors_.size() + 1);
    bool placed = false;
    for (const auto& [q, qe] : factors_) {
        if (q == p) {
            out.factors_.emplace_back(q, qe + e);
            placed = true;
        } else {
            if (!placed && p < q) {
                out.factors_.emplace_back(p, e);
                placed = true;
            }
            out.factors_.emplace_back(q, qe);
        }
    }
    if (!placed) out.factors_.emplace_back(p, e);
    return out;
}

std::string FactoredIdeal::str() const {
    if (factors_.empty()) return "(1)";
    std::string s;
    for (const auto& [p, e] : factors_) {
        if (!s.empty()) s += "*";
        s += "P(" + std::to_string(p.p) + ";f=" + std::to_string(p.f) + ";i=" +
             std::to_string(p.index) + ")";
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

int mobius(const FactoredIdeal& a) {
    int sign = 1;
    for (const auto& [p, e] : a.factors()) {
        (void)p;
        if (e >= 2) return 0;
        sign = -sign;
    }
    return sign;
}

LogLinearForm mangoldt(const FactoredIdeal& a) {
    LogLinearForm form;
    if (a.num_prime_factors() == 1) {
        const auto& [p, e] = a.factors().front();
        (void)e;
        form.add_term(p.p, ExactRational(p.f));
    }
    return form;
}

FactoredIdeal gcd(const FactoredIdeal& a, const FactoredIdeal& b) {
    if (a.field() != b.field()) throw usage_error("gcd of ideals over different fields");
    FactoredIdeal out = FactoredIdeal::unit(a.field());
    for (const auto& [p, e] : a.factors()) {
        std::uint32_t eb = b.valuation(p);
        if (eb > 0) out = out.times(p, std::min(e, eb));
    }
    return out;
}

FactoredIdeal multiply(const FactoredIdeal& a, const FactoredIdeal& b) {
    if (a.field() != b.field()) throw usage_error("product of ideals over different fields");
    FactoredIdeal out = a;
    for (const auto& [p, e] : b.factors()) out = out.times(p, e);
    return out;
}

bool divides(const FactoredIdeal& divisor, const FactoredIdeal& of) {
    if (divisor.field() != of.field()) return false;
    for (const auto& [p, e] : divisor.factors())
        if (of.valuation(p) < e) return false;
    return true;
}

FactoredIdeal quotient_exact(const FactoredIdeal& numerator, const FactoredIdeal& divisor) {
    if (numerator.field() != divisor.field())
        throw usage_error("ideal quotient over different fields");
    FactoredIdeal out = FactoredIdeal::unit(numerator.field());
    for (const auto& [p, e] : numerator.factors()) {
        std::uint32_t ed = divisor.valuation(p);
        if (ed > e) throw usage_error("ideal quotient I*J^-1 requires J | I");
        if (ed < e) out = out.times(p, e - ed);
    }
    for (const auto& [p, e] : divisor.factors())
        if (numerator.valuation(p) < e) throw usage_error("ideal quotient I*J^-1 requires J | I");
    return out;
}

void for_each_divisor(const FactoredIdeal& a,
                      const std::function<void(const FactoredIdeal&)>& visit,
                      std::uint64_t cap) {
    std::uint64_t count = 1;
    for (const auto& [p, e] : a.factors()) {
        (void)p;
        count = checked_mul(count, e + 1ULL, "divisor count");
        if (count > cap)
            throw data_error("divisor count exceeds cap " + std::to_string(cap));
    }

    // odometer over exponent vectors
    const auto& factors = a.factors();
    std::vector<std::uint32_t> exps(factors.size(), 0);
    for (;;) {
        FactoredIdeal d = FactoredIdeal::unit(a.field());
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (exps[i] > 0) d = d.times(factors[i].first, exps[i]);
        visit(d);
        std::size_t i = 0;
        while (i < exps.size()) {
            if (exps[i] < factors[i].second) {
                ++exps[i];
                break;
            }
            exps[i] = 0;
            ++i;
        }
        if (i == exps.size()) break;
    }
}

std::vector<FactoredIdeal> divisors(const FactoredIdeal& a, std::uint64_t cap) {
    std::vector<FactoredIdeal> out;
    for_each_divisor(a, [&](const FactoredIdeal& d) { out.push_back(d); }, cap);
    return out;
}

std::pair<ExactRational, ExactRational> check_mobius_identity(const FactoredIdeal& a,
                                                              std::uint64_t cap) {
    ExactRational lhs = 0;
    for_each_divisor(a, [&](const FactoredIdeal& j) {
        int mu = mobius(j);
        if (mu == 0) return;
        ExactRational term(mu);
        term /= ExactRational(j.norm());
        lhs += term;
    }, cap);
    lhs.canonicalize();

    ExactRational rhs = 1;
    for (const auto& [p, e] : a.factors()) {
        (void)e;
        mpz_class norm;
        mpz_ui_pow_ui(norm.get_mpz_t(), p.p, p.f);
        rhs *= ExactRational(norm - 1, norm);
    }
    rhs.canonicalize();

    if (lhs != rhs)
        throw internal_error("Mobius divisor-sum identity failed on " + a.str());
    return {lhs, rhs};
}

std::pair<LogLinearForm, LogLinearForm> check_mangoldt_identity(const FactoredIdeal& a,
                                                                std::uint64_t cap) {
    // lhs: mu(I) * log N(I) = mu(I) * sum_P e_P f_P log p
    LogLinearForm lhs;
    int mu_a = mobius(a);
    if (mu_a != 0) {
        for (const auto& [p, e] : a.factors())
            lhs.add_term(p.p, ExactRational(mu_a) * ExactRational(static_cast<unsigned long>(p.f) * e));
    }

    LogLinearForm rhs;
    for_each_divisor(a, [&](const FactoredIdeal& j) {
        LogLinearForm lambda = mangoldt(j);
        if (lambda.is_zero()) return;
        int mu = mobius(quotient_exact(a, j));
        if (mu == 0) return;
        lambda.scale(ExactRational(-mu));
        rhs += lambda;
    }, cap);

    if (lhs != rhs)
        throw internal_error("von Mangoldt divisor-sum identity failed on " + a.str());
    return {lhs, rhs};
}

IdentityCheckSummary verify_ideal_identities(const NumberField& field, std::uint64_t max_norm,
                                             std::uint32_t max_factors,
                                             std::uint32_t max_exp) {
    std::vector<PrimeIdeal> all = enumerate_prime_ideals(field, max_norm);

    std::vector<PrimeIdeal> pool;
    for (std::size_t i = 0; i < all.size() && pool.size() < 10; ++i) pool.push_back(all[i]);
    for (std::size_t i = all.size() >= 2 ? all.size() - 2 : 0; i < all.size(); ++i)
        if (std::find(pool.begin(), pool.end(), all[i]) == pool.end()) pool.push_back(all[i]);

    IdentityCheckSummary summary;
    auto run_checks = [&](const FactoredIdeal& ideal) {
        ++summary.ideals_checked;
        try {
            check_mobius_identity(ideal);
        } catch (const internal_error&) {
            ++summary.mobius_failures;
        }
        try {
            check_mangoldt_identity(ideal);
        } catch (const internal_error&) {
            ++summary.mangoldt_failures;
        }
    };

    // every exponent pattern over every subset of the pool with <= max_factors
    // primes (subset = increasing index tuples; exponents roll like an odometer)
    std::vector<std::size_t> subset;
    auto sweep_exponents = [&](const std::vector<std::size_t>& indices) {
        std::vector<std::uint32_t> exps(indices.size(), 1);
        for (;;) {
            FactoredIdeal ideal = FactoredIdeal::unit(field);
            for (std::size_t k = 0; k < indices.size(); ++k)
                ideal = ideal.times(pool[indices[k]], exps[k]);
            run_checks(ideal);
            std::size_t i = 0;
            while (i < exps.size() && exps[i] == max_exp) exps[i++] = 1;
            if (i == exps.size()) break;
            ++exps[i];
        }
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        sweep_exponents(subset);
        if (subset.size() == max_factors) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    recurse(recurse, 0);

    // breadth: every squarefree pair over the full prime list
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            FactoredIdeal ideal = FactoredIdeal::unit(field).times(all[i], 1).times(all[j], 1);
            run_checks(ideal);
        }
    return summary;
}

}  // namespace ekron
