#include "ekron/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>
#include <unordered_map>

namespace ekron {

namespace {

constexpr std::uint64_t kBlockGranularity = 1ULL << 16;

// C(n, r) with overflow detection; exact at every intermediate step.
std::uint64_t binom_checked(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > UINT64_MAX) throw data_error("64-bit overflow in ideal count (binomial)");
    }
    return static_cast<std::uint64_t>(acc);
}

// #{ideals of norm p^k} with g_eff equal-degree primes of residue degree f
// above p: the number of ways to write k = f * (c_1 + ... + c_{g_eff}).
std::uint64_t prime_power_count(std::uint32_t f, std::uint32_t g_eff, std::uint32_t k) {
    if (k == 0) return 1;
    if (g_eff == 0 || k % f != 0) return 0;
    return binom_checked(static_cast<std::uint64_t>(k / f) + g_eff - 1, g_eff - 1);
}

// excluded-conjugate multiplicities per rational prime, validated
std::unordered_map<std::uint64_t, std::uint32_t> exclusion_counts(
    const NumberField& field, const std::vector<PrimeIdeal>& excluded) {
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    for (const PrimeIdeal& p : excluded) {
        if (p.field != field)
            throw usage_error("excluded prime ideal belongs to a different field");
        ++counts[p.p];
    }
    for (auto& [p, c] : counts) {
        SplittingType st = splitting_type_unchecked(field, p);
        if (c > st.g)
            throw usage_error("more excluded conjugates above p = " + std::to_string(p) +
                              " than exist (g = " + std::to_string(st.g) + ")");
    }
    return counts;
}

std::vector<PrimeIdeal> normalize_excluded(const NumberField& field,
                                           std::vector<PrimeIdeal> excluded) {
    std::sort(excluded.begin(), excluded.end());
    auto dup = std::adjacent_find(excluded.begin(), excluded.end());
    if (dup != excluded.end()) throw usage_error("duplicate prime ideal in excluded set");
    for (const PrimeIdeal& p : excluded)
        if (p.field != field)
            throw usage_error("excluded prime ideal belongs to a different field");
    return excluded;
}

void build_block_sums(IdealCountTable& table, std::vector<std::uint64_t>& block_sums,
                      const std::vector<std::uint64_t>& counts) {
    (void)table;
    std::uint64_t nblocks = (counts.size() + kBlockGranularity - 1) / kBlockGranularity;
    block_sums.assign(nblocks + 1, 0);
    std::uint64_t running = 0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        std::uint64_t lo = b * kBlockGranularity;
        std::uint64_t hi = std::min<std::uint64_t>(counts.size(), lo + kBlockGranularity);
        for (std::uint64_t m = lo; m < hi; ++m)
            running = checked_add(running, counts[m], "cumulative ideal count");
        block_sums[b + 1] = running;
    }
}

// odd-prime data for the segmented kernel: exact-division test via the
// multiplicative inverse mod 2^64 (q = r * inv; p | r iff q <= thresh, and
// then q = r / p), plus the precomputed ideal counts per p-power exponent
struct SmallPrimeData {
    std::uint64_t p;
    std::uint64_t inv;
    std::uint64_t thresh;
    std::vector<std::uint64_t> count_at;  // count_at[k] = #ideals of norm p^k
};

constexpr std::uint64_t kCountOverflow = UINT64_MAX;

std::uint64_t inverse_mod_pow64(std::uint64_t p) {
    std::uint64_t inv = p;  // Newton: inv *= 2 - p*inv, doubling correct bits
    for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
    return inv;
}

std::vector<std::uint64_t> power_count_table(std::uint64_t p, std::uint32_t f,
                                             std::uint32_t g_eff, std::uint64_t x) {
    std::vector<std::uint64_t> table;
    std::uint64_t pk = 1;
    for (std::uint32_t k = 0;; ++k) {
        try {
            table.push_back(prime_power_count(f, g_eff, k));
        } catch (const data_error&) {
            table.push_back(kCountOverflow);
        }
        if (pk > x / p) break;
        pk *= p;
    }
    return table;
}

}  // namespace

std::uint64_t IdealCountTable::cumulative(std::uint64_t t) const {
    if (t > bound_) throw usage_error("cumulative(t): t exceeds table bound");
    std::uint64_t block = (t + 1) / kBlockGranularity;
    std::uint64_t sum = block_sums_[block];
    for (std::uint64_t m = block * kBlockGranularity; m <= t; ++m) sum += counts_[m];
    return sum;
}

IdealCountTable build_table_serial(const NumberField& field, std::uint64_t x,
                                   std::vector<PrimeIdeal> excluded) {
    SieveOptions opts;
    opts.parallel = false;
    return build_table(field, x, std::move(excluded), opts);
}

IdealCountTable build_table(const NumberField& field, std::uint64_t x,
                            std::vector<PrimeIdeal> excluded, const SieveOptions& options) {
    if (x < 1) throw usage_error("sieve bound must be >= 1");

    IdealCountTable table;
    table.field_ = field;
    table.bound_ = x;
    table.excluded_ = normalize_excluded(field, std::move(excluded));
    auto excl = exclusion_counts(field, table.excluded_);
    auto excluded_above = [&](std::uint64_t p) -> std::uint32_t {
        auto it = excl.find(p);
        return it == excl.end() ? 0 : it->second;
    };

    std::vector<std::uint64_t>& a = table.counts_;

    if (!options.parallel) {
        // reference kernel: multiply the Dirichlet series by each Euler
        // factor 1/(1 - u_q) in turn; the ascending in-place pass generates
        // all powers of q
        a.assign(x + 1, 0);
        a[1] = 1;
        for (std::uint64_t p : primes_up_to(x)) {
            SplittingType st = splitting_type_unchecked(field, p);
            std::uint64_t q = pow_within(p, st.f, x);
            if (q == 0) continue;
            std::uint32_t reps = st.g - excluded_above(p);
            for (std::uint32_t r = 0; r < reps; ++r)
                for (std::uint64_t m = 1; m * q <= x; ++m)
                    a[m * q] = checked_add(a[m * q], a[m], "ideal count a_m");
        }
        build_block_sums(table, table.block_sums_, a);
        return table;
    }

    // Segmented kernel: a_m is multiplicative, so each entry factors as
    // m = prod p^k and a_m = prod (count of ideals of norm p^k). Every entry
    // is computed independently of block boundaries and scheduling, which
    // makes the blocks embarrassingly parallel and the table bit-identical
    // for any thread count.
    std::vector<std::uint64_t> primes = primes_up_to(x);

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (root * root > x) --root;
    while ((root + 1) * (root + 1) <= x) ++root;

    std::vector<std::uint64_t> count2;   // p = 2, indexed by v_2(m)
    std::vector<SmallPrimeData> small;   // odd p <= sqrt(x)
    std::vector<std::uint64_t> large_p;  // p > sqrt(x), with their a_p
    std::vector<std::uint64_t> large_count;
    for (std::uint64_t p : primes) {
        SplittingType st = splitting_type_unchecked(field, p);
        std::uint32_t g_eff = st.g - excluded_above(p);
        if (p == 2) {
            count2 = power_count_table(2, st.f, g_eff, x);
        } else if (p <= root) {
            SmallPrimeData sp;
            sp.p = p;
            sp.inv = inverse_mod_pow64(p);
            sp.thresh = UINT64_MAX / p;
            sp.count_at = power_count_table(p, st.f, g_eff, x);
            small.push_back(std::move(sp));
        } else {
            // k = 1 is the only reachable exponent: count is g_eff iff f = 1
            large_p.push_back(p);
            large_count.push_back(st.f == 1 ? g_eff : 0);
        }
    }

    a.resize(x + 1);
    a[0] = 0;

    const std::uint64_t min_chunk = std::max<std::uint64_t>(
        1ULL << 18, x / (4 * static_cast<std::uint64_t>(omp_get_max_threads()) + 1));
    const std::uint64_t chunk =
        std::max<std::uint64_t>(std::min(options.segment_size, min_chunk), 1024);
    const std::int64_t nchunks = static_cast<std::int64_t>((x + chunk - 1) / chunk);

    bool overflow = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : overflow)
    for (std::int64_t ci = 0; ci < nchunks; ++ci) {
        if (overflow) continue;  // reduction copy: thread-local early exit
        std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk + 1;
        std::uint64_t hi = std::min(x, lo + chunk - 1);
        std::fill(a.begin() + lo, a.begin() + hi + 1, 1);
        bool bad = false;

        if (!count2.empty()) {
            for (std::uint64_t m = lo + (lo & 1); m <= hi; m += 2) {
                auto k = static_cast<std::uint32_t>(__builtin_ctzll(m));
                std::uint64_t cnt = count2[k];
                if (cnt == kCountOverflow || __builtin_mul_overflow(a[m], cnt, &a[m]))
                    bad = true;
            }
        }
        for (const SmallPrimeData& sp : small) {
            if (sp.p > hi) break;
            std::uint64_t start = std::max(sp.p, ((lo + sp.p - 1) / sp.p) * sp.p);
            for (std::uint64_t m = start; m <= hi; m += sp.p) {
                // p | m by construction, so the first reduced quotient is exact
                std::uint64_t r = m * sp.inv;
                std::uint32_t k = 1;
                while (r * sp.inv <= sp.thresh) {
                    r *= sp.inv;
                    ++k;
                }
                std::uint64_t cnt = sp.count_at[k];
                if (cnt == kCountOverflow || __builtin_mul_overflow(a[m], cnt, &a[m]))
                    bad = true;
            }
        }
        // primes above sqrt(x) divide m exactly once
        for (std::size_t pi = 0; pi < large_p.size(); ++pi) {
            std::uint64_t p = large_p[pi];
            if (p > hi) break;
            std::uint64_t cnt = large_count[pi];
            std::uint64_t start = std::max(p, ((lo + p - 1) / p) * p);
            for (std::uint64_t m = start; m <= hi; m += p)
                if (__builtin_mul_overflow(a[m], cnt, &a[m])) bad = true;
        }
        overflow = overflow || bad;
    }
    if (overflow) throw data_error("64-bit overflow in ideal count a_m");

    build_block_sums(table, table.block_sums_, a);
    return table;
}

Real partial_zeta(const IdealCountTable& table, double s, mpfr_prec_t prec) {
    if (!(s > 1.0)) throw usage_error("partial_zeta requires s > 1");
    Real s_r(s, prec);
    Real term(prec);
    KahanSum sum(prec);
    const auto& counts = table.counts();
    for (std::uint64_t m = 1; m < counts.size(); ++m) {
        if (counts[m] == 0) continue;
        mpfr_set_ui(term.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_pow(term.raw(), term.raw(), s_r.raw(), MPFR_RNDN);
        mpfr_ui_div(term.raw(), 1, term.raw(), MPFR_RNDN);
        mpfr_mul_ui(term.raw(), term.raw(), static_cast<unsigned long>(counts[m]), MPFR_RNDN);
        sum.add(term);
    }
    return sum.value();
}

std::vector<Real> harmonic_prefix(const IdealCountTable& table,
                                  const std::vector<std::uint64_t>& ts, mpfr_prec_t prec) {
    for (std::size_t j = 0; j + 1 < ts.size(); ++j)
        if (ts[j] > ts[j + 1]) throw usage_error("harmonic_prefix thresholds must ascend");
    if (!ts.empty() && ts.back() > table.bound())
        throw usage_error("harmonic sum threshold exceeds table bound");

    std::vector<Real> out;
    out.reserve(ts.size());
    KahanSum sum(prec);
    Real term(prec);
    const auto& counts = table.counts();
    std::size_t j = 0;
    for (std::uint64_t m = 1; m < counts.size() && j < ts.size(); ++m) {
        while (j < ts.size() && ts[j] < m) {
            out.push_back(sum.value());
            ++j;
        }
        if (j == ts.size()) break;
        if (counts[m] != 0) {
            mpfr_set_ui(term.raw(), static_cast<unsigned long>(counts[m]), MPFR_RNDN);
            mpfr_div_ui(term.raw(), term.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
            sum.add(term);
        }
    }
    while (j < ts.size()) {
        out.push_back(sum.value());
        ++j;
    }
    return out;
}

Real harmonic_ideal_sum(const IdealCountTable& table, std::uint64_t t, mpfr_prec_t prec) {
    return harmonic_prefix(table, {t}, prec).front();
}

}  // namespace ekron
