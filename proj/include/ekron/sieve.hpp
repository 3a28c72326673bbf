#pragma once

#include <cstdint>
#include <vector>

#include "ekron/field.hpp"
#include "ekron/logform.hpp"
#include "ekron/real.hpp"

namespace ekron {

struct SieveOptions {
    bool parallel = true;                      // OpenMP segmented kernel vs serial reference
    std::uint64_t segment_size = 1ULL << 24;   // max entries touched per construction segment
};

// Dense table of a_m = #{integral ideals of norm m}, m <= bound, optionally
// restricted to ideals coprime to a set of excluded prime ideals (their Euler
// factors are left out of the product). Counts are exact; construction is
// overflow-checked and bit-identical regardless of thread count.
class IdealCountTable {
public:
    const NumberField& field() const { return field_; }
    std::uint64_t bound() const { return bound_; }
    const std::vector<PrimeIdeal>& excluded() const { return excluded_; }

    std::uint64_t a(std::uint64_t m) const { return counts_[m]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    // A(t) = sum_{m<=t} a_m
    std::uint64_t cumulative(std::uint64_t t) const;

private:
    friend IdealCountTable build_table(const NumberField&, std::uint64_t,
                                       std::vector<PrimeIdeal>, const SieveOptions&);

    NumberField field_ = NumberField::rationals();
    std::uint64_t bound_ = 0;
    std::vector<std::uint64_t> counts_;      // index 0 unused
    std::vector<PrimeIdeal> excluded_;       // sorted, deduplicated
    std::vector<std::uint64_t> block_sums_;  // cumulative sums at block granularity
};

// Build the table. excluded lists prime ideals whose Euler factors are
// omitted (conjugates count separately). Both kernels produce identical
// tables; options.parallel selects the OpenMP segmented kernel.
IdealCountTable build_table(const NumberField& field, std::uint64_t x,
                            std::vector<PrimeIdeal> excluded = {},
                            const SieveOptions& options = {});

// Serial reference: one in-place Euler-factor convolution pass per prime
// ideal. Kept as the ground truth the segmented kernel is tested against.
IdealCountTable build_table_serial(const NumberField& field, std::uint64_t x,
                                   std::vector<PrimeIdeal> excluded = {});

// sum_{m<=bound} a_m / m^s (s > 1), for cross-validation against the Euler
// product; O(bound) MPFR operations.
Real partial_zeta(const IdealCountTable& table, double s,
                  mpfr_prec_t prec = kDefaultPrecision);

// sum_{m<=t} a_m / m, ascending order, compensated summation.
Real harmonic_ideal_sum(const IdealCountTable& table, std::uint64_t t,
                        mpfr_prec_t prec = kDefaultPrecision);

// One ascending pass with snapshots at the given thresholds (ascending).
// Element j equals harmonic_ideal_sum(table, ts[j]) bit for bit.
std::vector<Real> harmonic_prefix(const IdealCountTable& table,
                                  const std::vector<std::uint64_t>& ts,
                                  mpfr_prec_t prec = kDefaultPrecision);

}  // namespace ekron
