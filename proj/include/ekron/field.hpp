#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ekron/errors.hpp"

namespace ekron {

enum class FieldKind { Rational, Quadratic, Cyclotomic };

// A supported number field: Q, Q(sqrt(d)) with d squarefree != 0,1, or
// Q(zeta_m) with m >= 3 and m != 2 (mod 4). Small immutable value type;
// the degree is 1, 2 or phi(m).
class NumberField {
public:
    static NumberField rationals();
    static NumberField quadratic(std::int64_t d);
    static NumberField cyclotomic(std::uint32_t m);

    FieldKind kind() const { return kind_; }
    std::uint32_t degree() const { return degree_; }

    // Quadratic only: the squarefree d and the fundamental discriminant
    // (d when d = 1 mod 4, else 4d).
    std::int64_t quad_d() const;
    std::int64_t fundamental_discriminant() const;

    // Cyclotomic only: the conductor-defining m.
    std::uint32_t zeta_m() const;

    // Exact field discriminant (for Q(zeta_m):
    // (-1)^{phi(m)/2} * m^phi(m) / prod_{p|m} p^{phi(m)/(p-1)}).
    mpz_class discriminant() const;

    // Round-trips through parse_field_spec: "Q", "Q(sqrt,-1)", "Q(zeta,5)".
    std::string spec_string() const;

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.kind_ == b.kind_ && a.param_ == b.param_;
    }
    friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

private:
    NumberField(FieldKind k, std::int64_t param, std::uint32_t degree)
        : kind_(k), param_(param), degree_(degree) {}

    FieldKind kind_;
    std::int64_t param_;    // d for quadratic, m for cyclotomic, 0 for Q
    std::uint32_t degree_;
};

// Ramification index e, residue degree f, number of primes g above a
// rational prime; e*f*g equals the field degree.
struct SplittingType {
    std::uint32_t e = 1;
    std::uint32_t f = 1;
    std::uint32_t g = 1;
};

// A prime ideal above p with norm p^f. Conjugates above the same p are
// distinguished only by index in [0, g); all arithmetic in this library
// depends only on (p, e, f).
struct PrimeIdeal {
    NumberField field = NumberField::rationals();
    std::uint64_t p = 0;
    std::uint64_t norm = 0;   // p^f, overflow-checked at construction
    std::uint32_t e = 1;
    std::uint32_t f = 1;
    std::uint32_t index = 0;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.field == b.field && a.p == b.p && a.f == b.f && a.index == b.index;
    }
    friend bool operator!=(const PrimeIdeal& a, const PrimeIdeal& b) { return !(a == b); }
    // Enumeration order: by norm, then p, then conjugate index.
    friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
        return std::tuple(a.norm, a.p, a.index) < std::tuple(b.norm, b.p, b.index);
    }
};

// Kronecker symbol (a|n), computed by quadratic reciprocity.
int kronecker_symbol(std::int64_t a, std::int64_t n);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// All rational primes <= limit, ascending. Segmented above 10^7.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

std::uint64_t euler_phi_u64(std::uint64_t n);

// Multiplicative order of a modulo n (requires gcd(a, n) = 1; n >= 1).
std::uint32_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// Splitting data of p in the field. Rational: (1,1,1). Quadratic with
// fundamental discriminant D: p | D ramified, Kronecker(D|p) = +1 split,
// -1 inert. Cyclotomic(m): m = p^a m' with p coprime to m', f = ord of p
// mod m', e = phi(p^a), g = phi(m)/(e f). Throws usage_error if p is not
// prime.
SplittingType splitting_type(const NumberField& field, std::uint64_t p);

// Internal variant that skips the primality check (hot paths where p comes
// from a prime sieve).
SplittingType splitting_type_unchecked(const NumberField& field, std::uint64_t p);

// Every prime ideal with norm <= norm_bound, each conjugate once, sorted by
// (norm, p, index). Throws data_error on p^f overflow.
std::vector<PrimeIdeal> enumerate_prime_ideals(const NumberField& field,
                                               std::uint64_t norm_bound);

// Build the PrimeIdeal above p with the given conjugate index, validating
// against the splitting type.
PrimeIdeal make_prime_ideal(const NumberField& field, std::uint64_t p, std::uint32_t index);

// CLI field spec: "Q" | "Q(sqrt,<d>)" | "Q(zeta,<m>)". Errors carry the
// offending position.
NumberField parse_field_spec(std::string_view spec);

}  // namespace ekron
