#include "ekron/field.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>

namespace ekron {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

bool is_squarefree(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    // remaining n is 1, a prime, a product of two primes, or a prime square
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return !(r * r == n && r > 1);
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

NumberField NumberField::rationals() { return NumberField(FieldKind::Rational, 0, 1); }

NumberField NumberField::quadratic(std::int64_t d) {
    if (d == 0 || d == 1)
        throw usage_error("quadratic field parameter d must be a squarefree integer != 0, 1");
    std::uint64_t ad = d < 0 ? static_cast<std::uint64_t>(-d) : static_cast<std::uint64_t>(d);
    if (ad > 1000000000000ULL)
        throw usage_error("quadratic field parameter |d| too large (limit 10^12)");
    if (!is_squarefree(ad))
        throw usage_error("quadratic field parameter d = " + std::to_string(d) +
                          " is not squarefree");
    return NumberField(FieldKind::Quadratic, d, 2);
}

NumberField NumberField::cyclotomic(std::uint32_t m) {
    if (m < 3 || m % 4 == 2)
        throw usage_error("cyclotomic field parameter m must satisfy m >= 3, m != 2 (mod 4)");
    if (m > 1000000)
        throw usage_error("cyclotomic field parameter m too large (limit 10^6)");
    auto phi = static_cast<std::uint32_t>(euler_phi_u64(m));
    return NumberField(FieldKind::Cyclotomic, m, phi);
}

std::int64_t NumberField::quad_d() const {
    if (kind_ != FieldKind::Quadratic) throw internal_error("quad_d on non-quadratic field");
    return param_;
}

std::int64_t NumberField::fundamental_discriminant() const {
    std::int64_t d = quad_d();
    return mod_pos(d, 4) == 1 ? d : 4 * d;
}

std::uint32_t NumberField::zeta_m() const {
    if (kind_ != FieldKind::Cyclotomic) throw internal_error("zeta_m on non-cyclotomic field");
    return static_cast<std::uint32_t>(param_);
}

mpz_class NumberField::discriminant() const {
    switch (kind_) {
        case FieldKind::Rational:
            return 1;
        case FieldKind::Quadratic:
            return mpz_class(static_cast<long>(fundamental_discriminant()));
        case FieldKind::Cyclotomic: {
            std::uint32_t m = zeta_m();
            std::uint32_t n = degree_;
            mpz_class num;
            mpz_ui_pow_ui(num.get_mpz_t(), m, n);
            mpz_class den = 1;
            std::uint32_t rest = m;
            for (std::uint32_t p = 2; p <= rest; ++p) {
                if (rest % p) continue;
                while (rest % p == 0) rest /= p;
                mpz_class pk;
                mpz_ui_pow_ui(pk.get_mpz_t(), p, n / (p - 1));
                den *= pk;
            }
            mpz_class disc = num / den;
            if ((n / 2) % 2 == 1) disc = -disc;
            return disc;
        }
    }
    throw internal_error("unreachable field kind");
}

std::string NumberField::spec_string() const {
    switch (kind_) {
        case FieldKind::Rational: return "Q";
        case FieldKind::Quadratic: return "Q(sqrt," + std::to_string(param_) + ")";
        case FieldKind::Cyclotomic: return "Q(zeta," + std::to_string(param_) + ")";
    }
    throw internal_error("unreachable field kind");
}

int kronecker_symbol(std::int64_t a, std::int64_t n) {
    // classic binary algorithm; handles all integer arguments
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // pull out twos from n: (a|2) = 0 if a even, +1 if a = +-1 (mod 8), else -1
    while ((n & 1) == 0) {
        n >>= 1;
        std::int64_t am = mod_pos(a, 8);
        if (am == 3 || am == 5) result = -result;
        else if (am == 0 || am == 2 || am == 4 || am == 6) return 0;
    }
    a = mod_pos(a, n);
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            std::int64_t nm = n & 7;
            if (nm == 3 || nm == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // these bases are a deterministic witness set for all n < 3.3 * 10^24
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;

    constexpr std::uint64_t kSimpleLimit = 1ULL << 24;
    if (limit <= kSimpleLimit) {
        std::vector<char> composite(limit + 1, 0);
        for (std::uint64_t i = 2; i * i <= limit; ++i)
            if (!composite[i])
                for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
        for (std::uint64_t i = 2; i <= limit; ++i)
            if (!composite[i]) primes.push_back(i);
        return primes;
    }

    // segmented: base primes up to sqrt(limit), then fixed-size windows
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<std::uint64_t> base = primes_up_to(root);
    primes.reserve(static_cast<size_t>(
        static_cast<double>(limit) / std::log(static_cast<double>(limit)) * 1.15));
    primes = base;

    constexpr std::uint64_t kSegment = 1ULL << 22;
    std::vector<char> mark(kSegment);
    for (std::uint64_t lo = root + 1; lo <= limit; lo += kSegment) {
        std::uint64_t hi = std::min(limit, lo + kSegment - 1);
        std::fill(mark.begin(), mark.begin() + (hi - lo + 1), 0);
        for (std::uint64_t p : base) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 1;
        }
        for (std::uint64_t v = lo; v <= hi; ++v)
            if (!mark[v - lo]) primes.push_back(v);
    }
    return primes;
}

std::uint64_t euler_phi_u64(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

std::uint32_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
    if (n == 1) return 1;
    a %= n;
    std::uint64_t x = a;
    std::uint32_t order = 1;
    while (x != 1) {
        x = mulmod_u64(x, a, n);
        ++order;
        if (order > n) throw internal_error("multiplicative_order: a not invertible mod n");
    }
    return order;
}

SplittingType splitting_type_unchecked(const NumberField& field, std::uint64_t p) {
    switch (field.kind()) {
        case FieldKind::Rational:
            return {1, 1, 1};
        case FieldKind::Quadratic: {
            std::int64_t D = field.fundamental_discriminant();
            std::uint64_t aD = D < 0 ? static_cast<std::uint64_t>(-D) : static_cast<std::uint64_t>(D);
            if (aD % p == 0) return {2, 1, 1};
            int chi = kronecker_symbol(D, static_cast<std::int64_t>(p));
            return chi == 1 ? SplittingType{1, 1, 2} : SplittingType{1, 2, 1};
        }
        case FieldKind::Cyclotomic: {
            std::uint64_t m = field.zeta_m();
            std::uint64_t mprime = m;
            std::uint64_t pa = 1;
            while (mprime % p == 0) { mprime /= p; pa *= p; }
            std::uint32_t f = multiplicative_order(p, mprime);
            auto e = static_cast<std::uint32_t>(euler_phi_u64(pa));
            std::uint32_t n = field.degree();
            if (n % (e * f) != 0)
                throw internal_error("cyclotomic splitting: efg does not divide degree");
            return {e, f, n / (e * f)};
        }
    }
    throw internal_error("unreachable field kind");
}

SplittingType splitting_type(const NumberField& field, std::uint64_t p) {
    if (!is_prime_u64(p))
        throw usage_error("splitting_type: p = " + std::to_string(p) + " is not prime");
    return splitting_type_unchecked(field, p);
}

PrimeIdeal make_prime_ideal(const NumberField& field, std::uint64_t p, std::uint32_t index) {
    SplittingType st = splitting_type(field, p);
    if (index >= st.g)
        throw usage_error("prime ideal index " + std::to_string(index) + " out of range [0," +
                          std::to_string(st.g) + ") above p = " + std::to_string(p));
    PrimeIdeal ideal;
    ideal.field = field;
    ideal.p = p;
    ideal.e = st.e;
    ideal.f = st.f;
    ideal.index = index;
    ideal.norm = checked_pow(p, st.f, "prime ideal norm p^f");
    return ideal;
}

std::vector<PrimeIdeal> enumerate_prime_ideals(const NumberField& field,
                                               std::uint64_t norm_bound) {
    if (norm_bound < 2) throw usage_error("enumerate_prime_ideals: norm bound must be >= 2");
    std::vector<PrimeIdeal> out;
    for (std::uint64_t p : primes_up_to(norm_bound)) {
        SplittingType st = splitting_type_unchecked(field, p);
        std::uint64_t norm = pow_within(p, st.f, norm_bound);
        if (norm == 0) continue;
        for (std::uint32_t i = 0; i < st.g; ++i) {
            PrimeIdeal ideal;
            ideal.field = field;
            ideal.p = p;
            ideal.norm = norm;
            ideal.e = st.e;
            ideal.f = st.f;
            ideal.index = i;
            out.push_back(ideal);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NumberField parse_field_spec(std::string_view spec) {
    auto fail = [&](size_t pos, const std::string& msg) -> NumberField {
        throw usage_error("field spec \"" + std::string(spec) + "\": " + msg + " at position " +
                          std::to_string(pos));
    };
    if (spec == "Q") return NumberField::rationals();
    if (spec.size() < 2 || spec[0] != 'Q' || spec[1] != '(')
        return fail(0, "expected \"Q\" or \"Q(...\"");
    if (spec.back() != ')') return fail(spec.size() - 1, "expected closing ')'");
    std::string_view body = spec.substr(2, spec.size() - 3);
    size_t comma = body.find(',');
    if (comma == std::string_view::npos) return fail(2, "expected \"sqrt,<d>\" or \"zeta,<m>\"");
    std::string_view head = body.substr(0, comma);
    std::string_view arg = body.substr(comma + 1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc() || ptr != arg.data() + arg.size())
        return fail(2 + comma + 1, "expected an integer argument");
    if (head == "sqrt") return NumberField::quadratic(value);
    if (head == "zeta") {
        if (value < 0) return fail(2 + comma + 1, "m must be positive");
        return NumberField::cyclotomic(static_cast<std::uint32_t>(value));
    }
    return fail(2, "unknown field constructor \"" + std::string(head) + "\"");
}

}  // namespace ekron
