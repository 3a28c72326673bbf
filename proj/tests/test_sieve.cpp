#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "ekron/sieve.hpp"
#include "oracles.hpp"

using namespace ekron;

namespace {

const NumberField& qi() {
    static NumberField f = NumberField::quadratic(-1);
    return f;
}

}  // namespace

TEST_CASE("rational field counts one ideal per norm") {
    IdealCountTable t = build_table(NumberField::rationals(), 10);
    for (std::uint64_t m = 1; m <= 10; ++m) CHECK(t.a(m) == 1);
    CHECK(t.cumulative(10) == 10);
}

TEST_CASE("Q(i) counts match the worked values") {
    IdealCountTable t = build_table(qi(), 25);
    CHECK(t.a(1) == 1);
    CHECK(t.a(2) == 1);
    CHECK(t.a(3) == 0);
    CHECK(t.a(4) == 1);
    CHECK(t.a(5) == 2);
    CHECK(t.a(9) == 1);
    CHECK(t.a(25) == 3);
}

TEST_CASE("excluding an Euler factor removes exactly its multiples") {
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);
    IdealCountTable t = build_table(qi(), 10, {p2});
    CHECK(t.a(2) == 0);
    CHECK(t.a(4) == 0);
    CHECK(t.a(8) == 0);
    CHECK(t.a(5) == 2);
    CHECK(t.a(9) == 1);
    CHECK(t.a(10) == 0);

    // excluding one split conjugate halves the factor, not the prime
    PrimeIdeal p5a = make_prime_ideal(qi(), 5, 0);
    IdealCountTable t5 = build_table(qi(), 25, {p5a});
    CHECK(t5.a(5) == 1);
    CHECK(t5.a(25) == 1);
}

TEST_CASE("serial and segmented kernels build identical tables") {
    std::vector<NumberField> fields = {NumberField::rationals(), qi(),
                                       NumberField::quadratic(5), NumberField::cyclotomic(5),
                                       NumberField::cyclotomic(8)};
    for (const NumberField& field : fields) {
        for (std::uint64_t x : {1ULL, 2ULL, 97ULL, 4096ULL, 100000ULL}) {
            IdealCountTable serial = build_table_serial(field, x);
            IdealCountTable parallel = build_table(field, x);
            CHECK(serial.counts() == parallel.counts());
        }
    }
    // with exclusions
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);
    PrimeIdeal p5a = make_prime_ideal(qi(), 5, 0);
    IdealCountTable serial = build_table_serial(qi(), 50000, {p2, p5a});
    IdealCountTable parallel = build_table(qi(), 50000, {p2, p5a});
    CHECK(serial.counts() == parallel.counts());
}

TEST_CASE("tables are bit-identical regardless of thread count and segment size") {
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    IdealCountTable one = build_table(qi(), 200000);
    omp_set_num_threads(saved > 1 ? saved : 2);
    IdealCountTable many = build_table(qi(), 200000);
    CHECK(one.counts() == many.counts());

    SieveOptions tiny;
    tiny.segment_size = 4096;
    IdealCountTable small_segments = build_table(qi(), 200000, {}, tiny);
    CHECK(one.counts() == small_segments.counts());
}

TEST_CASE("Q(i) equals the Kronecker-character divisor sum oracle") {
    const std::uint64_t x = 10000;
    IdealCountTable t = build_table(qi(), x);
    std::vector<std::uint64_t> expected = oracles::chi4_divisor_counts(x);
    for (std::uint64_t m = 1; m <= x; ++m) {
        REQUIRE_MESSAGE(t.a(m) == expected[m], "mismatch at m = ", m);
    }
}

TEST_CASE("Q(zeta_5) equals direct enumeration") {
    const std::uint64_t x = 1000;
    IdealCountTable t = build_table(NumberField::cyclotomic(5), x);
    std::vector<std::uint64_t> expected =
        oracles::enumeration_counts(NumberField::cyclotomic(5), x);
    for (std::uint64_t m = 1; m <= x; ++m) {
        REQUIRE_MESSAGE(t.a(m) == expected[m], "mismatch at m = ", m);
    }
}

TEST_CASE("excluded table equals the full table times the inverse Euler factors") {
    // full * (1 - u_q) per excluded conjugate, exact integer identity
    const std::uint64_t x = 2000;
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);
    PrimeIdeal p5a = make_prime_ideal(qi(), 5, 0);
    IdealCountTable full = build_table(qi(), x);
    IdealCountTable excl = build_table(qi(), x, {p2, p5a});

    std::vector<long long> derived(full.counts().begin(), full.counts().end());
    for (std::uint64_t q : {2ULL, 5ULL}) {
        for (std::uint64_t m = x; m >= q; --m)
            derived[m] -= derived[m / q] * (m % q == 0 ? 1 : 0);
    }
    for (std::uint64_t m = 1; m <= x; ++m)
        REQUIRE(derived[m] == static_cast<long long>(excl.a(m)));
}

TEST_CASE("a_m is multiplicative (spot check)") {
    IdealCountTable t = build_table(qi(), 10000);
    auto coprime = [](std::uint64_t a, std::uint64_t b) {
        while (b) { std::uint64_t r = a % b; a = b; b = r; }
        return a == 1;
    };
    for (std::uint64_t u = 2; u <= 90; ++u)
        for (std::uint64_t v = u + 1; v <= 100; ++v)
            if (coprime(u, v)) CHECK(t.a(u * v) == t.a(u) * t.a(v));
}

TEST_CASE("partial zeta: trivial and reference values") {
    IdealCountTable t1 = build_table(qi(), 1);
    CHECK(partial_zeta(t1, 2.0).to_double() == 1.0);

    // sum 1/m^2 to 10^5 approaches pi^2/6 within the integral tail bound
    IdealCountTable tq = build_table(NumberField::rationals(), 100000);
    double val = partial_zeta(tq, 2.0).to_double();
    double target = M_PI * M_PI / 6.0;
    CHECK(std::abs(val - target) < 1.0 / 100000.0 + 1e-9);

    // Q(i): truncated sum vs truncated Euler product over prime ideals
    IdealCountTable ti = build_table(qi(), 10000);
    double sum = partial_zeta(ti, 2.0).to_double();
    double euler = 1.0;
    for (const PrimeIdeal& p : enumerate_prime_ideals(qi(), 10000)) {
        double np = static_cast<double>(p.norm);
        euler *= 1.0 / (1.0 - 1.0 / (np * np));
    }
    CHECK(std::abs(sum - euler) < 1e-3);
}

TEST_CASE("harmonic sums: worked values and prefix consistency") {
    auto close_to = [](const Real& value, const ExactRational& expect) {
        Real gap = abs(value - Real::of_q(expect));
        return gap.to_double() < 1e-35;
    };

    IdealCountTable tq = build_table(NumberField::rationals(), 10);
    CHECK(close_to(harmonic_ideal_sum(tq, 3), ExactRational(11, 6)));

    // 1 + 1/2 + 1/4 + 2/5 = 43/20
    IdealCountTable ti = build_table(qi(), 10);
    CHECK(close_to(harmonic_ideal_sum(ti, 5), ExactRational(43, 20)));

    // odd integers only: 1 + 1/3 + 1/5 + 1/7 = 176/105
    PrimeIdeal two = make_prime_ideal(NumberField::rationals(), 2, 0);
    IdealCountTable odd = build_table(NumberField::rationals(), 10, {two});
    CHECK(close_to(harmonic_ideal_sum(odd, 8), ExactRational(176, 105)));

    // prefix snapshots equal the individual sums bit for bit
    IdealCountTable big = build_table(qi(), 5000);
    std::vector<std::uint64_t> ts = {1, 7, 100, 1234, 5000};
    std::vector<Real> prefix = harmonic_prefix(big, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(prefix[i] == harmonic_ideal_sum(big, ts[i]));
}

TEST_CASE("A(x)/x converges to rho at the Lemma rate (trend)") {
    const double rho = M_PI / 4.0;
    IdealCountTable t = build_table(qi(), 1 << 22);
    // least-squares slope of log err against log x should be clearly negative
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::uint64_t x = 1 << 12; x <= (1ULL << 22); x <<= 1) {
        double err = std::abs(static_cast<double>(t.cumulative(x)) / static_cast<double>(x) - rho);
        double lx = std::log(static_cast<double>(x)), ly = std::log(err);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope < -0.4);  // Lemma guarantees at least x^{-1/2}
    double err_small =
        std::abs(static_cast<double>(t.cumulative(1 << 12)) / double(1 << 12) - rho);
    double err_large =
        std::abs(static_cast<double>(t.cumulative(1 << 22)) / double(1ULL << 22) - rho);
    CHECK(err_large < err_small);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(build_table(qi(), 0), usage_error);
    PrimeIdeal foreign = make_prime_ideal(NumberField::quadratic(5), 11, 0);
    CHECK_THROWS_AS(build_table(qi(), 10, {foreign}), usage_error);
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);
    CHECK_THROWS_AS(build_table(qi(), 10, {p2, p2}), usage_error);
    IdealCountTable t = build_table(qi(), 10);
    CHECK_THROWS_AS((void)t.cumulative(11), usage_error);
    CHECK_THROWS_AS((void)partial_zeta(t, 1.0), usage_error);
    CHECK_THROWS_AS((void)harmonic_ideal_sum(t, 11), usage_error);
}
