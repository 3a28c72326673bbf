#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekron/ideal.hpp"

using namespace ekron;

namespace {

const NumberField& qi() {
    static NumberField f = NumberField::quadratic(-1);
    return f;
}

FactoredIdeal ideal_of(const NumberField& field,
                       std::vector<std::pair<PrimeIdeal, std::uint32_t>> fs) {
    return FactoredIdeal::from_factors(field, std::move(fs));
}

}  // namespace

TEST_CASE("mobius") {
    PrimeIdeal p5a = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal p5b = make_prime_ideal(qi(), 5, 1);
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);

    CHECK(mobius(FactoredIdeal::unit(qi())) == 1);
    CHECK(mobius(ideal_of(qi(), {{p5a, 1}, {p5b, 1}})) == 1);
    CHECK(mobius(ideal_of(qi(), {{p2, 2}})) == 0);
    CHECK(mobius(ideal_of(qi(), {{p5a, 1}})) == -1);
    CHECK(mobius(ideal_of(qi(), {{p5a, 1}, {p5b, 1}, {p2, 1}})) == -1);
}

TEST_CASE("mangoldt is the symbolic log of the prime-power norm") {
    PrimeIdeal p3 = make_prime_ideal(qi(), 3, 0);
    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);

    LogLinearForm l9 = mangoldt(ideal_of(qi(), {{p3, 2}}));
    // log N(P) = log 9 = 2 log 3
    REQUIRE(l9.terms().size() == 1);
    CHECK(l9.terms().at(3) == ExactRational(2));

    CHECK(mangoldt(FactoredIdeal::unit(qi())).is_zero());
    CHECK(mangoldt(ideal_of(qi(), {{p3, 1}, {p2, 1}})).is_zero());
    CHECK(mangoldt(ideal_of(qi(), {{p2, 5}})).terms().at(2) == ExactRational(1));
}

TEST_CASE("gcd: examples and algebraic laws") {
    PrimeIdeal p = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal q = make_prime_ideal(qi(), 5, 1);
    PrimeIdeal r = make_prime_ideal(qi(), 2, 0);
    FactoredIdeal unit = FactoredIdeal::unit(qi());

    CHECK(gcd(ideal_of(qi(), {{p, 2}, {q, 1}}), unit) == unit);
    CHECK(gcd(ideal_of(qi(), {{p, 2}, {q, 1}}), ideal_of(qi(), {{p, 1}, {q, 3}})) ==
          ideal_of(qi(), {{p, 1}, {q, 1}}));
    CHECK(gcd(ideal_of(qi(), {{p, 1}}), ideal_of(qi(), {{q, 1}})) == unit);

    std::vector<FactoredIdeal> corpus = {
        unit,
        ideal_of(qi(), {{p, 1}}),
        ideal_of(qi(), {{q, 2}}),
        ideal_of(qi(), {{p, 2}, {r, 1}}),
        ideal_of(qi(), {{p, 1}, {q, 1}, {r, 3}}),
        ideal_of(qi(), {{r, 2}}),
    };
    for (const auto& a : corpus) {
        CHECK(gcd(a, a) == a);
        for (const auto& b : corpus) {
            FactoredIdeal g = gcd(a, b);
            CHECK(g == gcd(b, a));
            CHECK(divides(g, a));
            CHECK(divides(g, b));
            for (const PrimeIdeal& pp : {p, q, r})
                CHECK(g.valuation(pp) == std::min(a.valuation(pp), b.valuation(pp)));
            for (const auto& c : corpus)
                CHECK(gcd(gcd(a, b), c) == gcd(a, gcd(b, c)));
        }
    }

    FactoredIdeal other = FactoredIdeal::unit(NumberField::quadratic(5));
    CHECK_THROWS_AS(gcd(corpus[1], other), usage_error);
}

TEST_CASE("norm and mobius are multiplicative over coprime ideals") {
    PrimeIdeal p = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal q = make_prime_ideal(qi(), 5, 1);
    PrimeIdeal r = make_prime_ideal(qi(), 2, 0);
    PrimeIdeal s = make_prime_ideal(qi(), 3, 0);

    std::vector<FactoredIdeal> left = {ideal_of(qi(), {{p, 2}}), ideal_of(qi(), {{p, 1}, {r, 1}}),
                                       FactoredIdeal::unit(qi())};
    std::vector<FactoredIdeal> right = {ideal_of(qi(), {{q, 1}}), ideal_of(qi(), {{s, 2}}),
                                        ideal_of(qi(), {{q, 1}, {s, 1}})};
    for (const auto& a : left)
        for (const auto& b : right) {
            REQUIRE(gcd(a, b).is_unit());
            FactoredIdeal ab = multiply(a, b);
            CHECK(ab.norm() == a.norm() * b.norm());
            CHECK(mobius(ab) == mobius(a) * mobius(b));
        }
    CHECK(ideal_of(qi(), {{s, 1}}).norm() == 9);
}

TEST_CASE("divisor enumeration") {
    PrimeIdeal p = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal q = make_prime_ideal(qi(), 5, 1);
    FactoredIdeal unit = FactoredIdeal::unit(qi());

    auto du = divisors(unit);
    REQUIRE(du.size() == 1);
    CHECK(du[0] == unit);

    auto dp2 = divisors(ideal_of(qi(), {{p, 2}}));
    REQUIRE(dp2.size() == 3);

    auto dpq = divisors(ideal_of(qi(), {{p, 1}, {q, 1}}));
    REQUIRE(dpq.size() == 4);

    // cap: P^7 Q^7 has 64 divisors; a cap of 32 must refuse and name itself
    CHECK_THROWS_WITH_AS(
        (void)divisors(ideal_of(qi(), {{p, 7}, {q, 7}}), 32),
        doctest::Contains("32"), data_error);
}

TEST_CASE("quotient requires divisibility") {
    PrimeIdeal p = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal q = make_prime_ideal(qi(), 5, 1);
    FactoredIdeal a = ideal_of(qi(), {{p, 2}, {q, 1}});
    CHECK(quotient_exact(a, ideal_of(qi(), {{p, 1}})) == ideal_of(qi(), {{p, 1}, {q, 1}}));
    CHECK(quotient_exact(a, a).is_unit());
    CHECK_THROWS_AS(quotient_exact(a, ideal_of(qi(), {{q, 2}})), usage_error);
    CHECK_THROWS_AS(quotient_exact(ideal_of(qi(), {{p, 1}}), ideal_of(qi(), {{q, 1}})),
                    usage_error);
}

TEST_CASE("Mobius divisor-sum identity: worked examples") {
    FactoredIdeal unit = FactoredIdeal::unit(qi());
    auto [l0, r0] = check_mobius_identity(unit);
    CHECK(l0 == 1);
    CHECK(r0 == 1);

    PrimeIdeal p2 = make_prime_ideal(qi(), 2, 0);
    auto [l1, r1] = check_mobius_identity(ideal_of(qi(), {{p2, 1}}));
    CHECK(l1 == ExactRational(1, 2));

    // norms 5 and 9: (1 - 1/5)(1 - 1/9) = 32/45
    PrimeIdeal p5 = make_prime_ideal(qi(), 5, 0);
    PrimeIdeal p3 = make_prime_ideal(qi(), 3, 0);
    auto [l2, r2] = check_mobius_identity(ideal_of(qi(), {{p5, 1}, {p3, 1}}));
    CHECK(l2 == ExactRational(32, 45));
    CHECK(r2 == ExactRational(32, 45));
}

TEST_CASE("von Mangoldt divisor-sum identity: worked examples") {
    auto [l0, r0] = check_mangoldt_identity(FactoredIdeal::unit(qi()));
    CHECK(l0.is_zero());
    CHECK(r0.is_zero());

    PrimeIdeal p3 = make_prime_ideal(qi(), 3, 0);
    auto [l1, r1] = check_mangoldt_identity(ideal_of(qi(), {{p3, 1}}));
    REQUIRE(l1.terms().size() == 1);
    CHECK(l1.terms().at(3) == ExactRational(-2));  // -log 9
    CHECK(l1 == r1);

    auto [l2, r2] = check_mangoldt_identity(ideal_of(qi(), {{p3, 2}}));
    CHECK(l2.is_zero());
    CHECK(r2.is_zero());
}

TEST_CASE("identity corpus sweep over four fields (reduced norms)") {
    for (const NumberField& field :
         {NumberField::rationals(), NumberField::quadratic(-1), NumberField::quadratic(5),
          NumberField::cyclotomic(5)}) {
        IdentityCheckSummary s = verify_ideal_identities(field, 100, 3, 3);
        CHECK(s.ideals_checked > 1000);
        CHECK(s.mobius_failures == 0);
        CHECK(s.mangoldt_failures == 0);
    }
}

TEST_CASE("from_factors validation") {
    PrimeIdeal p = make_prime_ideal(qi(), 5, 0);
    FactoredIdeal merged = ideal_of(qi(), {{p, 1}, {p, 2}});
    CHECK(merged.valuation(p) == 3);
    PrimeIdeal foreign = make_prime_ideal(NumberField::quadratic(5), 11, 0);
    CHECK_THROWS_AS(ideal_of(qi(), {{foreign, 1}}), usage_error);
}
