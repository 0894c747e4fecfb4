#include "coulombkit/poly.hpp"
#include "coulombkit/ratfunc.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ck;

namespace {

// vars: t1, hbar  (rank-1 layout)
Poly t1() { return Poly::variable(2, 0); }
Poly hb() { return Poly::variable(2, 1); }
Poly c2(long n, long d = 1) { return Poly::constant(2, Rational(n, d)); }

Poly random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, int max_terms) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<unsigned> expo(0, max_deg);
    Poly p(nvars);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Exponents e(nvars, 0);
        unsigned budget = max_deg;
        for (std::size_t v = 0; v < nvars; ++v) {
            unsigned x = expo(rng) % (budget + 1);
            e[v] = x;
            budget -= x;
        }
        p.add_term(e, Rational(coef(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("poly ring basics") {
    CHECK((t1() + hb()) * (t1() - hb()) == t1() * t1() - hb() * hb());
    std::mt19937_64 rng(1);
    CHECK((random_poly(rng, 2, 3, 4) * Poly(2)).is_zero());
    Poly a = Poly::variable(2, 0);
    Poly half_h = hb() * Rational(1, 2);
    Poly sq = (a + half_h) * (a + half_h);
    Poly expect = a * a + a * hb() + hb() * hb() * Rational(1, 4);
    CHECK(sq == expect);
}

TEST_CASE("poly ring axioms on random instances") {
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 500; ++i) {
        Poly a = random_poly(rng, 3, 4, 4);
        Poly b = random_poly(rng, 3, 4, 4);
        Poly c = random_poly(rng, 3, 4, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("exact division and gcd") {
    Poly p = (t1() * t1() - hb() * hb());
    Poly q = t1() + hb();
    auto quo = Poly::divide_exact(p, q);
    REQUIRE(quo.has_value());
    CHECK(*quo == t1() - hb());
    CHECK_FALSE(Poly::divide_exact(t1(), hb()).has_value());

    Poly g = Poly::gcd(p, q * (t1() + c2(3)));
    CHECK(g == q);

    // gcd with constants is a unit
    CHECK(Poly::gcd(c2(4), p) == c2(1));
}

TEST_CASE("gcd on random products") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        Poly a = random_poly(rng, 3, 2, 3);
        Poly b = random_poly(rng, 3, 2, 3);
        Poly g = random_poly(rng, 3, 2, 2);
        if (g.is_zero()) continue;
        Poly pa = a * g, pb = b * g;
        if (pa.is_zero() || pb.is_zero()) continue;
        Poly d = Poly::gcd(pa, pb);
        CHECK(d.divides(pa));
        CHECK(d.divides(pb));
        CHECK(g.divides(d * Poly::constant(3, Rational(1))));
    }
}

TEST_CASE("rational function normalization") {
    RatFunc r(t1() * t1() - hb() * hb(), t1() + hb());
    CHECK(r.is_polynomial());
    CHECK(r.num() == t1() - hb());

    RatFunc z(Poly(2), t1());
    CHECK(z.is_zero());
    CHECK(z.den() == c2(1));

    // (2t)/(4t^2) -> 1/(2t): denominator primitive, numerator carries 1/2
    RatFunc h(t1() * Rational(2), t1() * t1() * Rational(4));
    CHECK(h.den() == t1());
    CHECK(h.num() == c2(1, 2));

    CHECK_THROWS_AS(RatFunc(t1(), Poly(2)), SchemaError);

    // cross-multiplied equality via canonical form
    RatFunc a(t1() * hb(), t1() * t1());
    RatFunc b(hb(), t1());
    CHECK(a == b);
}

TEST_CASE("poly printing is canonical") {
    Poly p = t1() * t1() + t1() * hb() + hb() * hb() * Rational(1, 4);
    CHECK(p.to_string({"t1", "hbar"}) == "t1^2+t1*hbar+1/4*hbar^2");
    CHECK(Poly(2).to_string({"t1", "hbar"}) == "0");
    Poly m = c2(-1) * t1() - c2(7);
    CHECK(m.to_string({"t1", "hbar"}) == "-t1-7");
}
