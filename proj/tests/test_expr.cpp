#include "coulombkit/expr.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ck;

namespace {

AlgebraContext u1(long long n, Mode mode) {
    MatterContent m{{{Weight{{1}}, n}}};
    m.normalize();
    return AlgebraContext{1, m, mode};
}

}  // namespace

TEST_CASE("parsing basics") {
    AlgebraContext ctx = u1(2, Mode::quantized);
    CHECK(parse_element("r[0]", ctx) == AbelianElement::unit(ctx));
    CHECK(parse_element("1", ctx) == AbelianElement::unit(ctx));
    CHECK(parse_element("t1", ctx) == AbelianElement::from_poly(ctx, ctx.t(0)));
    CHECK(parse_element("hbar", ctx) == AbelianElement::from_poly(ctx, ctx.hbar()));
    CHECK(parse_element("1/2*hbar", ctx) ==
          AbelianElement::from_poly(ctx, ctx.hbar() * Rational(1, 2)));
    CHECK(parse_element("-3", ctx) == AbelianElement::from_poly(ctx, ctx.scalar(-3)));
    CHECK(parse_element("r[2]", ctx) ==
          AbelianElement::monomial(ctx, Coweight{{2}}, ctx.one()));
    CHECK(parse_element("(t1+hbar)^2", ctx) ==
          AbelianElement::from_poly(ctx, (ctx.t(0) + ctx.hbar()).pow(2)));
    CHECK(parse_element("2*r[1] - r[1]", ctx) ==
          AbelianElement::monomial(ctx, Coweight{{1}}, ctx.one()));

    AlgebraContext c2{2, {}, Mode::classical};
    CHECK(parse_element("r[2,-1]", c2) ==
          AbelianElement::monomial(c2, Coweight{{2, -1}}, c2.one()));
    CHECK(parse_element(" t1 * t2 ", c2) ==
          AbelianElement::from_poly(c2, c2.t(0) * c2.t(1)));

    AlgebraContext fl = u1(2, Mode::flavored);
    CHECK(parse_element("b1", fl) == AbelianElement::from_poly(fl, fl.flavor(0)));
}

TEST_CASE("parse errors carry positions") {
    AlgebraContext ctx = u1(1, Mode::quantized);
    for (const char* bad : {"r[", "r[1,2]", "t9", "b1", "q", "1+", "(t1", "r[1]^-2", "1/0"}) {
        CHECK_THROWS_AS(parse_element(bad, ctx), ExprParseError);
    }
    AlgebraContext cl = u1(1, Mode::classical);
    CHECK_THROWS_AS(parse_element("hbar", cl), ExprParseError);
}

TEST_CASE("quantized evaluation through the parser") {
    AlgebraContext ctx = u1(2, Mode::quantized);
    // xy = (a + hbar/2)^2
    AbelianElement prod = parse_element("r[1]*r[-1]", ctx);
    CHECK(prod == parse_element("(t1+1/2*hbar)^2", ctx));
    // [x, a] = hbar x
    CHECK(parse_element("r[1]*t1 - t1*r[1]", ctx) == parse_element("hbar*r[1]", ctx));
}

TEST_CASE("printing is canonical") {
    AlgebraContext ctx = u1(2, Mode::quantized);
    CHECK(print_element(AbelianElement::unit(ctx)) == "1");
    CHECK(print_element(AbelianElement::zero(ctx)) == "0");
    CHECK(print_element(parse_element("r[1]*r[-1]", ctx)) == "t1^2+t1*hbar+1/4*hbar^2");
    CHECK(print_element(parse_element("r[1]*t1-t1*r[1]", ctx)) == "hbar*r[1]");
    CHECK(print_element(parse_element("-r[2]", ctx)) == "-r[2]");
    CHECK(print_element(parse_element("(t1+hbar)*r[1]", ctx)) == "(t1+hbar)*r[1]");
    CHECK(print_element(parse_element("t1 + r[1]", ctx)) == "t1+r[1]");
}

TEST_CASE("round trip on random elements") {
    std::mt19937_64 rng(20240202);
    std::uniform_int_distribution<long long> cw(-3, 3);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<unsigned> expo(0, 2);
    std::uniform_int_distribution<int> nterms(1, 3);
    for (int i = 0; i < 200; ++i) {
        Mode mode = i % 3 == 0 ? Mode::classical : (i % 3 == 1 ? Mode::quantized : Mode::flavored);
        int rank = 1 + (i % 2);
        MatterContent m{{{Weight{IntVec(rank, 1)}, 2}}};
        m.normalize();
        AlgebraContext ctx{rank, m, mode};
        AbelianElement x(ctx);
        int k = nterms(rng);
        for (int tterm = 0; tterm < k; ++tterm) {
            IntVec l(rank);
            for (auto& c : l) c = cw(rng);
            Poly p(ctx.nvars());
            int pterm = nterms(rng);
            for (int j = 0; j < pterm; ++j) {
                Exponents e(ctx.nvars(), 0);
                for (std::size_t v = 0; v < ctx.nvars(); ++v) e[v] = expo(rng);
                if (mode == Mode::classical) e[ctx.hbar_index()] = 0;
                p.add_term(e, Rational(coef(rng), 1 + (j % 2)));
            }
            x.add_term(Coweight{l}, p);
        }
        CHECK(parse_element(print_element(x), ctx) == x);
    }
}
