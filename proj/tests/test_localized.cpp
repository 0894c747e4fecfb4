#include "coulombkit/localized.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ck;

namespace {

MatterContent charges(std::initializer_list<std::pair<IntVec, long long>> ws) {
    MatterContent m;
    for (const auto& [w, mult] : ws) m.entries.push_back({Weight{w}, mult});
    m.normalize();
    return m;
}

Theory pure_pgl2(Mode mode = Mode::classical) { return Theory{pgl2(), {}, mode}; }

}  // namespace

TEST_CASE("denominator control") {
    Theory th = pure_pgl2();
    const AlgebraContext ctx = th.algebra_context();
    Poly t = ctx.t(0);
    // 1/t is fine (t spans the root hyperplane form)
    LocalizedElement x = LocalizedElement::monomial(th, Coweight{{1}}, RatFunc(ctx.one(), t));
    CHECK_FALSE(x.is_zero());
    // 1/(t+1) is not in the multiplicative set
    CHECK_THROWS_AS(LocalizedElement::monomial(th, Coweight{{0}},
                                               RatFunc(ctx.one(), t + ctx.one())),
                    SchemaError);
    // quantized: hbar and t + m hbar are allowed
    Theory q = pure_pgl2(Mode::quantized);
    const AlgebraContext qc = q.algebra_context();
    LocalizedElement y = LocalizedElement::monomial(
        q, Coweight{{0}}, RatFunc(qc.one(), qc.hbar() * (qc.t(0) + qc.hbar() * Rational(3))));
    CHECK_FALSE(y.is_zero());
    // ... but not classically
    CHECK_THROWS_AS(LocalizedElement::monomial(th, Coweight{{0}},
                                               RatFunc(ctx.one(), t + ctx.hbar())),
                    SchemaError);
}

TEST_CASE("localized multiplication") {
    Theory th = pure_pgl2();
    const AlgebraContext ctx = th.algebra_context();
    Poly t = ctx.t(0);
    RatFunc inv_t(ctx.one(), t);
    LocalizedElement a = LocalizedElement::monomial(th, Coweight{{1}}, inv_t);
    LocalizedElement b = LocalizedElement::monomial(th, Coweight{{-1}}, inv_t);
    LocalizedElement ab = a * b;
    REQUIRE(ab.terms().size() == 1);
    CHECK(ab.coeff(Coweight{{0}}) == RatFunc(ctx.one(), t * t));

    CHECK(a * LocalizedElement::unit(th) == a);
    CHECK(LocalizedElement::unit(th) * a == a);

    // quantized: (1/t) r^1 vs r^1 (1/t) differ by the shift t -> t + hbar
    Theory q = pure_pgl2(Mode::quantized);
    const AlgebraContext qc = q.algebra_context();
    RatFunc qinv(qc.one(), qc.t(0));
    LocalizedElement f = LocalizedElement::monomial(q, Coweight{{0}}, qinv);
    LocalizedElement r1 = LocalizedElement::monomial(q, Coweight{{1}}, RatFunc(qc.one()));
    LocalizedElement fr = f * r1;       // (1/t) r^1
    LocalizedElement rf = r1 * f;       // shift: 1/(t+hbar) r^1
    CHECK(fr.coeff(Coweight{{1}}) == qinv);
    CHECK(rf.coeff(Coweight{{1}}) == RatFunc(qc.one(), qc.t(0) + qc.hbar()));
}

TEST_CASE("weyl action on localized elements") {
    Theory th = pure_pgl2();
    const AlgebraContext ctx = th.algebra_context();
    Poly t = ctx.t(0);
    LocalizedElement x = LocalizedElement::monomial(th, Coweight{{1}}, RatFunc(ctx.one(), t));
    const WeylElement& s = th.rd.simple_reflection(0);
    LocalizedElement sx = weyl_act_element(x, s);
    // s(r^l / t) = -r^{-l} / t
    CHECK(sx.coeff(Coweight{{-1}}) == RatFunc(-ctx.one(), t));
    CHECK(weyl_act_element(x, th.rd.identity()) == x);

    LocalizedElement inv = x - LocalizedElement::monomial(th, Coweight{{-1}},
                                                          RatFunc(ctx.one(), t));
    CHECK(weyl_invariant(inv));
}

TEST_CASE("orbit euler classes") {
    Theory th = pure_pgl2();
    const AlgebraContext ctx = th.algebra_context();
    CHECK(orbit_euler_class(th, Coweight{{1}}, Coweight{{1}}) == ctx.t(0));
    CHECK(orbit_euler_class(th, Coweight{{1}}, Coweight{{-1}}) == -ctx.t(0));
    CHECK_THROWS_AS(orbit_euler_class(th, Coweight{{1}}, Coweight{{2}}), SchemaError);

    Theory tor{torus(2), {}, Mode::classical};
    CHECK(orbit_euler_class(tor, Coweight{{3, 1}}, Coweight{{3, 1}}) ==
          tor.algebra_context().one());

    // quantized: product of alpha + (n + 1/2) hbar over 0 <= n < <alpha, point>
    Theory q{sl2(), {}, Mode::quantized};
    const AlgebraContext qc = q.algebra_context();
    Poly alpha = qc.t(0) * Rational(2);
    Poly half_h = qc.hbar() * Rational(1, 2);
    CHECK(orbit_euler_class(q, Coweight{{1}}, Coweight{{1}}) ==
          (alpha + half_h) * (alpha + half_h + qc.hbar()));
    CHECK(orbit_euler_class(q, Coweight{{1}}, Coweight{{-1}}) ==
          (-alpha + half_h) * (-alpha + half_h + qc.hbar()));

    // the class at w lambda is w of the class at lambda
    Theory th2{a2(), {}, Mode::quantized};
    const AlgebraContext c2 = th2.algebra_context();
    Coweight l{{2, 1}};
    Poly base = orbit_euler_class(th2, l, l);
    for (const auto& [p, w] : th2.rd.weyl_orbit(l))
        CHECK(orbit_euler_class(th2, l, p) == weyl_act(base, w, c2));
}

TEST_CASE("closed orbits") {
    CHECK(is_closed_orbit(pgl2(), Coweight{{1}}));
    CHECK(is_closed_orbit(pgl2(), Coweight{{0}}));
    CHECK_FALSE(is_closed_orbit(pgl2(), Coweight{{2}}));
    CHECK_FALSE(is_closed_orbit(sl2(), Coweight{{1}}));
    CHECK(is_closed_orbit(torus(2), Coweight{{5, -3}}));
    // GL(3): the first fundamental coweight is minuscule, rho-vee is not
    CHECK(is_closed_orbit(gl(3), Coweight{{1, 0, 0}}));
    CHECK(is_closed_orbit(gl(3), Coweight{{1, 1, 0}}));
    CHECK_FALSE(is_closed_orbit(gl(3), Coweight{{2, 1, 0}}));
    // in the simply connected A2 the adjoint orbit is not closed
    CHECK_FALSE(is_closed_orbit(a2(), Coweight{{1, 1}}));
}

TEST_CASE("minuscule lifts") {
    Theory th = pure_pgl2();
    const AlgebraContext ctx = th.algebra_context();
    Poly t = ctx.t(0);
    // (iota_*)^{-1}(eta) = (r^{l0} - r^{-l0})/t
    LocalizedElement eta = minuscule_lift(ctx.one(), Coweight{{1}}, th);
    CHECK(eta.coeff(Coweight{{1}}) == RatFunc(ctx.one(), t));
    CHECK(eta.coeff(Coweight{{-1}}) == RatFunc(-ctx.one(), t));
    // (iota_*)^{-1}(xi) = r^{l0} + r^{-l0}
    LocalizedElement xi = minuscule_lift(t, Coweight{{1}}, th);
    CHECK(xi.coeff(Coweight{{1}}) == RatFunc(ctx.one()));
    CHECK(xi.coeff(Coweight{{-1}}) == RatFunc(ctx.one()));

    // lambda = 0: the lift is just f r^0
    LocalizedElement z = minuscule_lift(t * t, Coweight{{0}}, th);
    CHECK(z == LocalizedElement::monomial(th, Coweight{{0}}, RatFunc(t * t)));

    // rejections
    CHECK_THROWS_AS(minuscule_lift(ctx.one(), Coweight{{2}}, th), UnsupportedError);
    CHECK_THROWS_AS(minuscule_lift(t, Coweight{{0}}, th), SchemaError);  // not W-invariant

    // lifts are W-invariant, classical and quantized
    for (Mode mode : {Mode::classical, Mode::quantized}) {
        Theory tq{pgl2(), charges({{{1}, 1}, {{-1}, 1}}), mode};
        const AlgebraContext cq = tq.algebra_context();
        CHECK(weyl_invariant(minuscule_lift(cq.one(), Coweight{{1}}, tq)));
        CHECK(weyl_invariant(minuscule_lift(cq.t(0), Coweight{{1}}, tq)));
        CHECK(weyl_invariant(minuscule_lift(cq.t(0) * cq.t(0), Coweight{{0}}, tq)));
    }
    for (Mode mode : {Mode::classical, Mode::quantized}) {
        Theory ta{gl(3), {}, mode};
        const AlgebraContext ca = ta.algebra_context();
        CHECK(weyl_invariant(minuscule_lift(ca.one(), Coweight{{1, 0, 0}}, ta)));
        CHECK(weyl_invariant(minuscule_lift(ca.one(), Coweight{{1, 1, 0}}, ta)));
        Poly sym = ca.t(0) + ca.t(1) + ca.t(2);
        CHECK(weyl_invariant(minuscule_lift(sym, Coweight{{1, 0, 0}}, ta)));
    }
}

TEST_CASE("lift multiplicativity golden cases") {
    // lift(f,0) * lift(g,l0) = lift(f g, l0) for W-invariant f
    for (Mode mode : {Mode::classical, Mode::quantized}) {
        Theory th{pgl2(), charges({{{1}, 2}, {{-1}, 2}}), mode};
        const AlgebraContext ctx = th.algebra_context();
        Poly f = ctx.t(0) * ctx.t(0);
        Poly g = ctx.t(0);
        LocalizedElement lhs = minuscule_lift(f, Coweight{{0}}, th) *
                               minuscule_lift(g, Coweight{{1}}, th);
        CHECK(lhs == minuscule_lift(f * g, Coweight{{1}}, th));
    }
    // torus: lift(f,l)·lift(g,mu) = lift(f·shift(g)·A(l,mu), l+mu)
    Theory tt{torus(1), charges({{{1}, 2}}), Mode::quantized};
    const AlgebraContext tc = tt.algebra_context();
    LocalizedElement p = minuscule_lift(tc.t(0), Coweight{{1}}, tt) *
                         minuscule_lift(tc.one(), Coweight{{-1}}, tt);
    Poly expect = tc.t(0) * structure_factor(tc, Coweight{{1}}, Coweight{{-1}});
    CHECK(p == minuscule_lift(expect, Coweight{{0}}, tt));
}

TEST_CASE("quantized lifts specialize to classical at hbar zero") {
    Theory q{pgl2(), charges({{{1}, 1}, {{-1}, 1}}), Mode::quantized};
    Theory c{pgl2(), charges({{{1}, 1}, {{-1}, 1}}), Mode::classical};
    const AlgebraContext qc = q.algebra_context();
    const AlgebraContext cc = c.algebra_context();
    LocalizedElement prod = minuscule_lift(qc.t(0), Coweight{{1}}, q) *
                            minuscule_lift(qc.one(), Coweight{{1}}, q);
    LocalizedElement cprod = minuscule_lift(cc.t(0), Coweight{{1}}, c) *
                             minuscule_lift(cc.one(), Coweight{{1}}, c);
    for (const auto& [l, v] : cprod.terms()) {
        RatFunc qv = prod.coeff(l);
        Poly num0 = qv.num().evaluate_var(qc.hbar_index(), 0);
        Poly den0 = qv.den().evaluate_var(qc.hbar_index(), 0);
        CHECK(RatFunc(num0, den0) == v);
    }
    // associativity of localized products, quantized
    LocalizedElement a = minuscule_lift(qc.one(), Coweight{{1}}, q);
    LocalizedElement b = minuscule_lift(qc.t(0), Coweight{{1}}, q);
    LocalizedElement d = minuscule_lift(qc.t(0) * qc.t(0), Coweight{{0}}, q);
    CHECK((a * b) * d == a * (b * d));
    CHECK((a * d) * b == a * (d * b));
}

TEST_CASE("zstar closure of lift products") {
    // with matter present, the matter factors collected by zstar cancel the
    // Euler denominators of honest classes: products of lifts become regular
    // functions on t x T^vee
    for (long long m : {1ll, 2ll}) {
        for (Mode mode : {Mode::classical, Mode::quantized}) {
            Theory th{pgl2(), charges({{{1}, m}, {{-1}, m}}), mode};
            const AlgebraContext ctx = th.algebra_context();
            LocalizedElement eta = minuscule_lift(ctx.one(), Coweight{{1}}, th);
            LocalizedElement xi = minuscule_lift(ctx.t(0), Coweight{{1}}, th);
            for (const LocalizedElement& x : {eta, xi, eta * eta, xi * xi, eta * xi, xi * eta}) {
                LocalizedElement z = zstar(x);
                CHECK(z.is_integral());
                if (mode == Mode::classical) CHECK(weyl_invariant(z));
            }
        }
    }
}

TEST_CASE("localization square commutes") {
    // Codimension-1 reduction consistency: for the fixed-point theory
    // (G', N') at a root hyperplane of A2, removing the transverse matter
    // from a lift of (G', N) agrees with lifting in (G', N') after the
    // excess Euler factor epsilon_lambda is multiplied in.
    MatterContent std3 = charges({{{1, 0}, 1}, {{-1, 1}, 1}, {{0, -1}, 1}});
    MatterContent adj;
    for (const auto& a : a2().all_roots()) adj.entries.push_back({a, 1});
    MatterContent both = std3;
    for (const auto& e : adj.entries) both.entries.push_back(e);
    both.normalize();

    for (const MatterContent& matter : {std3, both}) {
        auto [rdp, matterp] = fixed_point_theory(a2(), matter, Weight{{2, -1}});
        REQUIRE(rdp.num_simple() == 1);
        for (Mode mode : {Mode::classical, Mode::quantized}) {
            Theory th{rdp, matter, mode};    // reduced group, full matter
            Theory thp{rdp, matterp, mode};  // reduced group, fixed-point matter
            const AlgebraContext ctx = th.algebra_context();
            const AlgebraContext cp = thp.algebra_context();

            std::vector<std::size_t> removed;
            for (std::size_t i = 0; i < matter.entries.size(); ++i) {
                bool kept = false;
                for (const auto& e : matterp.entries)
                    if (e.weight == matter.entries[i].weight) kept = true;
                if (!kept) removed.push_back(i);
            }
            REQUIRE(!removed.empty());

            // lambda minuscule for the reduced group
            for (const Coweight& l : {Coweight{{0, 0}}, Coweight{{1, 1}}}) {
                REQUIRE(is_closed_orbit(rdp, l));
                // invariant under the reflection in alpha1 = (2,-1)
                Poly form = ctx.t(0) * Rational(2) - ctx.t(1);
                Poly f = form * form + ctx.t(1) * ctx.t(1) * Rational(5);
                for (const auto* w : rdp.stabilizer(l))
                    REQUIRE(weyl_act(f, *w, ctx) == f);
                LocalizedElement path_a = partial_zstar(minuscule_lift(f, l, th), removed);

                // excess Euler factor from the removed entries at lambda
                Poly eps = cp.one();
                for (auto i : removed) {
                    const MatterEntry& me = matter.entries[i];
                    long long k = pairing(me.weight, l);
                    if (k >= 0) continue;
                    Poly xi = Poly::linear_form(cp.nvars(), me.weight.coords);
                    Poly onef = cp.one();
                    if (mode == Mode::classical) {
                        onef = xi.pow((unsigned)(-k));
                    } else {
                        for (long long j = 0; j < -k; ++j)
                            onef *= xi + cp.hbar() * Rational(2 * k + 2 * j + 1, 2);
                    }
                    eps *= onef.pow((unsigned)me.mult);
                }
                LocalizedElement path_b = minuscule_lift(eps * f, l, thp);
                REQUIRE(path_a.terms().size() == path_b.terms().size());
                for (const auto& [pt, v] : path_b.terms()) CHECK(path_a.coeff(pt) == v);
            }
        }
    }
}

TEST_CASE("rank-1 branches") {
    // PGL(2) pure: constant, N = 1, c = 4
    HypersurfaceData pure = rank1_branch(pgl2(), {});
    CHECK(pure.family == HypersurfaceData::Family::D);
    CHECK(pure.N == 1);
    CHECK(pure.c == 4);

    // PGL(2) adjoint: xi^2 - delta eta^2 = -4 delta, N = 2
    HypersurfaceData adj = rank1_branch(pgl2(), charges({{{1}, 1}, {{-1}, 1}}));
    CHECK(adj.family == HypersurfaceData::Family::D);
    CHECK(adj.N == 2);
    CHECK(adj.c == -4);

    // SL(2) with 4 fundamentals: D_4
    HypersurfaceData d4 = rank1_branch(sl2(), charges({{{1}, 4}, {{-1}, 4}}));
    CHECK(d4.family == HypersurfaceData::Family::D);
    CHECK(d4.N == 4);
    CHECK(d4.c != 0);

    // SL(2) pure: the exceptional family
    HypersurfaceData d0 = rank1_branch(sl2(), {});
    CHECK(d0.family == HypersurfaceData::Family::D0);
    CHECK(d0.N == 0);
    CHECK(d0.c == 4);

    CHECK_THROWS_AS(rank1_branch(a2(), {}), UnsupportedError);
}

TEST_CASE("rank-1 degree bookkeeping") {
    // deg xi = deg eta + 1 and deg delta = 2 in Delta units: each term of a
    // lift w f / e(T) r^{l'} has doubled degree 2(deg f - deg e) + delta2(l')
    for (const MatterContent& matter :
         {MatterContent{{{Weight{{1}}, 1}, {Weight{{-1}}, 1}}},
          MatterContent{{{Weight{{1}}, 3}, {Weight{{-1}}, 3}}}}) {
        Theory th{pgl2(), matter, Mode::classical};
        const AlgebraContext ctx = th.algebra_context();
        auto term_degree2 = [&](const LocalizedElement& x) {
            long deg = 0;
            bool first = true;
            for (const auto& [l, c] : x.terms()) {
                long d = 2 * ((long)c.num().total_degree() - (long)c.den().total_degree()) +
                         abelian_delta2(ctx, l);
                if (first) deg = d;
                first = false;
                if (d != deg) throw InvariantError("inhomogeneous lift");
            }
            return deg;
        };
        LocalizedElement eta = minuscule_lift(ctx.one(), Coweight{{1}}, th);
        LocalizedElement xi = minuscule_lift(ctx.t(0), Coweight{{1}}, th);
        long de = term_degree2(eta), dx = term_degree2(xi);
        CHECK(dx == de + 2);  // deg xi = deg eta + 1
        // delta = t^2 has Delta-degree 2
        CHECK(2 * (long)(ctx.t(0) * ctx.t(0)).total_degree() == 4);
    }
}

TEST_CASE("adjoint isomorphism check") {
    AdjointCheckReport rep = adjoint_isomorphism_check(pgl2(), charges({{{1}, 1}, {{-1}, 1}}));
    CHECK(rep.zstar_images_match);
    CHECK(rep.relation_holds);
    CHECK(rep.generation_verified);
    CHECK_THROWS_AS(adjoint_isomorphism_check(pgl2(), {}), UnsupportedError);
    CHECK_THROWS_AS(adjoint_isomorphism_check(sl2(), charges({{{2}, 1}, {{-2}, 1}})),
                    UnsupportedError);
}
