#include "coulombkit/monopole.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ck;

namespace {

MatterContent charges(std::initializer_list<std::pair<IntVec, long long>> ws) {
    MatterContent m;
    for (const auto& [w, mult] : ws) m.entries.push_back({Weight{w}, mult});
    m.normalize();
    return m;
}

}  // namespace

TEST_CASE("d_lambda and delta") {
    MatterContent u1_2 = charges({{{1}, 2}});
    CHECK(d_lambda(Coweight{{-3}}, u1_2, torus(1)) == 6);
    CHECK(d_lambda(Coweight{{0}}, u1_2, torus(1)) == 0);
    CHECK(delta2(Coweight{{5}}, u1_2, torus(1)) == 10);  // Delta = |k| for 2 flavors

    MatterContent fund4 = charges({{{1}, 4}, {{-1}, 4}});
    CHECK(d_lambda(Coweight{{1}}, fund4, sl2()) == 4);
    for (long long k : {0ll, 1ll, 2ll, 3ll}) {
        CHECK(delta2(Coweight{{k}}, fund4, sl2()) == 4 * k);  // Delta = 2k
    }
    MatterContent adj = charges({{{1}, 1}, {{-1}, 1}});
    for (long long k : {1ll, 2ll, 5ll}) {
        CHECK(delta2(Coweight{{k}}, adj, pgl2()) == 0);  // bad theory marker
    }
    // U(1), N flavors: Delta(k) = N|k|/2
    for (long long n : {1ll, 3ll}) {
        MatterContent m = charges({{{1}, n}});
        CHECK(delta2(Coweight{{-2}}, m, torus(1)) == 2 * n);
    }
}

TEST_CASE("delta and d_lambda are W-invariant") {
    std::mt19937_64 rng(5);
    RootDatum d = a2();
    MatterContent std3 = charges({{{1, 0}, 1}, {{-1, 1}, 1}, {{0, -1}, 1}});
    std::uniform_int_distribution<long long> c(-4, 4);
    for (int i = 0; i < 100; ++i) {
        Coweight l{{c(rng), c(rng)}};
        long long dd = delta2(l, std3, d);
        long long dl = d_lambda(l, std3, d);
        for (const auto& [p, w] : d.weyl_orbit(l)) {
            CHECK(delta2(p, std3, d) == dd);
            CHECK(d_lambda(p, std3, d) == dl);
        }
    }
}

TEST_CASE("levi series") {
    // regular coweight: free polynomial ring on rank generators, deg t = 2
    TruncatedSeries reg = levi_series(Coweight{{1, 2}}, torus(2), 12);
    TruncatedSeries expect = TruncatedSeries::geometric(12, 4) * TruncatedSeries::geometric(12, 4);
    CHECK(reg == expect);

    // SL(2) at 0: invariants of Z/2 on a line have degrees 2 (Molien)
    CHECK(levi_series(Coweight{{0}}, sl2(), 16) == TruncatedSeries::geometric(16, 8));

    // A2 at 0: S3 invariant degrees 2 and 3
    CHECK(levi_series(Coweight{{0, 0}}, a2(), 24) ==
          TruncatedSeries::geometric(24, 8) * TruncatedSeries::geometric(24, 12));

    // depends only on the stabilizer: constant along orbits
    RootDatum d = a2();
    Coweight l{{1, 0}};
    auto base = levi_series(l, d, 12);
    for (const auto& [p, w] : d.weyl_orbit(l)) CHECK(levi_series(p, d, 12) == base);
}

TEST_CASE("monopole series U(1) with 2 flavors") {
    MonopoleRequest req;
    req.matter = charges({{{1}, 2}});
    req.order2 = 16;  // t^8
    HilbertSeries h = monopole_series(torus(1), req);
    CHECK(h.good_or_ugly);
    // independent oracle: monomial count on C[x,y,a]/(xy - a^2), all degrees t^2
    for (long k = 0; k <= 4; ++k) CHECK(h.series.coeff(4 * k) == Rational(2 * k + 1));
    CHECK(h.series.coeff(2) == 0);
    // constant term 1
    CHECK(h.series.coeff(0) == 1);
}

TEST_CASE("monopole series SL(2) with 4 fundamentals") {
    MonopoleRequest req;
    req.matter = charges({{{1}, 4}, {{-1}, 4}});
    req.order2 = 40;  // t^20
    HilbertSeries h = monopole_series(sl2(), req);
    // hypersurface oracle: graded ring with generators of degree 4,4,6 and a
    // relation in degree 12
    TruncatedSeries oracle = TruncatedSeries::geometric(40, 8) *
                             TruncatedSeries::geometric(40, 8) *
                             TruncatedSeries::geometric(40, 12);
    oracle = oracle - oracle.shifted(24);
    CHECK(h.series == oracle);
    CHECK(h.series.coeff(8) == 2);
    CHECK(h.series.coeff(12) == 1);
    CHECK(h.series.coeff(16) == 3);
}

TEST_CASE("bad theories are rejected") {
    MonopoleRequest req;
    req.order2 = 8;
    CHECK_THROWS_AS(monopole_series(pgl2(), req), BadTheoryError);
    req.matter = charges({{{1}, 1}, {{-1}, 1}});  // adjoint of PGL(2)
    CHECK_THROWS_AS(monopole_series(pgl2(), req), BadTheoryError);
    MonopoleRequest req2;
    req2.order2 = 8;
    CHECK_THROWS_AS(monopole_series(torus(1), req2), BadTheoryError);
}

TEST_CASE("refined series") {
    MonopoleRequest req;
    req.matter = charges({{{1}, 2}});
    req.order2 = 12;
    req.flavor_charges = std::vector<long long>{1};
    HilbertSeries h = monopole_series(torus(1), req);
    REQUIRE(h.refined.has_value());
    CHECK(h.refined->at_z_one() == h.series);
    // lambda = +-1 contribute charges +-1 at t^2, lambda = 0 charge 0
    CHECK(h.refined->coeffs().at({4, 1}) == 1);
    CHECK(h.refined->coeffs().at({4, -1}) == 1);
    CHECK(h.refined->coeffs().at({4, 0}) == 1);
}

TEST_CASE("product theories factor") {
    // torus x torus and torus x SL(2)
    MonopoleRequest a;
    a.matter = charges({{{1}, 2}});
    a.order2 = 12;
    HilbertSeries ha = monopole_series(torus(1), a);

    MonopoleRequest b;
    b.matter = charges({{{1}, 1}});
    b.order2 = 12;
    HilbertSeries hb = monopole_series(torus(1), b);

    MonopoleRequest ab;
    ab.matter = charges({{{1, 0}, 2}, {{0, 1}, 1}});
    ab.order2 = 12;
    HilbertSeries hab = monopole_series(torus(2), ab);
    CHECK(hab.series == ha.series * hb.series);

    MonopoleRequest s;
    s.matter = charges({{{1}, 4}, {{-1}, 4}});
    s.order2 = 12;
    HilbertSeries hs = monopole_series(sl2(), s);
    RootDatum prod(3, {Weight{{2, 0, 0}}}, {Coweight{{1, 0, 0}}}, "SL2 x T2");
    MonopoleRequest ps;
    ps.matter = charges({{{1, 0, 0}, 4}, {{-1, 0, 0}, 4}, {{0, 1, 0}, 2}, {{0, 0, 1}, 1}});
    ps.order2 = 12;
    HilbertSeries hp = monopole_series(prod, ps);
    CHECK(hp.series == hs.series * ha.series * hb.series);
}

TEST_CASE("trivial summands do not change the series") {
    MonopoleRequest req;
    req.matter = charges({{{1}, 2}});
    req.order2 = 12;
    HilbertSeries base = monopole_series(torus(1), req);
    MonopoleRequest padded = req;
    padded.matter.entries.push_back({Weight{{0}}, 3});
    HilbertSeries same = monopole_series(torus(1), padded);
    CHECK(base.series == same.series);
}

TEST_CASE("SL(2) series is the even part of the PGL(2) series") {
    // the same representation written in each basis: weights 2w for PGL(2)
    // correspond to weights w of SL(2) under X(PGL2) = Z alpha c X(SL2)
    MonopoleRequest preq;
    preq.matter = charges({{{1}, 4}, {{-1}, 4}});
    preq.order2 = 20;
    HilbertSeries hp = monopole_series(pgl2(), preq);

    MonopoleRequest sreq;
    sreq.matter = charges({{{2}, 4}, {{-2}, 4}});
    sreq.order2 = 20;
    HilbertSeries hs = monopole_series(sl2(), sreq);

    // even part of the PGL(2) sum: recompute restricting to even coweights
    TruncatedSeries even = TruncatedSeries::zero(20);
    for (long long k = 0; 6 * k <= 20; ++k) {
        Coweight l{{2 * k}};
        long long d2 = delta2(l, preq.matter, pgl2());
        if (2 * d2 > 20) continue;
        even = even + levi_series(l, pgl2(), 20).shifted(2 * d2);
    }
    CHECK(hs.series == even);

    // sanity: the full PGL(2) series dominates its even part
    for (long e = 0; e <= 20; ++e) CHECK(hp.series.coeff(e) >= even.coeff(e));
}

TEST_CASE("series depends only on N + N*") {
    // dualizing a summand leaves every |<chi,lambda>| unchanged
    MonopoleRequest a;
    a.matter = charges({{{1, 0}, 2}, {{1, 1}, 1}, {{0, -1}, 1}});
    a.order2 = 12;
    MonopoleRequest b;
    b.matter = charges({{{-1, 0}, 2}, {{1, 1}, 1}, {{0, 1}, 1}});
    b.order2 = 12;
    CHECK(monopole_series(torus(2), a).series == monopole_series(torus(2), b).series);

    MonopoleRequest s1;
    s1.matter = charges({{{1}, 4}, {{-1}, 4}});
    s1.order2 = 16;
    MonopoleRequest s2;
    s2.matter = charges({{{-1}, 8}});
    s2.order2 = 16;
    CHECK(monopole_series(sl2(), s1).series == monopole_series(sl2(), s2).series);
}

TEST_CASE("homological shift is constant on pi1 classes") {
    MatterContent fund4 = charges({{{1}, 4}, {{-1}, 4}});
    // SL(2): coroot lattice = full coweight lattice, shift vanishes on it
    for (long long k : {-2ll, 0ll, 3ll})
        CHECK(homological_shift(Coweight{{k}}, fund4) == 0);
    MatterContent asym = charges({{{1}, 3}});
    CHECK(homological_shift(Coweight{{1}}, asym) == -3);
    CHECK(homological_shift(Coweight{{2}}, asym) == -6);
}

TEST_CASE("deterministic under threading") {
    MonopoleRequest req;
    req.matter = charges({{{1}, 4}, {{-1}, 4}});
    req.order2 = 24;
    HilbertSeries h1 = monopole_series(sl2(), req);
    req.threads = 4;
    HilbertSeries h4 = monopole_series(sl2(), req);
    CHECK(h1.series == h4.series);
    CHECK(h1.coweights_summed == h4.coweights_summed);
}
