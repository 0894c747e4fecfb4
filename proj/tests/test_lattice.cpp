#include "coulombkit/lattice.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace ck;

TEST_CASE("pairing") {
    CHECK(pairing(Weight{{2}}, Coweight{{1}}) == 2);
    CHECK(pairing(Weight{{1, -1}}, Coweight{{3, 1}}) == 2);
    CHECK(pairing(Weight{{0}}, Coweight{{5}}) == 0);
    CHECK_THROWS_AS(pairing(Weight{{1}}, Coweight{{1, 2}}), SchemaError);
}

TEST_CASE("cartan validation") {
    CHECK_THROWS_AS(RootDatum(1, {Weight{{1}}}, {Coweight{{1}}}), SchemaError);  // diag != 2
    CHECK_THROWS_AS(RootDatum(2, {Weight{{2, 1}}, Weight{{1, 2}}},
                              {Coweight{{1, 0}}, Coweight{{0, 1}}}),
                    SchemaError);  // positive off-diagonal
    // Cartan matrix [[2,-4],[-1,2]] is of infinite type; enumeration hits the cap
    CHECK_THROWS_AS(RootDatum(2, {Weight{{2, -1}}, Weight{{-4, 2}}},
                              {Coweight{{1, 0}}, Coweight{{0, 1}}}, "infinite", 200),
                    BadTheoryError);
}

TEST_CASE("positive roots") {
    CHECK(sl2().positive_roots() == std::vector<Weight>{Weight{{2}}});
    CHECK(torus(3).positive_roots().empty());
    auto a2roots = a2().positive_roots();
    std::set<Weight> got(a2roots.begin(), a2roots.end());
    std::set<Weight> expect = {Weight{{2, -1}}, Weight{{-1, 2}}, Weight{{1, 1}}};
    CHECK(got == expect);
    CHECK(a2().weyl_order() == 6);
    CHECK(gl(3).weyl_order() == 6);
    CHECK(gl(3).positive_roots().size() == 3);
}

TEST_CASE("weyl orbits and dominant representatives") {
    RootDatum p = pgl2();
    auto orbit = p.weyl_orbit(Coweight{{1}});
    REQUIRE(orbit.size() == 2);
    CHECK(orbit[0].first == Coweight{{-1}});
    CHECK(orbit[1].first == Coweight{{1}});
    CHECK(orbit[1].second.is_identity());
    CHECK(orbit[0].second.word == std::vector<int>{0});

    auto [dom, w] = p.dominant_representative(Coweight{{-1}});
    CHECK(dom == Coweight{{1}});
    CHECK(w.word == std::vector<int>{0});
    auto [dom2, w2] = p.dominant_representative(Coweight{{4}});
    CHECK(dom2 == Coweight{{4}});
    CHECK(w2.is_identity());

    CHECK(torus(2).weyl_orbit(Coweight{{3, -5}}).size() == 1);

    // regular orbit in A2 has |W| = 6 points; -rho^vee reflects to rho^vee
    // by the longest element
    RootDatum d = a2();
    auto reg = d.weyl_orbit(Coweight{{1, 1}});
    CHECK(reg.size() == 6);
    auto [dom3, w3] = d.dominant_representative(Coweight{{-1, -1}});
    CHECK(dom3 == Coweight{{1, 1}});
    CHECK(w3.word.size() == 3);  // longest element of S3
}

TEST_CASE("orbit-stabilizer and equivariance") {
    RootDatum d = a2();
    std::vector<Coweight> samples = {Coweight{{0, 0}}, Coweight{{1, 0}}, Coweight{{2, 1}},
                                     Coweight{{-1, 3}}, Coweight{{5, -2}}};
    for (const auto& l : samples) {
        auto orbit = d.weyl_orbit(l);
        CHECK(orbit.size() * d.stabilizer(l).size() == d.weyl_order());
        auto dom = d.dominant_representative(l).first;
        for (const auto& [pt, w] : orbit) {
            CHECK(w.act(l) == pt);
            CHECK(d.dominant_representative(pt).first == dom);
        }
        // idempotence
        CHECK(d.dominant_representative(dom).first == dom);
    }
}

TEST_CASE("generalized roots and hyperplanes") {
    MatterContent fund4{{{Weight{{1}}, 4}, {Weight{{-1}}, 4}}};
    fund4.normalize();
    auto gr = generalized_roots(sl2(), fund4);
    std::set<Weight> got(gr.begin(), gr.end());
    CHECK(got == std::set<Weight>{Weight{{1}}, Weight{{-1}}, Weight{{2}}, Weight{{-2}}});
    CHECK(generalized_root_hyperplanes(sl2(), fund4).size() == 1);

    MatterContent one{{{Weight{{1}}, 2}}};
    one.normalize();
    CHECK(generalized_roots(torus(1), one) == std::vector<Weight>{Weight{{1}}});

    MatterContent none;
    CHECK(generalized_roots(a2(), none).size() == 6);

    // hyperplane set is W-invariant (matter = weights of the standard rep)
    RootDatum d = a2();
    MatterContent m{{{Weight{{1, 0}}, 1}, {Weight{{-1, 1}}, 1}, {Weight{{0, -1}}, 1}}};
    m.normalize();
    auto hyps = generalized_root_hyperplanes(d, m);
    std::set<Weight> hypset(hyps.begin(), hyps.end());
    for (const auto& w : d.weyl_elements()) {
        for (const auto& h : hyps)
            CHECK(hypset.count(primitive_normal(w.act(h))) == 1);
    }
}

TEST_CASE("matter normalization") {
    MatterContent m{{{Weight{{0, 0}}, 3}, {Weight{{1, 0}}, 1}, {Weight{{1, 0}}, 2}}};
    long long dropped = m.normalize();
    CHECK(dropped == 3);
    REQUIRE(m.entries.size() == 1);
    CHECK(m.entries[0].mult == 3);
    CHECK(m.total_dim() == 3);
}

TEST_CASE("fixed point theory") {
    MatterContent fund4{{{Weight{{1}}, 4}, {Weight{{-1}}, 4}}};
    fund4.normalize();

    // in rank 1 every hyperplane is the root hyperplane, so the centralizer
    // is the whole group and all matter survives
    auto [rd1, m1] = fixed_point_theory(sl2(), fund4, Weight{{1}});
    CHECK(rd1.num_simple() == 1);
    CHECK(m1.total_dim() == 8);

    auto [rd2, m2] = fixed_point_theory(sl2(), fund4, Weight{{2}});
    CHECK(rd2.num_simple() == 1);
    CHECK(m2 == fund4);

    // type I hyperplane of A2 with the standard rep: centralizer is the torus
    MatterContent std3{{{Weight{{1, 0}}, 1}, {Weight{{-1, 1}}, 1}, {Weight{{0, -1}}, 1}}};
    std3.normalize();
    auto [rd4, m4] = fixed_point_theory(a2(), std3, Weight{{1, 0}});
    CHECK(rd4.num_simple() == 0);
    CHECK(rd4.rank() == 2);
    REQUIRE(m4.entries.size() == 1);
    CHECK(m4.entries[0].weight == Weight{{1, 0}});

    // rank-2 torus: only proportional weights survive
    MatterContent tm{{{Weight{{1, 0}}, 1}, {Weight{{0, 1}}, 1}}};
    tm.normalize();
    auto [rd3, m3] = fixed_point_theory(torus(2), tm, Weight{{1, 0}});
    CHECK(rd3.rank() == 2);
    CHECK(rd3.num_simple() == 0);
    REQUIRE(m3.entries.size() == 1);
    CHECK(m3.entries[0].weight == Weight{{1, 0}});

    CHECK_THROWS_AS(fixed_point_theory(torus(2), tm, Weight{{1, 1}}), UnsupportedError);

    // root hyperplanes give semisimple rank exactly 1
    RootDatum d = a2();
    MatterContent none;
    for (const auto& rp : d.positive_root_pairs()) {
        auto [rdf, mf] = fixed_point_theory(d, none, rp.root);
        CHECK(rdf.num_simple() == 1);
        CHECK(rdf.weyl_order() == 2);
    }
}

TEST_CASE("dominance order") {
    RootDatum p = pgl2();
    CHECK(p.dominance_leq(Coweight{{0}}, Coweight{{2}}));       // 2 - 0 = alpha^vee
    CHECK_FALSE(p.dominance_leq(Coweight{{0}}, Coweight{{1}})); // odd difference
    CHECK(p.dominance_leq(Coweight{{1}}, Coweight{{1}}));
    RootDatum s = sl2();
    CHECK(s.dominance_leq(Coweight{{0}}, Coweight{{1}}));       // 1 - 0 = coroot
    CHECK_FALSE(torus(1).dominance_leq(Coweight{{0}}, Coweight{{2}}));
}
