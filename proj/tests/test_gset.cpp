#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace gsite;

TEST_CASE("G-set construction validates rows and the action law") {
    auto t = th::cyclic2_depth3();
    // the swap set is the coset set of the index-two subgroup
    DiscreteGSet swap = th::swap_gset(t);
    CHECK(swap.size() == 2);

    // one-point set with trivial action at any level
    DiscreteGSet pt = DiscreteGSet::point(t, 2);
    CHECK(pt.size() == 1);

    // non-bijective row
    REQUIRE_THROWS_WITH(DiscreteGSet(t, 2, 1, {{0, 1}, {0, 0}}),
                        Catch::Matchers::ContainsSubstring("not a permutation"));

    // permutation rows that are not a homomorphism: at level 2 (Z/4) send
    // the generator 1 to a transposition, so 1+1 = 2 must act as the
    // identity yet the table says otherwise
    REQUIRE_THROWS_WITH(
        DiscreteGSet(t, 3, 2,
                     {{0, 1, 2}, {1, 0, 2}, {1, 0, 2}, {0, 1, 2}}),
        Catch::Matchers::ContainsSubstring("homomorphism"));
}

TEST_CASE("G-set specs accept generator images and reject non-generating sets") {
    auto t = th::cyclic2_depth3();
    nlohmann::json spec{{"size", 3},
                        {"level", 1},
                        {"action",
                         {{"generators",
                           nlohmann::json::array(
                               {{{"element", 1}, {"image", {1, 0, 2}}}})}}}};
    DiscreteGSet x = make_gset(t, spec);
    CHECK(x == th::three_point_mixed(t));

    // at level 2 the element 2 alone does not generate Z/4
    nlohmann::json partial{{"size", 2},
                           {"level", 2},
                           {"action",
                            {{"generators",
                              nlohmann::json::array(
                                  {{{"element", 2}, {"image", {1, 0}}}})}}}};
    REQUIRE_THROWS_WITH(make_gset(t, partial),
                        Catch::Matchers::ContainsSubstring("do not generate"));

    // inconsistent images: two routes to the element 3 = 1+2 disagree
    nlohmann::json inconsistent{
        {"size", 2},
        {"level", 2},
        {"action",
         {{"generators",
           nlohmann::json::array({{{"element", 1}, {"image", {1, 0}}},
                                  {{"element", 2}, {"image", {1, 0}}}})}}}};
    REQUIRE_THROWS_WITH(make_gset(t, inconsistent),
                        Catch::Matchers::ContainsSubstring("inconsistent"));
}

TEST_CASE("acting satisfies the action axioms") {
    auto t = th::cyclic2_depth3();
    Rng rng(99);
    DiscreteGSet x = random_gset(rng, t, 3, 7);
    GroupElement id = GroupElement::identity(t);
    const FiniteGroup& top = t->level(3);
    for (int e = 0; e < x.size(); ++e) CHECK(act(id, e, x) == e);
    for (int a = 0; a < top.order(); ++a)
        for (int b = 0; b < top.order(); ++b) {
            GroupElement ga = GroupElement::from_top(t, a);
            GroupElement gb = GroupElement::from_top(t, b);
            for (int e = 0; e < x.size(); ++e)
                REQUIRE(act(ga, act(gb, e, x), x) == act(ga.mul(gb), e, x));
        }

    DiscreteGSet swap = th::swap_gset(t);
    GroupElement one(t, {1, 1, 1});
    CHECK(act(one, 0, swap) == 1);
    REQUIRE_THROWS_AS(act(one, 5, swap), SpecError);
}

TEST_CASE("orbit decomposition matches the brute-force closure") {
    auto t = th::cyclic2_depth3();
    DiscreteGSet x = th::three_point_mixed(t);
    OrbitDecomposition dec = orbits_and_stabilizers(x);
    REQUIRE(dec.orbits.size() == 2);
    CHECK(dec.orbits[0].representative == 0);
    CHECK(dec.orbits[0].stabilizer.index() == 2);
    CHECK(dec.orbits[1].representative == 2);
    CHECK(dec.orbits[1].stabilizer.is_full());

    for (const auto& tower : th::acceptance_towers()) {
        Rng rng(5);
        for (int round = 0; round < 10; ++round) {
            DiscreteGSet y = random_gset(rng, tower, 3, 8);
            auto oracle = th::oracle_orbits(y);
            OrbitDecomposition d = orbits_and_stabilizers(y);
            REQUIRE(d.orbits.size() == oracle.size());
            for (std::size_t i = 0; i < oracle.size(); ++i)
                REQUIRE(d.orbits[i].elements == oracle[i]);
            REQUIRE(d.witness.is_bijective());
        }
    }
}

TEST_CASE("trivial actions decompose into singleton orbits with full stabilizers") {
    auto t = th::cyclic3_depth2();
    DiscreteGSet x = DiscreteGSet::trivial(t, 4);
    OrbitDecomposition dec = orbits_and_stabilizers(x);
    REQUIRE(dec.orbits.size() == 4);
    for (const auto& o : dec.orbits) {
        CHECK(o.elements.size() == 1);
        CHECK(o.stabilizer.is_full());
    }
}

TEST_CASE("coset sets are transitive with the given stabilizer") {
    auto t = th::cyclic2_depth3();

    // full subgroup: the one-point set
    CHECK(coset_gset(OpenSubgroup::full(t)).size() == 1);

    // trivial subgroup at a level: the regular action
    OpenSubgroup triv2 = OpenSubgroup::at_level(t, 2, {0});
    DiscreteGSet reg = coset_gset(triv2);
    CHECK(reg.size() == 4);
    CHECK(orbits_and_stabilizers(reg).orbits.size() == 1);

    // the index-two subgroup at level 1: the swap set
    OpenSubgroup u1 = OpenSubgroup::at_level(t, 1, {0});
    CHECK(coset_gset(u1) == th::swap_gset(t));

    // stabilizer of the identity coset equals the subgroup, including for
    // non-normal subgroups of the nonabelian tower
    auto s3t = th::s3xc2_depth2();
    for (int level = 1; level <= 2; ++level)
        for (const auto& u : enumerate_open_subgroups(s3t, level)) {
            DiscreteGSet c = coset_gset(u);
            REQUIRE(orbits_and_stabilizers(c).orbits.size() == 1);
            const int idc = identity_coset_index(u);
            std::vector<int> stab;
            const FiniteGroup& g = s3t->level(u.level());
            for (int a = 0; a < g.order(); ++a)
                if (c.act_at_level(a, idc) == idc) stab.push_back(a);
            CHECK(OpenSubgroup::at_level(s3t, u.level(), stab) == u);
        }
}

TEST_CASE("coset decomposition of a transitive set: single orbit, stabilizer U") {
    auto t = th::cyclic2_depth3();
    OpenSubgroup u = OpenSubgroup::at_level(t, 2, {0});  // normal, index 4
    DiscreteGSet c = coset_gset(u);
    OrbitDecomposition dec = orbits_and_stabilizers(c);
    REQUIRE(dec.orbits.size() == 1);
    CHECK(dec.orbits[0].stabilizer == u);
}

TEST_CASE("equivariant map enumeration agrees with the all-maps oracle") {
    auto bruteforce_ok = [](const DiscreteGSet& x, const DiscreteGSet& y) {
        double cost = 1;
        for (int i = 0; i < x.size(); ++i) cost *= y.size();
        return cost <= 1e6;
    };
    for (const auto& tower : th::acceptance_towers()) {
        Rng rng(31);
        for (int round = 0; round < 8; ++round) {
            DiscreteGSet x = random_gset(rng, tower, 2, 5);
            DiscreteGSet y = random_gset(rng, tower, 2, 4);
            if (!bruteforce_ok(x, y)) continue;
            auto fast = enumerate_equivariant_maps(x, y);
            auto oracle = th::oracle_all_equivariant_tables(x, y);
            REQUIRE(fast.size() == oracle.size());
            std::vector<std::vector<int>> tables;
            for (const auto& m : fast) tables.push_back(m.table());
            std::sort(tables.begin(), tables.end());
            std::sort(oracle.begin(), oracle.end());
            REQUIRE(tables == oracle);
        }
    }
}

TEST_CASE("hom-set corner cases from the structure of orbits") {
    auto t = th::cyclic2_depth3();
    DiscreteGSet empty = DiscreteGSet::empty(t);
    DiscreteGSet swap = th::swap_gset(t);

    // exactly one vacuous map out of the empty set
    CHECK(enumerate_equivariant_maps(empty, swap).size() == 1);

    // no fixed point in a nontrivial orbit: no map from the point
    CHECK(enumerate_equivariant_maps(DiscreteGSet::point(t), swap).empty());

    // the swap set maps to itself two ways (its stabilizer is normal)
    CHECK(enumerate_equivariant_maps(swap, swap).size() == 2);
}

TEST_CASE("fixed points match the coset-morphism counting identity") {
    auto t = th::cyclic2_depth3();
    DiscreteGSet x = th::three_point_mixed(t);

    // trivial action: everything is fixed
    DiscreteGSet triv = DiscreteGSet::trivial(t, 5);
    for (const auto& u : enumerate_open_subgroups(t, 2))
        CHECK(fixed_points(triv, u).size() == 5);

    // the full group fixes only the fixed point of the mixed set
    CHECK(fixed_points(x, OpenSubgroup::full(t)) == std::vector<int>{2});

    // a normal stabilizer fixes the whole coset set
    OpenSubgroup u1 = OpenSubgroup::at_level(t, 1, {0});
    CHECK(fixed_points(th::swap_gset(t), u1) == std::vector<int>{0, 1});

    // |hom(G/U, X)| = |fixed_points(X, U)| across towers, levels, sizes,
    // with the bijection given by evaluation at the identity coset
    for (const auto& tower : th::acceptance_towers()) {
        Rng rng(17);
        for (int round = 0; round < 5; ++round) {
            DiscreteGSet y = random_gset(rng, tower, 2, 6);
            for (int level = 1; level <= tower->depth(); ++level)
                for (const auto& u : enumerate_open_subgroups(tower, level)) {
                    if (u.index() > 8) continue;
                    auto maps = enumerate_equivariant_maps(coset_gset(u), y);
                    auto fixed = fixed_points(y, u);
                    REQUIRE(maps.size() == fixed.size());
                    std::vector<int> values;
                    for (const auto& m : maps)
                        values.push_back(m(identity_coset_index(u)));
                    std::sort(values.begin(), values.end());
                    REQUIRE(values == fixed);
                }
        }
    }
}

TEST_CASE("pullbacks compute fiber products with the diagonal action") {
    auto t = th::cyclic2_depth3();
    DiscreteGSet swap = th::swap_gset(t);
    DiscreteGSet pt = DiscreteGSet::point(t);

    SECTION("over the terminal object: the full product") {
        EquivariantMap to_pt_a(swap, pt, {0, 0});
        EquivariantMap to_pt_b(th::three_point_mixed(t), pt, {0, 0, 0});
        Pullback p = pullback_finite(to_pt_a, to_pt_b);
        CHECK(p.object.size() == 6);
    }

    SECTION("along an identity: isomorphic to the other leg") {
        EquivariantMap f(swap, swap, {1, 0});
        Pullback p = pullback_finite(f, EquivariantMap::identity(swap));
        CHECK(p.object.size() == swap.size());
        CHECK(p.left.is_bijective());
    }

    SECTION("swap times swap over the point: two orbits of size two") {
        EquivariantMap to_pt(swap, pt, {0, 0});
        Pullback p = pullback_finite(to_pt, to_pt);
        CHECK(p.object.size() == 4);
        OrbitDecomposition dec = orbits_and_stabilizers(p.object);
        REQUIRE(dec.orbits.size() == 2);
        CHECK(dec.orbits[0].elements.size() == 2);
        CHECK(dec.orbits[1].elements.size() == 2);
    }
}

TEST_CASE("pullbacks commute and mediate uniquely for small cones") {
    for (const auto& tower : th::acceptance_towers()) {
        Rng rng(23);
        for (int round = 0; round < 4; ++round) {
            DiscreteGSet z = random_gset(rng, tower, 2, 4);
            EquivariantMap f = random_map_into(rng, tower, z, 6);
            EquivariantMap g = random_map_into(rng, tower, z, 6);
            Pullback p = pullback_finite(f, g);
            for (int e = 0; e < p.object.size(); ++e)
                REQUIRE(f(p.left(e)) == g(p.right(e)));
            for (int around = 0; around < 3; ++around) {
                DiscreteGSet w = random_gset(rng, tower, 2, 6);
                for (const auto& a : enumerate_equivariant_maps(w, f.domain()))
                    for (const auto& b : enumerate_equivariant_maps(w, g.domain())) {
                        bool cone = true;
                        for (int e = 0; e < w.size(); ++e)
                            if (f(a(e)) != g(b(e))) cone = false;
                        if (!cone) continue;
                        int mediators = 0;
                        for (const auto& m :
                             enumerate_equivariant_maps(w, p.object)) {
                            bool ok = true;
                            for (int e = 0; e < w.size(); ++e)
                                if (p.left(m(e)) != a(e) || p.right(m(e)) != b(e))
                                    ok = false;
                            if (ok) ++mediators;
                        }
                        REQUIRE(mediators == 1);
                    }
            }
        }
    }
}

TEST_CASE("the coset identification witness is equivariant and bijective everywhere") {
    for (const auto& tower : th::acceptance_towers()) {
        Rng rng(41);
        for (int round = 0; round < 12; ++round) {
            DiscreteGSet x = random_gset(rng, tower, 3, 8);
            OrbitDecomposition dec = orbits_and_stabilizers(x);
            REQUIRE(dec.witness.is_bijective());
            const int j = std::max(dec.coset_union.level(), x.level());
            const FiniteGroup& g = tower->level(j);
            for (int a = 0; a < g.order(); ++a)
                for (int e = 0; e < dec.coset_union.size(); ++e)
                    REQUIRE(dec.witness(dec.coset_union.act_from(j, a, e)) ==
                            x.act_from(j, a, dec.witness(e)));
        }
    }
}
