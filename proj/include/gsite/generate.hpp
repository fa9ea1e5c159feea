#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gsite/refine.hpp"
#include "gsite/sieve.hpp"

namespace gsite {

/// Deterministic seeded source. Bounded draws use plain modular reduction so
/// the stream is identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(static_cast<std::mt19937::result_type>(seed)) {}

    int below(int n) { return n <= 1 ? 0 : static_cast<int>(gen_() % n); }

    bool chance(int percent) { return below(100) < percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(static_cast<int>(v.size()))];
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
        return p;
    }

private:
    std::mt19937 gen_;
};

/// Random finite G-set: a disjoint union of coset sets of enumerated open
/// subgroups, relabeled. Every finite discrete G-set arises this way up to
/// isomorphism.
inline DiscreteGSet random_gset(Rng& rng, const TowerPtr& tower, int max_orbits,
                                int max_size) {
    std::vector<OpenSubgroup> pool;
    for (int lv = 1; lv <= tower->depth(); ++lv)
        for (auto& u : enumerate_open_subgroups(tower, lv))
            if (u.index() <= max_size) pool.push_back(std::move(u));
    std::vector<DiscreteGSet> parts;
    int size = 0;
    const int orbits = 1 + rng.below(max_orbits);
    for (int i = 0; i < orbits; ++i) {
        std::vector<const OpenSubgroup*> fitting;
        for (const auto& u : pool)
            if (size + u.index() <= max_size) fitting.push_back(&u);
        if (fitting.empty()) break;
        const OpenSubgroup* u = fitting[rng.below(static_cast<int>(fitting.size()))];
        parts.push_back(coset_gset(*u));
        size += parts.back().size();
    }
    if (parts.empty()) parts.push_back(DiscreteGSet::point(tower));
    DiscreteGSet x = disjoint_union(parts).object;
    return relabel_gset(x, rng.permutation(x.size()));
}

/// Random equivariant map into a fixed codomain; falls back to widening the
/// domain when a candidate domain admits no map.
inline EquivariantMap random_map_into(Rng& rng, const TowerPtr& tower,
                                      const DiscreteGSet& codomain, int max_size = 8) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        DiscreteGSet d = random_gset(rng, tower, 2, max_size);
        auto maps = enumerate_equivariant_maps(d, codomain);
        if (!maps.empty()) return maps[rng.below(static_cast<int>(maps.size()))];
    }
    auto maps = enumerate_equivariant_maps(codomain, codomain);
    return maps[rng.below(static_cast<int>(maps.size()))];
}

/// Epimorphic cover of a finite G-set by finite-domain morphisms: a random
/// subset of the orbit inclusions padded to full coverage, plus optional
/// extra members.
inline std::vector<SiteMorphism> random_finite_cover(Rng& rng, const DiscreteGSet& c) {
    std::vector<SiteMorphism> members;
    if (c.is_empty()) {
        members.push_back(SiteMorphism::identity(RObject::finite_set(c)));
        return members;
    }
    OrbitDecomposition dec = orbits_and_stabilizers(c);
    std::vector<DiscreteGSet> parts;
    for (const auto& o : dec.orbits) parts.push_back(coset_gset(o.stabilizer));
    DisjointUnion u = disjoint_union(parts);
    // the coset identification covers everything at once
    SiteMorphism full = SiteMorphism::fin_to_fin(dec.witness);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (rng.chance(50)) {
            EquivariantMap inj = component_injection(u, parts[i], static_cast<int>(i));
            members.push_back(SiteMorphism::fin_to_fin(compose_maps(dec.witness, inj)));
        }
    members.push_back(full);
    if (rng.chance(40)) members.push_back(SiteMorphism::fin_to_fin(random_map_into(rng, c.tower(), c)));
    return members;
}

/// One (cover, morphism) stability instance for each proof case. The member
/// layout forces the dispatch: the lowest member whose image meets the
/// orbit representative of g(1) decides between the two case-4 flavours.
struct RefineInstance {
    Cover cover;
    SiteMorphism morphism;
};

inline RefineInstance stratified_refine_instance(Rng& rng, const TowerPtr& tower,
                                                 RefineCase which) {
    const RObject group_obj = RObject::group(tower);
    const int top = tower->level(tower->depth()).order();
    auto random_translation = [&]() {
        return SiteMorphism::g_to_g(GroupElement::from_top(tower, rng.below(top)));
    };

    switch (which) {
        case RefineCase::Case1: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            Cover cover = make_cover(random_finite_cover(rng, c));
            EquivariantMap g = random_map_into(rng, tower, c);
            return {std::move(cover), SiteMorphism::fin_to_fin(std::move(g))};
        }
        case RefineCase::Case2: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            while (c.is_empty()) c = random_gset(rng, tower, 2, 6);
            Cover cover = make_cover(random_finite_cover(rng, c));
            return {std::move(cover),
                    SiteMorphism::g_to_fin(c, rng.below(c.size()))};
        }
        case RefineCase::Case3: {
            std::vector<SiteMorphism> members;
            if (rng.chance(30))
                members.push_back(
                    SiteMorphism::vacuous_to_g(DiscreteGSet::empty(tower)));
            members.push_back(random_translation());
            if (rng.chance(50)) members.push_back(random_translation());
            return {make_cover(std::move(members)), random_translation()};
        }
        case RefineCase::Case4a: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            while (c.is_empty()) c = random_gset(rng, tower, 2, 6);
            // a finite member first (it hits every representative), then a
            // member from the group object to make the shapes mixed
            std::vector<SiteMorphism> members;
            members.push_back(
                SiteMorphism::fin_to_fin(EquivariantMap::identity(c)));
            members.push_back(SiteMorphism::g_to_fin(c, rng.below(c.size())));
            return {make_cover(std::move(members)),
                    SiteMorphism::g_to_fin(c, rng.below(c.size()))};
        }
        case RefineCase::Case4b: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            while (c.is_empty()) c = random_gset(rng, tower, 2, 6);
            const int v = rng.below(c.size());
            OrbitDecomposition dec = orbits_and_stabilizers(c);
            int rep = -1;
            for (const auto& o : dec.orbits)
                for (int e : o.elements)
                    if (e == v) rep = o.representative;
            // the member hitting g(1)'s orbit comes from the group object
            // and sits first, so the refinement must take the 4b branch
            std::vector<SiteMorphism> members;
            const FiniteGroup& gl = tower->level(c.level());
            int w = c.act_at_level(rng.below(gl.order()), rep);
            members.push_back(SiteMorphism::g_to_fin(c, w));
            members.push_back(
                SiteMorphism::fin_to_fin(EquivariantMap::identity(c)));
            return {make_cover(std::move(members)), SiteMorphism::g_to_fin(c, v)};
        }
        case RefineCase::Case5: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            while (c.is_empty()) c = random_gset(rng, tower, 2, 6);
            std::vector<SiteMorphism> members;
            // one orbit is reached only through the group object, the rest
            // stay reachable through a finite member, so refining a finite
            // domain mixes pullback members with morphisms from the group
            OrbitDecomposition dec = orbits_and_stabilizers(c);
            members.push_back(
                SiteMorphism::g_to_fin(c, dec.orbits[0].representative));
            if (dec.orbits.size() > 1 || rng.chance(50))
                members.push_back(
                    SiteMorphism::fin_to_fin(EquivariantMap::identity(c)));
            Cover cover = make_cover(std::move(members));
            EquivariantMap g = random_map_into(rng, tower, c);
            return {std::move(cover), SiteMorphism::fin_to_fin(std::move(g))};
        }
    }
    throw SpecError("unknown refinement case");
}

/// Singleton isomorphism families for the isomorphism axiom: identity maps,
/// orbit-decomposition identifications, and right translations.
inline std::vector<SiteMorphism> random_isomorphism_family(Rng& rng, const TowerPtr& tower) {
    const int top = tower->level(tower->depth()).order();
    switch (rng.below(3)) {
        case 0: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            return {SiteMorphism::fin_to_fin(EquivariantMap::identity(c))};
        }
        case 1: {
            DiscreteGSet c = random_gset(rng, tower, 2, 6);
            return {SiteMorphism::fin_to_fin(orbits_and_stabilizers(c).witness)};
        }
        default:
            return {SiteMorphism::g_to_g(GroupElement::from_top(tower, rng.below(top)))};
    }
}

/// Covering sieves of assorted shapes over one object, for the sheaf
/// condition samplers.
inline std::vector<Sieve> sample_covering_sieves(Rng& rng, const RObject& c) {
    std::vector<Sieve> out;
    out.push_back(Sieve::maximal(c));
    if (c.is_group()) {
        const TowerPtr& tower = c.tower();
        const int top = tower->level(tower->depth()).order();
        out.push_back(Sieve::generated_by(
            {SiteMorphism::g_to_g(GroupElement::from_top(tower, rng.below(top)))}));
        return out;
    }
    if (c.is_empty_finite()) {
        out.clear();
        out.push_back(Sieve::generated_by(
            {SiteMorphism::fin_to_fin(EquivariantMap::identity(c.gset()))}));
        return out;
    }
    out.push_back(Sieve(c, orbit_cover_from_group(c.gset())));
    // a pretopology cover together with extra morphisms generates the same
    // kind of covering sieve
    auto mixed = orbit_cover_from_group(c.gset());
    mixed.push_back(SiteMorphism::fin_to_fin(EquivariantMap::identity(c.gset())));
    out.push_back(Sieve(c, std::move(mixed)));
    Rng local(static_cast<std::uint64_t>(rng.below(1 << 20)));
    out.push_back(Sieve(c, random_finite_cover(local, c.gset())));
    return out;
}

}  // namespace gsite
