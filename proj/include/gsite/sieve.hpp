#pragma once

#include <utility>
#include <vector>

#include "gsite/site.hpp"

namespace gsite {

/// A sieve on its codomain, presented by a generator family: the morphisms
/// it contains are exactly the composites (generator . tail). Membership is
/// decided by a factorization search over the finite truncated hom-sets.
struct Sieve {
    RObject codomain;
    std::vector<SiteMorphism> generators;

    Sieve(RObject cod, std::vector<SiteMorphism> gens)
        : codomain(std::move(cod)), generators(std::move(gens)) {
        for (const auto& t : generators)
            if (t.codomain() != codomain)
                throw SpecError("sieve: generator codomain differs from the sieve codomain");
    }

    static Sieve generated_by(std::vector<SiteMorphism> gens) {
        if (gens.empty()) throw SpecError("sieve: at least one generator required");
        RObject cod = gens[0].codomain();
        return Sieve(std::move(cod), std::move(gens));
    }

    /// The sieve of all morphisms into C, generated by the identity.
    static Sieve maximal(const RObject& c) {
        return Sieve(c, {SiteMorphism::identity(c)});
    }
};

/// True iff f equals some generator composed with a morphism into the
/// generator's domain.
inline bool sieve_contains(const Sieve& s, const SiteMorphism& f) {
    if (f.codomain() != s.codomain)
        throw SpecError("sieve membership: codomain mismatch");
    const RObject dom_f = f.domain();
    for (const auto& t : s.generators) {
        if (t == f) return true;
        for (const auto& g : hom(dom_f, t.domain()))
            if (compose(t, g) == f) return true;
    }
    return false;
}

/// A sieve covers iff its generator family is epimorphic; precomposition
/// never enlarges images, so the generators carry the whole image data.
inline bool is_covering_sieve(const Sieve& s) {
    if (s.generators.empty()) return false;
    return is_epimorphic_cover(s.generators).epimorphic;
}

/// One element of the truncated saturation of a sieve: a generator together
/// with a tail morphism out of a registry object, kept as the pair that
/// produced it. Distinct pairs may compose to equal morphisms; the
/// factorization structure (which generator, which tail) is what matching
/// families are indexed by.
struct SieveMember {
    int generator;
    SiteMorphism tail;       // registry object -> dom(generator)
    SiteMorphism composite;  // generator . tail
};

/// All (generator, tail) pairs with tails drawn from the full truncated
/// hom-sets out of the registry objects. Tails are enumerated in hom order,
/// so the saturation is deterministic.
inline std::vector<SieveMember> saturate(const Sieve& s,
                                         const std::vector<RObject>& registry) {
    std::vector<SieveMember> out;
    for (std::size_t i = 0; i < s.generators.size(); ++i) {
        const RObject dom = s.generators[i].domain();
        for (const auto& b : registry)
            for (const auto& tail : hom(b, dom))
                out.push_back({static_cast<int>(i), tail,
                               compose(s.generators[i], tail)});
    }
    return out;
}

/// The orbit-wise cover of a finite G-set by morphisms from the group
/// object: one generator per orbit, sending 1 to the representative.
inline std::vector<SiteMorphism> orbit_cover_from_group(const DiscreteGSet& c) {
    std::vector<SiteMorphism> gens;
    for (const auto& o : orbits_and_stabilizers(c).orbits)
        gens.push_back(SiteMorphism::g_to_fin(c, o.representative));
    return gens;
}

/// The distinct morphisms in the truncated saturation.
inline std::vector<SiteMorphism> saturation_morphisms(const Sieve& s,
                                                      const std::vector<RObject>& registry) {
    std::vector<SiteMorphism> out;
    for (const auto& m : saturate(s, registry)) {
        bool seen = false;
        for (const auto& e : out)
            if (e == m.composite) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(m.composite);
    }
    return out;
}

}  // namespace gsite
