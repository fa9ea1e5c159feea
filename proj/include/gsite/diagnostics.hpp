#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsite/site.hpp"

namespace gsite {

/// Outcome of probing a cospan A -> C <- B for a fiber product inside the
/// category. When a leg comes from the group object the ambient fiber
/// product is a disjoint union of free orbits of the group; it lives in the
/// category only when there is at most one such orbit.
struct FiberProductDiagnostic {
    bool in_site = false;

    // in-site payload
    std::optional<RObject> object;
    std::optional<SiteMorphism> left_projection;   // -> dom(f)
    std::optional<SiteMorphism> right_projection;  // -> dom(g)

    // out-of-site payload
    std::string description;
    long free_orbit_count = -1;        // >= 2 when finite; -1 when not applicable
    bool orbit_set_infinite = false;   // orbits form a coset of an open subgroup
    std::optional<OpenSubgroup> orbit_coset_subgroup;
};

/// Number of free orbits of the ambient fiber product G x_C B for a leg
/// psi : G -> C with psi(1) = v and a finite leg q : B -> C. Every orbit is
/// free because the group coordinate is; the count is |q^{-1}(orbit of v)|
/// divided by the orbit size.
inline long ambient_free_orbit_count(const DiscreteGSet& c, int v, const EquivariantMap& q) {
    std::vector<int> orbit;
    const FiniteGroup& g = c.tower()->level(c.level());
    for (int a = 0; a < g.order(); ++a) orbit.push_back(c.act_at_level(a, v));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    long hits = 0;
    for (int b = 0; b < q.domain().size(); ++b)
        if (std::binary_search(orbit.begin(), orbit.end(), q(b))) ++hits;
    return hits / static_cast<long>(orbit.size());
}

inline FiberProductDiagnostic fiber_product_diagnostic(const SiteMorphism& f,
                                                       const SiteMorphism& g) {
    using K = SiteMorphism::Kind;
    if (f.codomain() != g.codomain())
        throw SpecError("fiber product: the two legs have different codomains");
    FiberProductDiagnostic out;
    const TowerPtr& tower = f.tower();

    const bool f_from_group = f.domain_is_group();
    const bool g_from_group = g.domain_is_group();

    if (!f_from_group && !g_from_group) {
        if (f.kind() == K::VacuousToG || g.kind() == K::VacuousToG) {
            // both legs into the group object from finite sets: both vacuous,
            // and the empty set is the fiber product
            DiscreteGSet e = DiscreteGSet::empty(tower);
            out.in_site = true;
            out.object = RObject::finite_set(e);
            out.left_projection = SiteMorphism::fin_to_fin(
                EquivariantMap(e, f.domain().gset(), {}));
            out.right_projection = SiteMorphism::fin_to_fin(
                EquivariantMap(e, g.domain().gset(), {}));
            return out;
        }
        Pullback p = pullback_finite(f.fin_map(), g.fin_map());
        out.in_site = true;
        out.object = RObject::finite_set(p.object);
        out.left_projection = SiteMorphism::fin_to_fin(p.left);
        out.right_projection = SiteMorphism::fin_to_fin(p.right);
        return out;
    }

    if (f_from_group && g_from_group) {
        if (f.kind() == K::GToG || g.kind() == K::GToG)
            throw SpecError(
                "fiber product diagnostic: cospans of two translations of the group object are "
                "not supported (only legs over a finite codomain)");
        // two morphisms G -> C over a finite C; orbits of the ambient
        // product biject with { tau : tau . g(1) = f(1) }, a coset of the
        // stabilizer of g(1)
        const DiscreteGSet& c = f.value_codomain();
        const FiniteGroup& gl = tower->level(c.level());
        std::vector<int> movers;
        std::vector<int> stab;
        for (int a = 0; a < gl.order(); ++a) {
            if (c.act_at_level(a, g.value()) == f.value()) movers.push_back(a);
            if (c.act_at_level(a, g.value()) == g.value()) stab.push_back(a);
        }
        if (movers.empty()) {
            // the values sit in different orbits: the ambient fiber product
            // is empty, which the category does contain
            DiscreteGSet e = DiscreteGSet::empty(tower);
            out.in_site = true;
            out.object = RObject::finite_set(e);
            out.left_projection = SiteMorphism::vacuous_to_g(e);
            out.right_projection = SiteMorphism::vacuous_to_g(e);
            return out;
        }
        out.in_site = false;
        out.orbit_set_infinite = true;
        out.orbit_coset_subgroup = OpenSubgroup::at_level(tower, c.level(), stab);
        out.description =
            "free orbits indexed by a coset of an open subgroup of index " +
            std::to_string(out.orbit_coset_subgroup->index()) + " (infinite)";
        return out;
    }

    // exactly one leg from the group object; orient it as psi
    const SiteMorphism& psi = f_from_group ? f : g;
    const SiteMorphism& fin = f_from_group ? g : f;
    if (psi.kind() == K::GToG) {
        // codomain is the group object, so the finite leg is vacuous and the
        // ambient fiber product is empty
        DiscreteGSet e = DiscreteGSet::empty(tower);
        out.in_site = true;
        out.object = RObject::finite_set(e);
        SiteMorphism to_group = SiteMorphism::vacuous_to_g(e);
        SiteMorphism to_fin = SiteMorphism::fin_to_fin(
            EquivariantMap(e, fin.domain().gset(), {}));
        out.left_projection = f_from_group ? to_group : to_fin;
        out.right_projection = f_from_group ? to_fin : to_group;
        return out;
    }
    const DiscreteGSet& c = psi.value_codomain();
    long k = ambient_free_orbit_count(c, psi.value(), fin.fin_map());
    if (k == 0) {
        DiscreteGSet e = DiscreteGSet::empty(tower);
        out.in_site = true;
        out.object = RObject::finite_set(e);
        SiteMorphism to_group = SiteMorphism::vacuous_to_g(e);
        SiteMorphism to_fin = SiteMorphism::fin_to_fin(
            EquivariantMap(e, fin.fin_map().domain(), {}));
        out.left_projection = f_from_group ? to_group : to_fin;
        out.right_projection = f_from_group ? to_fin : to_group;
        return out;
    }
    if (k == 1) {
        // a single free orbit: the fiber product is the group object itself;
        // pick the least point (gamma0, b0) with psi(gamma0) = q(b0)
        const FiniteGroup& gl = tower->level(c.level());
        int gamma0 = -1, b0 = -1;
        for (int b = 0; b < fin.fin_map().domain().size() && gamma0 < 0; ++b)
            for (int a = 0; a < gl.order(); ++a)
                if (c.act_at_level(a, psi.value()) == fin.fin_map()(b)) {
                    gamma0 = a;
                    b0 = b;
                    break;
                }
        out.in_site = true;
        out.object = RObject::group(tower);
        SiteMorphism to_group =
            SiteMorphism::g_to_g(GroupElement::lift(tower, c.level(), gamma0));
        SiteMorphism to_fin = SiteMorphism::g_to_fin(fin.fin_map().domain(), b0);
        out.left_projection = f_from_group ? to_group : to_fin;
        out.right_projection = f_from_group ? to_fin : to_group;
        return out;
    }
    out.in_site = false;
    out.free_orbit_count = k;
    out.description = std::to_string(k) + " free copies of the group object";
    return out;
}

}  // namespace gsite
