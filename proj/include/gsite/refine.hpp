#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gsite/site.hpp"

namespace gsite {

enum class RefineCase { Case1, Case2, Case3, Case4a, Case4b, Case5 };

inline const char* refine_case_name(RefineCase c) {
    switch (c) {
        case RefineCase::Case1: return "1";
        case RefineCase::Case2: return "2";
        case RefineCase::Case3: return "3";
        case RefineCase::Case4a: return "4a";
        case RefineCase::Case4b: return "4b";
        case RefineCase::Case5: return "5";
    }
    return "?";
}

/// Output of the stability axiom: a cover {h_j} of the domain of g such
/// that each composite g . h_j factors through a member of the input cover
/// via the recorded connecting morphism. Commutation is exact morphism
/// equality, re-verified before the certificate is returned.
struct RefinementCertificate {
    Cover input;
    SiteMorphism morphism;  // g : D -> C
    Cover output;           // cover of D
    struct Factorization {
        int output_index;
        int input_index;
        SiteMorphism connecting;  // alpha : dom(h_j) -> dom(f_i)
    };
    std::vector<Factorization> factorizations;
    RefineCase label;

    RefinementCertificate(Cover in, SiteMorphism g, Cover out,
                          std::vector<Factorization> fac, RefineCase lab)
        : input(std::move(in)), morphism(std::move(g)), output(std::move(out)),
          factorizations(std::move(fac)), label(lab) {}
};

/// Exact re-check of a certificate: every recorded square commutes as a
/// morphism equality and the output family is epimorphic.
inline bool verify_certificate(const RefinementCertificate& cert, std::string* why = nullptr) {
    if (!cert.output.witness.epimorphic) {
        if (why) *why = "output cover is not epimorphic: " + cert.output.witness.reason;
        return false;
    }
    if (cert.factorizations.size() != cert.output.members.size()) {
        if (why) *why = "certificate does not factor every output member";
        return false;
    }
    std::vector<char> seen(cert.output.members.size(), 0);
    for (const auto& fac : cert.factorizations) {
        if (fac.output_index < 0 ||
            fac.output_index >= static_cast<int>(cert.output.members.size()) ||
            fac.input_index < 0 ||
            fac.input_index >= static_cast<int>(cert.input.members.size())) {
            if (why) *why = "factorization indexes out of range";
            return false;
        }
        seen[fac.output_index] = 1;
        const SiteMorphism& h = cert.output.members[fac.output_index];
        const SiteMorphism& f = cert.input.members[fac.input_index];
        SiteMorphism lhs = compose(cert.morphism, h);
        SiteMorphism rhs = compose(f, fac.connecting);
        if (lhs != rhs) {
            if (why)
                *why = "square for output member " + std::to_string(fac.output_index) +
                       " does not commute";
            return false;
        }
    }
    for (char s : seen)
        if (!s) {
            if (why) *why = "some output member has no factorization";
            return false;
        }
    return true;
}

namespace detail {

/// Orbit index of an element within a decomposition.
inline int orbit_containing(const OrbitDecomposition& dec, int element) {
    for (std::size_t i = 0; i < dec.orbits.size(); ++i)
        for (int e : dec.orbits[i].elements)
            if (e == element) return static_cast<int>(i);
    throw CompatibilityError("orbit lookup: element not in any orbit");
}

/// Least element of the level group moving `from` to `to` inside X.
inline int least_mover(const DiscreteGSet& x, int from, int to) {
    const FiniteGroup& g = x.tower()->level(x.level());
    for (int a = 0; a < g.order(); ++a)
        if (x.act_at_level(a, from) == to) return a;
    throw CompatibilityError("least mover: elements lie in different orbits");
}

inline bool member_image_contains(const SiteMorphism& m, int element) {
    auto im = m.image_in_finite_codomain();
    return std::binary_search(im.begin(), im.end(), element);
}

/// Lowest member index whose image contains the element.
inline int lowest_hitting_member(const std::vector<SiteMorphism>& members, int element) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].codomain_is_group()) continue;
        if (member_image_contains(members[i], element)) return static_cast<int>(i);
    }
    throw CompatibilityError(
        "refinement: no member image contains a required codomain element (cover is not epimorphic)");
}

/// An empty-domain morphism into the member's domain, for refinements of
/// the empty set.
inline SiteMorphism empty_map_into(const DiscreteGSet& empty_set, const SiteMorphism& member) {
    if (member.domain_is_group()) return SiteMorphism::vacuous_to_g(empty_set);
    return SiteMorphism::fin_to_fin(
        EquivariantMap(empty_set, member.domain().gset(), {}));
}

}  // namespace detail

/// The stability axiom, constructively: given an epimorphic cover of C and
/// a morphism g : D -> C, produce a cover of D each of whose composites
/// with g factors through a member of the input cover. Dispatches on the
/// shapes of D and of the member domains; the choices (which member, which
/// moving element) always take the lowest index, so the output is
/// deterministic.
inline RefinementCertificate stability_refine(const Cover& cover, const SiteMorphism& g) {
    using K = SiteMorphism::Kind;
    if (!cover.witness.epimorphic)
        throw SpecError("stability refinement requires an epimorphic input cover");
    if (g.codomain() != cover.codomain)
        throw SpecError("stability refinement: morphism codomain differs from the cover's");

    const TowerPtr& tower = g.tower();
    const RObject d_obj = g.domain();
    bool any_group_domain = false;
    for (const auto& m : cover.members)
        if (m.domain_is_group()) any_group_domain = true;

    std::vector<SiteMorphism> out;
    std::vector<RefinementCertificate::Factorization> fac;

    if (d_obj.is_finite() && !any_group_domain) {
        // every domain in sight is a finite set: refine by pullbacks
        const EquivariantMap& gm = g.fin_map();
        for (std::size_t i = 0; i < cover.members.size(); ++i) {
            Pullback p = pullback_finite(gm, cover.members[i].fin_map());
            out.push_back(SiteMorphism::fin_to_fin(p.left));
            fac.push_back({static_cast<int>(out.size()) - 1, static_cast<int>(i),
                           SiteMorphism::fin_to_fin(p.right)});
        }
        RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                                   RefineCase::Case1);
        std::string why;
        if (!verify_certificate(cert, &why))
            throw CompatibilityError("refinement self-check failed: " + why);
        return cert;
    }

    if (d_obj.is_group() && !any_group_domain) {
        // D is the group object, all member domains finite, so C is finite.
        const DiscreteGSet& c = cover.codomain.gset();
        OrbitDecomposition dec = orbits_and_stabilizers(c);
        const int v = g.value();
        const int k = detail::orbit_containing(dec, v);
        const int rep = dec.orbits[k].representative;
        const int delta = detail::least_mover(c, rep, v);
        GroupElement lam = GroupElement::lift(tower, c.level(), delta).inverse();
        out.push_back(SiteMorphism::g_to_g(lam));
        const int l = detail::lowest_hitting_member(cover.members, rep);
        const auto& table = cover.members[l].fin_map().table();
        int cl = -1;
        for (int x = 0; x < static_cast<int>(table.size()); ++x)
            if (table[x] == rep) {
                cl = x;
                break;
            }
        fac.push_back({0, l,
                       SiteMorphism::g_to_fin(cover.members[l].fin_map().domain(), cl)});
        RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                                   RefineCase::Case2);
        std::string why;
        if (!verify_certificate(cert, &why))
            throw CompatibilityError("refinement self-check failed: " + why);
        return cert;
    }

    if (d_obj.is_group() && cover.codomain.is_group()) {
        // everything is the group object: a single translation suffices;
        // epimorphic covers of the group object always contain one
        const int k = cover.witness.translation_member;
        const GroupElement& fk = cover.members[k].translation();
        GroupElement lam = fk.mul(g.translation().inverse());
        out.push_back(SiteMorphism::g_to_g(lam));
        fac.push_back({0, k, SiteMorphism::g_to_g(GroupElement::identity(tower))});
        RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                                   RefineCase::Case3);
        std::string why;
        if (!verify_certificate(cert, &why))
            throw CompatibilityError("refinement self-check failed: " + why);
        return cert;
    }

    if (d_obj.is_group()) {
        // D is the group object, C finite, and some member domain is the
        // group object; the subcase depends on the member chosen to hit the
        // orbit representative of g(1).
        const DiscreteGSet& c = cover.codomain.gset();
        OrbitDecomposition dec = orbits_and_stabilizers(c);
        const int v = g.value();
        const int k = detail::orbit_containing(dec, v);
        const int rep = dec.orbits[k].representative;
        const int delta = detail::least_mover(c, rep, v);
        GroupElement lam = GroupElement::lift(tower, c.level(), delta).inverse();
        out.push_back(SiteMorphism::g_to_g(lam));
        const int l = detail::lowest_hitting_member(cover.members, rep);
        RefineCase label;
        if (cover.members[l].kind() == K::FinToFin) {
            label = RefineCase::Case4a;
            const auto& table = cover.members[l].fin_map().table();
            int cl = -1;
            for (int x = 0; x < static_cast<int>(table.size()); ++x)
                if (table[x] == rep) {
                    cl = x;
                    break;
                }
            fac.push_back({0, l,
                           SiteMorphism::g_to_fin(cover.members[l].fin_map().domain(), cl)});
        } else {
            label = RefineCase::Case4b;
            const int w = cover.members[l].value();  // f_l(1)
            const int cl = detail::least_mover(c, w, rep);
            fac.push_back({0, l,
                           SiteMorphism::g_to_g(GroupElement::lift(tower, c.level(), cl))});
        }
        RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                                   label);
        std::string why;
        if (!verify_certificate(cert, &why))
            throw CompatibilityError("refinement self-check failed: " + why);
        return cert;
    }

    // D finite, some member domain is the group object. One cover member
    // per element of D, mixing pullbacks with morphisms from the group.
    const DiscreteGSet& d_set = d_obj.gset();
    if (d_set.is_empty()) {
        out.push_back(SiteMorphism::identity(d_obj));
        fac.push_back({0, 0, detail::empty_map_into(d_set, cover.members[0])});
        RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                                   RefineCase::Case5);
        std::string why;
        if (!verify_certificate(cert, &why))
            throw CompatibilityError("refinement self-check failed: " + why);
        return cert;
    }
    const DiscreteGSet& c = cover.codomain.gset();
    const EquivariantMap& gm = g.fin_map();
    for (int d = 0; d < d_set.size(); ++d) {
        const int target = gm(d);
        const int l = detail::lowest_hitting_member(cover.members, target);
        if (cover.members[l].kind() == K::FinToFin) {
            Pullback p = pullback_finite(gm, cover.members[l].fin_map());
            out.push_back(SiteMorphism::fin_to_fin(p.left));
            fac.push_back({static_cast<int>(out.size()) - 1, l,
                           SiteMorphism::fin_to_fin(p.right)});
        } else {
            const int w = cover.members[l].value();  // f_l(1)
            OrbitDecomposition dec = orbits_and_stabilizers(c);
            const int k = detail::orbit_containing(dec, w);
            const int rep = dec.orbits[k].representative;
            const int theta = detail::least_mover(c, rep, w);
            const int cl = detail::least_mover(c, w, target);
            GroupElement theta_e = GroupElement::lift(tower, c.level(), theta);
            GroupElement cl_e = GroupElement::lift(tower, c.level(), cl);
            GroupElement move = theta_e.inverse().mul(cl_e.inverse());
            out.push_back(SiteMorphism::g_to_fin(d_set, act(move, d, d_set)));
            fac.push_back({static_cast<int>(out.size()) - 1, l,
                           SiteMorphism::g_to_g(theta_e.inverse())});
        }
    }
    RefinementCertificate cert(cover, g, make_cover(std::move(out)), std::move(fac),
                               RefineCase::Case5);
    std::string why;
    if (!verify_certificate(cert, &why))
        throw CompatibilityError("refinement self-check failed: " + why);
    return cert;
}

/// The transitivity axiom, constructively: compose a cover of C with a
/// cover of each member domain and verify the composite family still
/// covers.
inline Cover compose_covers(const Cover& cover, const std::vector<Cover>& subcovers) {
    if (!cover.witness.epimorphic)
        throw SpecError("cover composition requires an epimorphic outer cover");
    if (subcovers.size() != cover.members.size())
        throw SpecError("cover composition: one subcover per member is required");
    std::vector<SiteMorphism> composite;
    for (std::size_t i = 0; i < cover.members.size(); ++i) {
        if (!subcovers[i].witness.epimorphic)
            throw SpecError("cover composition: subcover " + std::to_string(i) +
                            " is not epimorphic");
        if (subcovers[i].codomain != cover.members[i].domain())
            throw SpecError("cover composition: subcover " + std::to_string(i) +
                            " does not cover the member's domain");
        for (const auto& s : subcovers[i].members)
            composite.push_back(compose(cover.members[i], s));
    }
    Cover result = make_cover(std::move(composite));
    if (!result.witness.epimorphic)
        throw CompatibilityError("cover composition: composite family failed the element chase");
    return result;
}

}  // namespace gsite
