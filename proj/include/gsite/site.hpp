#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsite/error.hpp"
#include "gsite/gset.hpp"

namespace gsite {

/// An object of the category: either a finite discrete G-set or the single
/// distinguished group object (the truncated group acting on itself).
class RObject {
public:
    static RObject group(TowerPtr tower) { return RObject(std::move(tower), std::nullopt); }
    static RObject finite_set(DiscreteGSet x) {
        TowerPtr t = x.tower();
        return RObject(std::move(t), std::move(x));
    }

    const TowerPtr& tower() const { return tower_; }
    bool is_group() const { return !finite_.has_value(); }
    bool is_finite() const { return finite_.has_value(); }
    const DiscreteGSet& gset() const {
        if (!finite_) throw CompatibilityError("RObject: the group object has no G-set");
        return *finite_;
    }
    bool is_empty_finite() const { return finite_ && finite_->is_empty(); }

    bool operator==(const RObject& o) const {
        if (tower_ != o.tower_) return false;
        if (is_group() != o.is_group()) return false;
        return is_group() || *finite_ == *o.finite_;
    }
    bool operator!=(const RObject& o) const { return !(*this == o); }

private:
    RObject(TowerPtr tower, std::optional<DiscreteGSet> fin)
        : tower_(std::move(tower)), finite_(std::move(fin)) {}

    TowerPtr tower_;
    std::optional<DiscreteGSet> finite_;
};

/// A morphism of the category, in one of four structural variants:
///   FinToFin     an equivariant map between finite G-sets
///   GToFin       psi : G -> X, determined by psi(1) = value
///   GToG         right multiplication delta |-> delta * gamma, so f(1) = gamma
///   VacuousToG   the empty map from the empty G-set into the group object
/// No nonempty finite set admits a morphism into the group object.
class SiteMorphism {
public:
    enum class Kind { FinToFin, GToFin, GToG, VacuousToG };

    static SiteMorphism fin_to_fin(EquivariantMap f) {
        SiteMorphism m(Kind::FinToFin, f.domain().tower());
        m.fin_ = std::move(f);
        return m;
    }
    static SiteMorphism g_to_fin(DiscreteGSet codomain, int value) {
        if (value < 0 || value >= codomain.size())
            throw SpecError("G -> finite morphism: value index out of range");
        SiteMorphism m(Kind::GToFin, codomain.tower());
        m.gset_ = std::move(codomain);
        m.value_ = value;
        return m;
    }
    static SiteMorphism g_to_g(GroupElement gamma) {
        SiteMorphism m(Kind::GToG, gamma.tower());
        m.gamma_ = std::move(gamma);
        return m;
    }
    static SiteMorphism vacuous_to_g(DiscreteGSet empty_domain) {
        if (!empty_domain.is_empty())
            throw SpecError("vacuous morphism: domain must be the empty G-set");
        SiteMorphism m(Kind::VacuousToG, empty_domain.tower());
        m.gset_ = std::move(empty_domain);
        return m;
    }
    static SiteMorphism identity(const RObject& c) {
        if (c.is_group()) return g_to_g(GroupElement::identity(c.tower()));
        return fin_to_fin(EquivariantMap::identity(c.gset()));
    }

    Kind kind() const { return kind_; }
    const TowerPtr& tower() const { return tower_; }

    const EquivariantMap& fin_map() const { return *fin_; }
    const GroupElement& translation() const { return *gamma_; }
    int value() const { return value_; }
    /// Codomain G-set of a GToFin morphism.
    const DiscreteGSet& value_codomain() const { return *gset_; }

    RObject domain() const {
        switch (kind_) {
            case Kind::FinToFin: return RObject::finite_set(fin_->domain());
            case Kind::GToFin:
            case Kind::GToG: return RObject::group(tower_);
            case Kind::VacuousToG: return RObject::finite_set(*gset_);
        }
        throw CompatibilityError("unreachable");
    }
    RObject codomain() const {
        switch (kind_) {
            case Kind::FinToFin: return RObject::finite_set(fin_->codomain());
            case Kind::GToFin: return RObject::finite_set(*gset_);
            case Kind::GToG:
            case Kind::VacuousToG: return RObject::group(tower_);
        }
        throw CompatibilityError("unreachable");
    }

    bool domain_is_group() const { return kind_ == Kind::GToFin || kind_ == Kind::GToG; }
    bool codomain_is_group() const {
        return kind_ == Kind::GToG || kind_ == Kind::VacuousToG;
    }

    /// Image inside a finite codomain, as sorted element indices.
    std::vector<int> image_in_finite_codomain() const {
        switch (kind_) {
            case Kind::FinToFin: return fin_->image();
            case Kind::GToFin: {
                const DiscreteGSet& c = *gset_;
                std::vector<int> im;
                for (int a = 0; a < c.tower()->level(c.level()).order(); ++a)
                    im.push_back(c.act_at_level(a, value_));
                std::sort(im.begin(), im.end());
                im.erase(std::unique(im.begin(), im.end()), im.end());
                return im;
            }
            default:
                throw CompatibilityError("image: codomain is the group object");
        }
    }

    bool operator==(const SiteMorphism& o) const {
        if (kind_ != o.kind_ || tower_ != o.tower_) return false;
        switch (kind_) {
            case Kind::FinToFin: return *fin_ == *o.fin_;
            case Kind::GToFin: return *gset_ == *o.gset_ && value_ == o.value_;
            case Kind::GToG: return *gamma_ == *o.gamma_;
            case Kind::VacuousToG: return *gset_ == *o.gset_;
        }
        return false;
    }
    bool operator!=(const SiteMorphism& o) const { return !(*this == o); }

private:
    SiteMorphism(Kind k, TowerPtr tower) : kind_(k), tower_(std::move(tower)) {}

    Kind kind_;
    TowerPtr tower_;
    std::optional<EquivariantMap> fin_;
    std::optional<DiscreteGSet> gset_;  // GToFin codomain / VacuousToG domain
    std::optional<GroupElement> gamma_;
    int value_ = -1;
};

/// Composite f . g (apply g first). Dispatches on the variant pair; the
/// result always satisfies (f.g)(x) = f(g(x)) pointwise at the top level.
inline SiteMorphism compose(const SiteMorphism& f, const SiteMorphism& g) {
    using K = SiteMorphism::Kind;
    if (g.codomain() != f.domain())
        throw CompatibilityError("compose: codomain of the inner morphism differs from the domain of the outer one");
    switch (g.kind()) {
        case K::FinToFin:
            // the outer morphism may be the vacuous map out of the empty set
            if (f.kind() == K::VacuousToG)
                return SiteMorphism::vacuous_to_g(g.fin_map().domain());
            return SiteMorphism::fin_to_fin(compose_maps(f.fin_map(), g.fin_map()));
        case K::GToFin:
            // f is finite-to-finite; the composite sends 1 to f(g(1))
            return SiteMorphism::g_to_fin(f.fin_map().codomain(), f.fin_map()(g.value()));
        case K::GToG: {
            if (f.kind() == K::GToG)
                // right translations: (f.g)(1) = g(1) * f(1)
                return SiteMorphism::g_to_g(g.translation().mul(f.translation()));
            // f : G -> X with f(1) = x, so (f.g)(1) = g(1) . x
            return SiteMorphism::g_to_fin(
                f.value_codomain(),
                act(g.translation(), f.value(), f.value_codomain()));
        }
        case K::VacuousToG: {
            if (f.kind() == K::GToG) return g;  // still the vacuous map into G
            // f : G -> X, composite is the empty map into X
            DiscreteGSet dom = g.domain().gset();
            return SiteMorphism::fin_to_fin(
                EquivariantMap(std::move(dom), f.value_codomain(), {}));
        }
    }
    throw CompatibilityError("unreachable");
}

/// Every morphism from B to C, enumerated deterministically:
///   finite -> finite    by orbit-wise target choice
///   G -> finite X       one morphism per element of X
///   G -> G              one right translation per top-level element
///   finite -> G         none unless the domain is empty (the vacuous map)
inline std::vector<SiteMorphism> hom(const RObject& b, const RObject& c) {
    if (b.tower() != c.tower())
        throw CompatibilityError("hom: objects over different towers");
    std::vector<SiteMorphism> out;
    if (b.is_finite() && c.is_finite()) {
        for (auto& m : enumerate_equivariant_maps(b.gset(), c.gset()))
            out.push_back(SiteMorphism::fin_to_fin(std::move(m)));
    } else if (b.is_group() && c.is_finite()) {
        for (int x = 0; x < c.gset().size(); ++x)
            out.push_back(SiteMorphism::g_to_fin(c.gset(), x));
    } else if (b.is_group() && c.is_group()) {
        const TowerPtr& t = b.tower();
        for (int a = 0; a < t->level(t->depth()).order(); ++a)
            out.push_back(SiteMorphism::g_to_g(GroupElement::from_top(t, a)));
    } else {
        if (b.is_empty_finite()) out.push_back(SiteMorphism::vacuous_to_g(b.gset()));
    }
    return out;
}

/// A family of morphisms with a shared codomain together with the cached
/// epimorphic verdict: the union of the images must exhaust a finite
/// codomain, and a family over the group object covers iff it contains a
/// right translation (translations are bijective, vacuous maps add nothing).
struct EpiWitness {
    bool epimorphic = false;
    // finite codomain: per codomain element, (member index, preimage data);
    // preimage is an element index for FinToFin members and -1 for GToFin
    // members (whose single generator 1 maps on by the recorded group move).
    std::vector<std::pair<int, int>> hits;
    int translation_member = -1;  // group codomain: index of a GToG member
    std::string reason;
};

inline EpiWitness is_epimorphic_cover(const std::vector<SiteMorphism>& family) {
    if (family.empty()) throw SpecError("cover: the member family must be nonempty");
    const RObject cod = family[0].codomain();
    for (const auto& m : family)
        if (m.codomain() != cod)
            throw SpecError("cover: members have different codomains");

    EpiWitness w;
    if (cod.is_group()) {
        for (std::size_t i = 0; i < family.size(); ++i)
            if (family[i].kind() == SiteMorphism::Kind::GToG) {
                w.epimorphic = true;
                w.translation_member = static_cast<int>(i);
                return w;
            }
        w.reason = "no right translation among the members; vacuous maps have empty image";
        return w;
    }
    const DiscreteGSet& c = cod.gset();
    w.hits.assign(c.size(), {-1, -1});
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& m = family[i];
        if (m.kind() == SiteMorphism::Kind::FinToFin) {
            const auto& t = m.fin_map().table();
            for (int x = 0; x < static_cast<int>(t.size()); ++x)
                if (w.hits[t[x]].first < 0) w.hits[t[x]] = {static_cast<int>(i), x};
        } else {  // GToFin: the image is the full orbit of the value
            for (int a = 0; a < c.tower()->level(c.level()).order(); ++a) {
                int y = c.act_at_level(a, m.value());
                if (w.hits[y].first < 0) w.hits[y] = {static_cast<int>(i), -1};
            }
        }
    }
    for (int y = 0; y < c.size(); ++y)
        if (w.hits[y].first < 0) {
            w.reason = "codomain element " + std::to_string(y) + " is not in any image";
            return w;
        }
    w.epimorphic = true;
    return w;
}

struct Cover {
    RObject codomain;
    std::vector<SiteMorphism> members;
    EpiWitness witness;

    Cover(RObject cod, std::vector<SiteMorphism> mem)
        : codomain(std::move(cod)), members(std::move(mem)),
          witness(is_epimorphic_cover(members)) {
        for (const auto& m : members)
            if (m.codomain() != codomain)
                throw SpecError("cover: member codomain differs from the stated codomain");
    }
};

inline Cover make_cover(std::vector<SiteMorphism> members) {
    if (members.empty()) throw SpecError("cover: the member family must be nonempty");
    RObject cod = members[0].codomain();
    return Cover(std::move(cod), std::move(members));
}

}  // namespace gsite
