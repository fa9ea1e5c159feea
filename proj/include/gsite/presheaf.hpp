#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsite/sieve.hpp"
#include "gsite/site.hpp"

namespace gsite {

/// A presheaf of finite sets on the truncated category, tabulated over a
/// finite object registry: a value-set cardinality per object and, for every
/// morphism f : A -> B between registry objects, a restriction function
/// P(B) -> P(A). Functoriality is verified exhaustively on construction.
class PresheafTable {
public:
    PresheafTable(std::vector<RObject> registry, std::vector<long> counts,
                  std::vector<std::vector<std::vector<std::vector<int>>>> restriction,
                  std::optional<RObject> representing = std::nullopt,
                  std::vector<std::vector<SiteMorphism>> sections = {})
        : registry_(std::move(registry)), counts_(std::move(counts)),
          restriction_(std::move(restriction)), representing_(std::move(representing)),
          sections_(std::move(sections)) {
        const std::size_t n = registry_.size();
        if (counts_.size() != n || restriction_.size() != n)
            throw SpecError("presheaf: registry, counts, restrictions sizes differ");
        homs_.assign(n, {});
        for (std::size_t a = 0; a < n; ++a) {
            homs_[a].resize(n);
            for (std::size_t b = 0; b < n; ++b)
                homs_[a][b] = hom(registry_[a], registry_[b]);
        }
        verify_shape();
        verify_functoriality();
    }

    const std::vector<RObject>& registry() const { return registry_; }
    long value_count(int obj) const { return counts_[obj]; }
    const std::vector<SiteMorphism>& homset(int a, int b) const { return homs_[a][b]; }
    bool is_representable() const { return representing_.has_value(); }
    const RObject& representing_object() const { return *representing_; }
    const SiteMorphism& section_morphism(int obj, int section) const {
        return sections_[obj][section];
    }

    int object_index(const RObject& c) const {
        for (std::size_t i = 0; i < registry_.size(); ++i)
            if (registry_[i] == c) return static_cast<int>(i);
        throw SpecError("presheaf: object is not in the registry");
    }

    int morphism_index(int a, int b, const SiteMorphism& f) const {
        const auto& hs = homs_[a][b];
        for (std::size_t m = 0; m < hs.size(); ++m)
            if (hs[m] == f) return static_cast<int>(m);
        throw SpecError("presheaf: morphism not found in the truncated hom-set");
    }

    /// P(f) applied to a section of P(B), for f the m-th morphism A -> B.
    int restrict_along(int a, int b, int m, int section) const {
        if (section < 0 || section >= counts_[b])
            throw SpecError("restrict: section index is not in the value set");
        return restriction_[a][b][m][section];
    }

    int restrict_along(const SiteMorphism& f, int section) const {
        int a = object_index(f.domain());
        int b = object_index(f.codomain());
        return restrict_along(a, b, morphism_index(a, b, f), section);
    }

private:
    void verify_shape() const {
        for (std::size_t a = 0; a < registry_.size(); ++a) {
            if (restriction_[a].size() != registry_.size())
                throw SpecError("presheaf: restriction table shape mismatch");
            for (std::size_t b = 0; b < registry_.size(); ++b) {
                if (restriction_[a][b].size() != homs_[a][b].size())
                    throw SpecError("presheaf: one restriction per morphism required");
                for (const auto& r : restriction_[a][b]) {
                    if (static_cast<long>(r.size()) != counts_[b])
                        throw SpecError("presheaf: restriction domain size mismatch");
                    for (int v : r)
                        if (v < 0 || v >= counts_[a])
                            throw SpecError("presheaf: restriction value out of range");
                }
            }
        }
    }

    /// Identity morphisms restrict as the identity; restriction along a
    /// composite equals the composite of restrictions. Checked over the
    /// whole truncated hom-sets of the registry.
    void verify_functoriality() const {
        const std::size_t n = registry_.size();
        for (std::size_t a = 0; a < n; ++a) {
            SiteMorphism id = SiteMorphism::identity(registry_[a]);
            int m = morphism_index(static_cast<int>(a), static_cast<int>(a), id);
            for (long s = 0; s < counts_[a]; ++s)
                if (restriction_[a][a][m][s] != s)
                    throw SpecError("presheaf: restriction along an identity is not the identity");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t mf = 0; mf < homs_[a][b].size(); ++mf)
                    for (std::size_t c = 0; c < n; ++c)
                        for (std::size_t mg = 0; mg < homs_[b][c].size(); ++mg) {
                            SiteMorphism gf = compose(homs_[b][c][mg], homs_[a][b][mf]);
                            int mgf = morphism_index(static_cast<int>(a),
                                                     static_cast<int>(c), gf);
                            for (long s = 0; s < counts_[c]; ++s) {
                                int via = restriction_[a][b][mf]
                                                      [restriction_[b][c][mg][s]];
                                if (restriction_[a][c][mgf][s] != via)
                                    throw SpecError(
                                        "presheaf: functoriality fails along a composite");
                            }
                        }
    }

    std::vector<RObject> registry_;
    std::vector<long> counts_;
    std::vector<std::vector<std::vector<std::vector<int>>>> restriction_;
    std::optional<RObject> representing_;
    std::vector<std::vector<SiteMorphism>> sections_;
    std::vector<std::vector<std::vector<SiteMorphism>>> homs_;
};

/// The presheaf hom(-, X) tabulated over the registry; restriction is
/// precomposition.
inline PresheafTable representable_presheaf(const RObject& x,
                                            std::vector<RObject> registry) {
    const std::size_t n = registry.size();
    std::vector<std::vector<SiteMorphism>> sections(n);
    std::vector<long> counts(n);
    for (std::size_t b = 0; b < n; ++b) {
        sections[b] = hom(registry[b], x);
        counts[b] = static_cast<long>(sections[b].size());
    }
    auto find_section = [&](std::size_t obj, const SiteMorphism& s) {
        for (std::size_t i = 0; i < sections[obj].size(); ++i)
            if (sections[obj][i] == s) return static_cast<int>(i);
        throw SpecError("representable presheaf: precomposition left the hom-set");
    };
    std::vector<std::vector<std::vector<std::vector<int>>>> restriction(n);
    for (std::size_t a = 0; a < n; ++a) {
        restriction[a].resize(n);
        for (std::size_t b = 0; b < n; ++b) {
            auto hs = hom(registry[a], registry[b]);
            restriction[a][b].resize(hs.size());
            for (std::size_t m = 0; m < hs.size(); ++m) {
                restriction[a][b][m].resize(counts[b]);
                for (long s = 0; s < counts[b]; ++s)
                    restriction[a][b][m][s] =
                        find_section(a, compose(sections[b][s], hs[m]));
            }
        }
    }
    return PresheafTable(std::move(registry), std::move(counts), std::move(restriction),
                         x, std::move(sections));
}

/// A matching family for a sieve: a free choice of section at each distinct
/// generator, extended along every tail by restriction. The extension is
/// tabulated over the full truncated saturation and its internal
/// compatibility (extending by u after h agrees with extending by h.u at
/// once) is checked exhaustively rather than assumed.
struct MatchingFamily {
    std::vector<int> root;  // one section per distinct generator
    // extension[i][b][m]: section assigned to (generator i, m-th tail from
    // registry object b)
    std::vector<std::vector<std::vector<int>>> extension;
};

namespace detail {

inline std::vector<SiteMorphism> distinct_generators(const Sieve& s) {
    std::vector<SiteMorphism> gens;
    for (const auto& t : s.generators) {
        bool seen = false;
        for (const auto& u : gens)
            if (u == t) {
                seen = true;
                break;
            }
        if (!seen) gens.push_back(t);
    }
    return gens;
}

}  // namespace detail

/// Exhaustive enumeration of the matching families of P over the sieve S.
/// Every generator domain must be a registry object so the truncated
/// saturation stays inside the tabulated hom-sets.
inline std::vector<MatchingFamily> matching_families(const PresheafTable& p,
                                                     const Sieve& s) {
    const auto gens = detail::distinct_generators(s);
    const std::size_t ng = gens.size();
    std::vector<int> dom_idx(ng);
    for (std::size_t i = 0; i < ng; ++i) {
        try {
            dom_idx[i] = p.object_index(gens[i].domain());
        } catch (const SpecError&) {
            throw SpecError(
                "matching families: a generator domain is outside the registry, the sieve "
                "cannot be saturated");
        }
    }
    const std::size_t nobj = p.registry().size();

    std::vector<MatchingFamily> out;
    if (ng == 0) return out;
    for (std::size_t i = 0; i < ng; ++i)
        if (p.value_count(dom_idx[i]) == 0) return out;  // some generator has no sections
    std::vector<long> pick(ng, 0);
    while (true) {
        bool valid = true;
        MatchingFamily fam;
        fam.root.assign(ng, 0);
        for (std::size_t i = 0; i < ng; ++i)
            fam.root[i] = static_cast<int>(pick[i]);
        fam.extension.assign(ng, {});
        for (std::size_t i = 0; i < ng && valid; ++i) {
            fam.extension[i].resize(nobj);
            for (std::size_t b = 0; b < nobj && valid; ++b) {
                const auto& tails = p.homset(static_cast<int>(b), dom_idx[i]);
                fam.extension[i][b].resize(tails.size());
                for (std::size_t m = 0; m < tails.size(); ++m)
                    fam.extension[i][b][m] =
                        p.restrict_along(static_cast<int>(b), dom_idx[i],
                                         static_cast<int>(m), fam.root[i]);
            }
        }
        // compatibility across further precomposition: restricting the value
        // at (i, h) along u must reproduce the value at (i, h.u)
        for (std::size_t i = 0; i < ng && valid; ++i)
            for (std::size_t b = 0; b < nobj && valid; ++b) {
                const auto& tails = p.homset(static_cast<int>(b), dom_idx[i]);
                for (std::size_t m = 0; m < tails.size() && valid; ++m)
                    for (std::size_t b2 = 0; b2 < nobj && valid; ++b2) {
                        const auto& us =
                            p.homset(static_cast<int>(b2), static_cast<int>(b));
                        for (std::size_t mu = 0; mu < us.size(); ++mu) {
                            SiteMorphism hu = compose(tails[m], us[mu]);
                            int idx_hu = p.morphism_index(static_cast<int>(b2),
                                                          dom_idx[i], hu);
                            int via = p.restrict_along(static_cast<int>(b2),
                                                       static_cast<int>(b),
                                                       static_cast<int>(mu),
                                                       fam.extension[i][b][m]);
                            if (via != fam.extension[i][b2][idx_hu]) {
                                valid = false;
                                break;
                            }
                        }
                    }
            }
        if (valid) out.push_back(std::move(fam));

        std::size_t pos = ng;
        bool exhausted = true;
        while (pos > 0) {
            --pos;
            if (++pick[pos] < p.value_count(dom_idx[pos])) {
                exhausted = false;
                break;
            }
            pick[pos] = 0;
        }
        if (exhausted) break;
    }
    return out;
}

/// Result of checking the equalizer form of the sheaf axiom for one
/// covering sieve: the canonical map from sections to matching families
/// must be a bijection.
struct SheafConditionResult {
    enum class Status { Pass, FailNotInjective, FailNotSurjective };
    Status status = Status::Pass;
    long section_count = 0;
    long family_count = 0;
    // FailNotInjective: two distinct sections with the same image
    std::pair<int, int> colliding_sections{-1, -1};
    // FailNotSurjective: the root tuple of a family no section reaches
    std::vector<int> unhit_family_root;

    bool pass() const { return status == Status::Pass; }
};

/// The canonical map evaluated at a section: its restrictions along the
/// distinct generators.
inline std::vector<int> canonical_image(const PresheafTable& p, const RObject& c,
                                        const Sieve& s, int section) {
    const auto gens = detail::distinct_generators(s);
    const int ci = p.object_index(c);
    std::vector<int> out(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        int di = p.object_index(gens[i].domain());
        out[i] = p.restrict_along(di, ci, p.morphism_index(di, ci, gens[i]), section);
    }
    return out;
}

inline SheafConditionResult sheaf_condition(const PresheafTable& p, const RObject& c,
                                            const Sieve& s) {
    if (s.codomain != c) throw SpecError("sheaf condition: sieve codomain differs from C");
    if (!is_covering_sieve(s))
        throw SpecError("sheaf condition: the axiom quantifies over covering sieves only");
    SheafConditionResult r;
    const int ci = p.object_index(c);
    auto families = matching_families(p, s);
    r.section_count = p.value_count(ci);
    r.family_count = static_cast<long>(families.size());

    std::vector<std::vector<int>> images;
    for (long x = 0; x < r.section_count; ++x) {
        auto img = canonical_image(p, c, s, static_cast<int>(x));
        for (long y = 0; y < static_cast<long>(images.size()); ++y)
            if (images[y] == img) {
                r.status = SheafConditionResult::Status::FailNotInjective;
                r.colliding_sections = {static_cast<int>(y), static_cast<int>(x)};
                return r;
            }
        images.push_back(std::move(img));
    }
    for (const auto& fam : families) {
        bool hit = false;
        for (const auto& img : images)
            if (img == fam.root) {
                hit = true;
                break;
            }
        if (!hit) {
            r.status = SheafConditionResult::Status::FailNotSurjective;
            r.unhit_family_root = fam.root;
            return r;
        }
    }
    return r;
}

/// Witness data for the failure of the sheaf condition at a representable
/// presheaf: a covering sieve for which sections and matching families have
/// different cardinalities.
struct SubcanonicalityWitness {
    bool found = false;
    std::string reason;  // when not found
    RObject target;
    RObject test_object;
    std::vector<SiteMorphism> sieve_generators;
    long lhs = 0;  // |hom(C, X)|
    long rhs = 0;  // matching families over the sieve
    SheafConditionResult condition;

    explicit SubcanonicalityWitness(RObject t)
        : target(std::move(t)), test_object(target) {}
};

/// Construct the non-sheaf witness for a target that is either the group
/// object or a finite G-set with nontrivial action. The default test object
/// is the one-point set, covered by the unique morphism from the group
/// object; trivial finite targets admit no witness of this shape.
inline SubcanonicalityWitness subcanonicality_witness(
    const RObject& x, std::optional<DiscreteGSet> test_object = std::nullopt) {
    SubcanonicalityWitness w(x);
    const TowerPtr& tower = x.tower();
    if (x.is_finite() && x.gset().is_trivial_action()) {
        w.reason = "target is a finite trivial G-set: sections and matching families agree "
                   "on every orbit cover";
        return w;
    }
    DiscreteGSet c = test_object ? *test_object : DiscreteGSet::point(tower);
    if (c.is_empty())
        throw SpecError("witness: the test object must be nonempty");
    RObject c_obj = RObject::finite_set(c);
    std::vector<RObject> registry{RObject::finite_set(DiscreteGSet::empty(tower)), c_obj,
                                  RObject::group(tower)};
    Sieve s(c_obj, orbit_cover_from_group(c));
    PresheafTable p = representable_presheaf(x, registry);
    w.test_object = c_obj;
    w.sieve_generators = s.generators;
    w.lhs = p.value_count(p.object_index(c_obj));
    w.rhs = static_cast<long>(matching_families(p, s).size());
    w.condition = sheaf_condition(p, c_obj, s);
    w.found = w.lhs != w.rhs;
    if (!w.found)
        w.reason = "sections and matching families agree over the chosen test object";
    return w;
}

/// The representable presheaf of a finite G-set together with the explicit
/// identifications hom(G/U, X) <-> fixed points of U on X (evaluation at
/// the identity coset) and hom(G, X) <-> X (evaluation at 1).
struct FixedPointPresheaf {
    PresheafTable table;
    struct CosetEntry {
        OpenSubgroup subgroup;
        int object_index;
        std::vector<std::pair<int, int>> pairs;  // (section, fixed point)
    };
    std::vector<CosetEntry> coset_entries;
    int group_object_index = -1;
    std::vector<std::pair<int, int>> group_pairs;  // (section, element of X)

    explicit FixedPointPresheaf(PresheafTable t) : table(std::move(t)) {}
};

inline FixedPointPresheaf fixed_point_presheaf(const DiscreteGSet& x,
                                               const std::vector<OpenSubgroup>& subgroups) {
    const TowerPtr& tower = x.tower();
    std::vector<RObject> registry;
    std::vector<DiscreteGSet> cosets;
    for (const auto& u : subgroups) {
        cosets.push_back(coset_gset(u));
        registry.push_back(RObject::finite_set(cosets.back()));
    }
    registry.push_back(RObject::group(tower));
    RObject x_obj = RObject::finite_set(x);

    FixedPointPresheaf out(representable_presheaf(x_obj, registry));
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
        FixedPointPresheaf::CosetEntry e{subgroups[i], static_cast<int>(i), {}};
        auto fixed = fixed_points(x, subgroups[i]);
        const int id_coset = identity_coset_index(subgroups[i]);
        const long n = out.table.value_count(e.object_index);
        std::vector<char> hit(fixed.size(), 0);
        for (long s = 0; s < n; ++s) {
            const SiteMorphism& sec =
                out.table.section_morphism(e.object_index, static_cast<int>(s));
            int value = sec.fin_map()(id_coset);
            auto it = std::find(fixed.begin(), fixed.end(), value);
            if (it == fixed.end())
                throw SpecError("fixed point identification: section value is not fixed");
            const int fi = static_cast<int>(it - fixed.begin());
            if (hit[fi])
                throw SpecError("fixed point identification: evaluation is not injective");
            hit[fi] = 1;
            e.pairs.emplace_back(static_cast<int>(s), value);
        }
        if (static_cast<long>(fixed.size()) != n)
            throw SpecError("fixed point identification: evaluation is not surjective");
        out.coset_entries.push_back(std::move(e));
    }
    out.group_object_index = static_cast<int>(subgroups.size());
    const long n = out.table.value_count(out.group_object_index);
    if (n != x.size())
        throw SpecError("group object identification: section count differs from |X|");
    std::vector<char> hit(x.size(), 0);
    for (long s = 0; s < n; ++s) {
        const SiteMorphism& sec =
            out.table.section_morphism(out.group_object_index, static_cast<int>(s));
        if (hit[sec.value()])
            throw SpecError("group object identification: evaluation is not injective");
        hit[sec.value()] = 1;
        out.group_pairs.emplace_back(static_cast<int>(s), sec.value());
    }
    return out;
}

/// Run the sheaf condition for hom(-, empty set) against a batch of
/// covering sieves; the empty presheaf must pass every one.
struct EmptyPresheafReport {
    struct Row {
        std::string codomain;
        std::size_t generator_count;
        bool pass;
        long sections;
        long families;
    };
    std::vector<Row> rows;
    bool all_pass = true;
};

inline EmptyPresheafReport empty_presheaf_check(
    const std::vector<RObject>& registry,
    const std::vector<Sieve>& covering_sieves) {
    if (registry.empty()) throw SpecError("empty presheaf check: registry required");
    const TowerPtr& tower = registry[0].tower();
    RObject empty_obj = RObject::finite_set(DiscreteGSet::empty(tower));
    PresheafTable p = representable_presheaf(empty_obj, registry);
    EmptyPresheafReport rep;
    for (const auto& s : covering_sieves) {
        auto r = sheaf_condition(p, s.codomain, s);
        std::string desc = s.codomain.is_group()
                               ? std::string("group object")
                               : "finite set of size " +
                                     std::to_string(s.codomain.gset().size());
        rep.rows.push_back({desc, s.generators.size(), r.pass(), r.section_count,
                            r.family_count});
        if (!r.pass()) rep.all_pass = false;
    }
    return rep;
}

}  // namespace gsite
