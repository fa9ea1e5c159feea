#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsite/generate.hpp"
#include "gsite/presheaf.hpp"
#include "gsite/refine.hpp"
#include "gsite/serialize.hpp"

namespace gsite {

struct CheckRecord {
    std::string name;
    std::string statement;  // the law the check exercises
    std::string status;     // "pass" | "fail" | "skip"
    nlohmann::json payload;
};

struct CheckReport {
    nlohmann::json config_echo;
    std::vector<CheckRecord> records;

    int passed() const { return count("pass"); }
    int failed() const { return count("fail"); }
    int skipped() const { return count("skip"); }

private:
    int count(const std::string& s) const {
        int n = 0;
        for (const auto& r : records)
            if (r.status == s) ++n;
        return n;
    }
};

namespace checks {

inline CheckRecord category_laws(const TowerPtr& tower, Rng& rng, int rounds) {
    long triples = 0;
    for (int r = 0; r < rounds; ++r) {
        DiscreteGSet x = random_gset(rng, tower, 2, 5);
        std::vector<RObject> objs{RObject::finite_set(x), RObject::group(tower),
                                  RObject::finite_set(DiscreteGSet::empty(tower))};
        for (const auto& a : objs)
            for (const auto& b : objs)
                for (const auto& c : objs)
                    for (const auto& f : hom(a, b)) {
                        if (compose(SiteMorphism::identity(b), f) != f ||
                            compose(f, SiteMorphism::identity(a)) != f)
                            return {"category_laws", "composition is associative and unital",
                                    "fail", {{"law", "unit"}}};
                        for (const auto& g : hom(b, c)) {
                            for (const auto& d : objs)
                                for (const auto& h : hom(c, d)) {
                                    ++triples;
                                    if (compose(h, compose(g, f)) !=
                                        compose(compose(h, g), f))
                                        return {"category_laws",
                                                "composition is associative and unital",
                                                "fail",
                                                {{"law", "associativity"}}};
                                }
                        }
                    }
    }
    return {"category_laws", "composition is associative and unital", "pass",
            {{"triples", triples}}};
}

inline CheckRecord isomorphism_axiom(const TowerPtr& tower, Rng& rng, int rounds) {
    for (int r = 0; r < rounds; ++r) {
        auto family = random_isomorphism_family(rng, tower);
        if (!is_epimorphic_cover(family).epimorphic)
            return {"axiom_isomorphism", "singleton isomorphism families are covers",
                    "fail", {{"round", r}}};
    }
    return {"axiom_isomorphism", "singleton isomorphism families are covers", "pass",
            {{"families", rounds}}};
}

/// Stability, stratified: every proof case is exercised `per_case` times and
/// each certificate is re-verified (exact commutation, epimorphic output).
inline CheckRecord stability_axiom(const TowerPtr& tower, Rng& rng, int per_case,
                                   bool inject_fault = false) {
    const RefineCase cases[] = {RefineCase::Case1, RefineCase::Case2, RefineCase::Case3,
                                RefineCase::Case4a, RefineCase::Case4b, RefineCase::Case5};
    nlohmann::json seen = nlohmann::json::object();
    long verified = 0;
    for (RefineCase want : cases)
        for (int r = 0; r < per_case; ++r) {
            RefineInstance inst = stratified_refine_instance(rng, tower, want);
            RefinementCertificate cert = stability_refine(inst.cover, inst.morphism);
            std::string why;
            if (!verify_certificate(cert, &why))
                return {"axiom_stability",
                        "covers refine along any morphism with exact factorizations",
                        "fail",
                        {{"case", refine_case_name(cert.label)}, {"why", why}}};
            if (cert.label != want)
                return {"axiom_stability",
                        "covers refine along any morphism with exact factorizations",
                        "fail",
                        {{"expected_case", refine_case_name(want)},
                         {"actual_case", refine_case_name(cert.label)}}};
            std::string key = refine_case_name(cert.label);
            seen[key] = (seen.contains(key) ? seen[key].get<int>() : 0) + 1;
            ++verified;
        }
    if (inject_fault) {
        // negative control: corrupt a connecting morphism and require the
        // verifier to reject the certificate
        RefineInstance inst = stratified_refine_instance(rng, tower, RefineCase::Case3);
        RefinementCertificate cert = stability_refine(inst.cover, inst.morphism);
        GroupElement bad = cert.factorizations[0].connecting.translation().mul(
            GroupElement::from_top(tower, 1 % tower->level(tower->depth()).order()));
        RefinementCertificate corrupted(
            cert.input, cert.morphism, cert.output,
            {{0, cert.factorizations[0].input_index, SiteMorphism::g_to_g(bad)}},
            cert.label);
        bool caught = !verify_certificate(corrupted);
        // this record is meant to fail: a corrupted certificate entered the
        // pipeline, and the run must exit nonzero whether or not the
        // verifier flagged it
        return {"axiom_stability_negative_control",
                "the certificate verifier rejects non-commuting factorizations",
                "fail",
                {{"injected", true}, {"caught", caught}}};
    }
    return {"axiom_stability",
            "covers refine along any morphism with exact factorizations", "pass",
            {{"instances", verified}, {"per_case", seen}}};
}

inline CheckRecord transitivity_axiom(const TowerPtr& tower, Rng& rng, int rounds) {
    long composed = 0;
    for (int r = 0; r < rounds; ++r) {
        DiscreteGSet c = random_gset(rng, tower, 2, 6);
        Cover cover = make_cover(random_finite_cover(rng, c));
        std::vector<Cover> subs;
        for (const auto& m : cover.members) {
            RObject dom = m.domain();
            if (dom.is_group()) {
                subs.push_back(make_cover({SiteMorphism::g_to_g(GroupElement::from_top(
                    tower, rng.below(tower->level(tower->depth()).order())))}));
            } else if (dom.is_empty_finite()) {
                subs.push_back(make_cover({SiteMorphism::identity(dom)}));
            } else {
                subs.push_back(make_cover(random_finite_cover(rng, dom.gset())));
            }
        }
        Cover composite = compose_covers(cover, subs);
        if (!composite.witness.epimorphic)
            return {"axiom_transitivity", "composites of covers cover", "fail",
                    {{"round", r}}};
        composed += static_cast<long>(composite.members.size());
    }
    return {"axiom_transitivity", "composites of covers cover", "pass",
            {{"composite_members", composed}}};
}

inline CheckRecord groupoid_restriction(const TowerPtr& tower, Rng& rng, int rounds) {
    const RObject g_obj = RObject::group(tower);
    const int top = tower->level(tower->depth()).order();
    auto full_hom = hom(g_obj, g_obj);
    for (int r = 0; r < rounds; ++r) {
        // families with a translation cover; families of vacuous maps do not
        std::vector<SiteMorphism> family;
        int translations = 0;
        const int n = 1 + rng.below(3);
        for (int i = 0; i < n; ++i) {
            if (rng.chance(60)) {
                family.push_back(
                    SiteMorphism::g_to_g(GroupElement::from_top(tower, rng.below(top))));
                ++translations;
            } else {
                family.push_back(SiteMorphism::vacuous_to_g(DiscreteGSet::empty(tower)));
            }
        }
        bool covers = is_epimorphic_cover(family).epimorphic;
        if (covers != (translations > 0))
            return {"groupoid_restriction",
                    "over the group object a family covers iff it contains a translation",
                    "fail",
                    {{"translations", translations}, {"covers", covers}}};
    }
    // a single translation generates the whole truncated hom-set
    Sieve s = Sieve::generated_by(
        {SiteMorphism::g_to_g(GroupElement::from_top(tower, rng.below(top)))});
    auto sat = saturation_morphisms(
        s, {g_obj, RObject::finite_set(DiscreteGSet::empty(tower))});
    long with_group_domain = 0;
    for (const auto& m : sat)
        if (m.kind() == SiteMorphism::Kind::GToG) ++with_group_domain;
    for (const auto& m : full_hom)
        if (!sieve_contains(s, m))
            return {"groupoid_restriction",
                    "over the group object a family covers iff it contains a translation",
                    "fail",
                    {{"missing_from_saturation", true}}};
    if (with_group_domain != static_cast<long>(full_hom.size()))
        return {"groupoid_restriction",
                "over the group object a family covers iff it contains a translation",
                "fail",
                {{"saturation_size", with_group_domain},
                 {"hom_size", full_hom.size()}}};
    return {"groupoid_restriction",
            "over the group object a family covers iff it contains a translation; one "
            "translation generates the maximal sieve",
            "pass",
            {{"hom_size", full_hom.size()}}};
}

inline CheckRecord orbit_identification(const TowerPtr& tower, Rng& rng, int rounds) {
    for (int r = 0; r < rounds; ++r) {
        DiscreteGSet x = random_gset(rng, tower, 3, 8);
        OrbitDecomposition dec = orbits_and_stabilizers(x);
        if (!dec.witness.is_bijective())
            return {"orbit_identification",
                    "a finite G-set is identified with the disjoint union of the coset sets "
                    "of its stabilizers",
                    "fail",
                    {{"round", r}}};
        // the witness is an EquivariantMap, so equivariance was enumerated on
        // construction; verify the partition data independently
        std::vector<char> seen(x.size(), 0);
        long total = 0;
        for (const auto& o : dec.orbits) {
            total += static_cast<long>(o.elements.size());
            for (int e : o.elements) seen[e] = 1;
            if (o.stabilizer.index() != static_cast<long>(o.elements.size()))
                return {"orbit_identification",
                        "a finite G-set is identified with the disjoint union of the coset "
                        "sets of its stabilizers",
                        "fail",
                        {{"orbit_rep", o.representative}}};
        }
        for (char s : seen)
            if (!s)
                return {"orbit_identification",
                        "a finite G-set is identified with the disjoint union of the coset "
                        "sets of its stabilizers",
                        "fail",
                        {{"partition", "incomplete"}}};
        if (total != x.size())
            return {"orbit_identification",
                    "a finite G-set is identified with the disjoint union of the coset sets "
                    "of its stabilizers",
                    "fail",
                    {{"partition", "overlapping"}}};
    }
    return {"orbit_identification",
            "a finite G-set is identified with the disjoint union of the coset sets of its "
            "stabilizers",
            "pass",
            {{"gsets", rounds}}};
}

inline CheckRecord fixed_point_counting(const TowerPtr& tower, Rng& rng, int rounds,
                                        long max_index = 8, int max_size = 6) {
    std::vector<OpenSubgroup> subgroups;
    for (int lv = 1; lv <= tower->depth(); ++lv)
        for (auto& u : enumerate_open_subgroups(tower, lv)) {
            if (u.index() > max_index) continue;
            bool dup = false;
            for (const auto& v : subgroups)
                if (v == u) dup = true;
            if (!dup) subgroups.push_back(std::move(u));
        }
    long pairs = 0;
    for (int r = 0; r < rounds; ++r) {
        DiscreteGSet x = random_gset(rng, tower, 2, max_size);
        for (const auto& u : subgroups) {
            auto maps = enumerate_equivariant_maps(coset_gset(u), x);
            auto fixed = fixed_points(x, u);
            ++pairs;
            if (maps.size() != fixed.size())
                return {"fixed_point_counting",
                        "morphisms from a coset set correspond to the fixed points of the "
                        "subgroup",
                        "fail",
                        {{"index", u.index()},
                         {"maps", maps.size()},
                         {"fixed", fixed.size()}}};
            // the correspondence is evaluation at the identity coset
            const int id_coset = identity_coset_index(u);
            std::vector<int> values;
            for (const auto& m : maps) values.push_back(m(id_coset));
            std::sort(values.begin(), values.end());
            if (values != fixed)
                return {"fixed_point_counting",
                        "morphisms from a coset set correspond to the fixed points of the "
                        "subgroup",
                        "fail",
                        {{"index", u.index()}, {"bijection", "mismatch"}}};
        }
    }
    return {"fixed_point_counting",
            "morphisms from a coset set correspond to the fixed points of the subgroup",
            "pass",
            {{"pairs", pairs}}};
}

inline std::vector<RObject> standard_registry(const TowerPtr& tower) {
    std::vector<RObject> registry;
    registry.push_back(RObject::finite_set(DiscreteGSet::empty(tower)));
    registry.push_back(RObject::finite_set(DiscreteGSet::point(tower)));
    auto subgroups = enumerate_open_subgroups(tower, 1);
    for (const auto& u : subgroups)
        if (!u.is_full() && u.index() <= 4)
            registry.push_back(RObject::finite_set(coset_gset(u)));
    registry.push_back(RObject::group(tower));
    return registry;
}

/// Extend a registry so that it contains every generator domain of the
/// sieves under test (saturation never leaves the tabulated hom-sets).
inline std::vector<RObject> close_registry_over(std::vector<RObject> registry,
                                                const std::vector<Sieve>& sieves) {
    for (const auto& s : sieves)
        for (const auto& g : s.generators) {
            RObject d = g.domain();
            bool present = false;
            for (const auto& r : registry)
                if (r == d) present = true;
            if (!present) registry.push_back(std::move(d));
        }
    return registry;
}

inline CheckRecord empty_presheaf(const TowerPtr& tower, Rng& rng) {
    std::vector<RObject> registry = standard_registry(tower);
    std::vector<Sieve> sieves;
    for (const auto& c : registry)
        for (auto& s : sample_covering_sieves(rng, c)) sieves.push_back(std::move(s));
    registry = close_registry_over(std::move(registry), sieves);
    EmptyPresheafReport rep = empty_presheaf_check(registry, sieves);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"codomain", r.codomain},
                        {"generators", r.generator_count},
                        {"pass", r.pass}});
    return {"empty_presheaf",
            "the empty presheaf satisfies the sheaf condition on every covering sieve",
            rep.all_pass ? "pass" : "fail",
            {{"sieves", rep.rows.size()}, {"rows", rows}}};
}

inline CheckRecord maximal_sieve_sections(const TowerPtr& tower, Rng& rng, int rounds) {
    std::vector<RObject> registry = standard_registry(tower);
    for (int r = 0; r < rounds; ++r) {
        DiscreteGSet x = random_gset(rng, tower, 2, 5);
        PresheafTable p = representable_presheaf(RObject::finite_set(x), registry);
        for (const auto& c : registry) {
            Sieve s = Sieve::maximal(c);
            auto fams = matching_families(p, s);
            auto cond = sheaf_condition(p, c, s);
            if (static_cast<long>(fams.size()) != p.value_count(p.object_index(c)) ||
                !cond.pass())
                return {"maximal_sieve_sections",
                        "matching families over the maximal sieve are exactly the sections",
                        "fail",
                        {{"families", fams.size()},
                         {"sections", p.value_count(p.object_index(c))}}};
        }
    }
    return {"maximal_sieve_sections",
            "matching families over the maximal sieve are exactly the sections", "pass",
            {{"rounds", rounds}}};
}

inline CheckRecord witness_suite(const TowerPtr& tower) {
    nlohmann::json rows = nlohmann::json::array();
    auto subgroups = enumerate_open_subgroups(tower, 1);
    std::vector<RObject> targets;
    for (const auto& u : subgroups)
        if (!u.is_full()) targets.push_back(RObject::finite_set(coset_gset(u)));
    targets.push_back(RObject::group(tower));
    for (const auto& t : targets) {
        SubcanonicalityWitness w = subcanonicality_witness(t);
        rows.push_back(to_json(w));
        if (!w.found || w.lhs == w.rhs || w.condition.pass())
            return {"non_subcanonical_witness",
                    "representable presheaves of nontrivial objects fail the sheaf "
                    "condition",
                    "fail",
                    {{"rows", rows}}};
    }
    // trivial targets must be declined
    SubcanonicalityWitness none =
        subcanonicality_witness(RObject::finite_set(DiscreteGSet::point(tower)));
    if (none.found)
        return {"non_subcanonical_witness",
                "representable presheaves of nontrivial objects fail the sheaf condition",
                "fail",
                {{"trivial_target_witnessed", true}}};
    return {"non_subcanonical_witness",
            "representable presheaves of nontrivial objects fail the sheaf condition",
            "pass",
            {{"targets", rows.size()}}};
}

}  // namespace checks

enum class Suite { Pretopology, Stability, Sheaf, Witness, All };

inline Suite parse_suite(const std::string& name) {
    if (name == "pretopology") return Suite::Pretopology;
    if (name == "stability") return Suite::Stability;
    if (name == "sheaf") return Suite::Sheaf;
    if (name == "witness") return Suite::Witness;
    if (name == "all") return Suite::All;
    throw SpecError("unknown suite \"" + name +
                    "\" (expected pretopology|stability|sheaf|witness|all)");
}

/// Run the selected suites over one tower with a fixed seed. Record order is
/// fixed, so reports are byte-stable for a given configuration.
inline CheckReport run_check_suites(const TowerPtr& tower, Suite suite,
                                    std::uint64_t seed, bool inject_stability_fault = false) {
    CheckReport report;
    Rng rng(seed);
    const bool pre = suite == Suite::Pretopology || suite == Suite::All;
    const bool stab = suite == Suite::Stability || suite == Suite::All;
    const bool sheaf = suite == Suite::Sheaf || suite == Suite::All;
    const bool wit = suite == Suite::Witness || suite == Suite::All;

    if (pre) {
        report.records.push_back(checks::category_laws(tower, rng, 2));
        report.records.push_back(checks::isomorphism_axiom(tower, rng, 25));
        report.records.push_back(checks::stability_axiom(tower, rng, 5));
        report.records.push_back(checks::transitivity_axiom(tower, rng, 10));
        report.records.push_back(checks::groupoid_restriction(tower, rng, 20));
    }
    if (stab)
        report.records.push_back(
            checks::stability_axiom(tower, rng, 8, inject_stability_fault));
    if (sheaf) {
        report.records.push_back(checks::orbit_identification(tower, rng, 15));
        report.records.push_back(checks::fixed_point_counting(tower, rng, 4));
        report.records.push_back(checks::empty_presheaf(tower, rng));
        report.records.push_back(checks::maximal_sieve_sections(tower, rng, 2));
    }
    if (wit) report.records.push_back(checks::witness_suite(tower));
    return report;
}

inline nlohmann::json report_to_json(const CheckReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& rec : r.records)
        checks.push_back({{"name", rec.name},
                          {"statement", rec.statement},
                          {"status", rec.status},
                          {"payload", rec.payload}});
    return nlohmann::json{{"config", r.config_echo},
                          {"checks", checks},
                          {"summary",
                           {{"pass", r.passed()},
                            {"fail", r.failed()},
                            {"skip", r.skipped()}}}};
}

inline std::string report_to_text(const CheckReport& r) {
    std::string out;
    for (const auto& rec : r.records) {
        std::string status = rec.status;
        for (auto& ch : status) ch = static_cast<char>(::toupper(ch));
        out += status + " " + rec.name + " — " + rec.statement + "\n";
    }
    out += "summary: " + std::to_string(r.passed()) + " pass, " +
           std::to_string(r.failed()) + " fail, " + std::to_string(r.skipped()) +
           " skip\n";
    return out;
}

}  // namespace gsite
