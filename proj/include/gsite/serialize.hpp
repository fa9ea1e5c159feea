#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gsite/diagnostics.hpp"
#include "gsite/presheaf.hpp"
#include "gsite/refine.hpp"
#include "gsite/sieve.hpp"

namespace gsite {

// Structured report forms. Objects carry enough data to rebuild them; keys
// are emitted in sorted order so equal values serialize to equal bytes.

inline nlohmann::json to_json(const DiscreteGSet& x) {
    return nlohmann::json{{"size", x.size()}, {"level", x.level()}, {"action", x.action()}};
}

inline nlohmann::json to_json(const RObject& c) {
    if (c.is_group()) return nlohmann::json{{"kind", "group"}};
    return nlohmann::json{{"kind", "finite"}, {"gset", to_json(c.gset())}};
}

inline nlohmann::json to_json(const GroupElement& g) {
    return nlohmann::json{{"coords", g.coords()}};
}

inline nlohmann::json to_json(const OpenSubgroup& u) {
    return nlohmann::json{
        {"level", u.level()}, {"elements", u.elements()}, {"index", u.index()}};
}

inline nlohmann::json to_json(const SiteMorphism& m) {
    using K = SiteMorphism::Kind;
    switch (m.kind()) {
        case K::FinToFin:
            return nlohmann::json{{"variant", "fin_to_fin"},
                                  {"domain", to_json(m.fin_map().domain())},
                                  {"codomain", to_json(m.fin_map().codomain())},
                                  {"table", m.fin_map().table()}};
        case K::GToFin:
            return nlohmann::json{{"variant", "g_to_fin"},
                                  {"codomain", to_json(m.value_codomain())},
                                  {"value", m.value()}};
        case K::GToG:
            return nlohmann::json{{"variant", "g_to_g"},
                                  {"gamma", to_json(m.translation())}};
        case K::VacuousToG:
            return nlohmann::json{{"variant", "vacuous_to_g"},
                                  {"domain", to_json(m.domain().gset())}};
    }
    return {};
}

inline nlohmann::json to_json(const Cover& c) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : c.members) members.push_back(to_json(m));
    return nlohmann::json{{"codomain", to_json(c.codomain)},
                          {"members", members},
                          {"epimorphic", c.witness.epimorphic}};
}

inline nlohmann::json to_json(const Sieve& s) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : s.generators) gens.push_back(to_json(g));
    return nlohmann::json{{"codomain", to_json(s.codomain)}, {"generators", gens}};
}

inline nlohmann::json to_json(const RefinementCertificate& cert) {
    nlohmann::json fac = nlohmann::json::array();
    for (const auto& f : cert.factorizations)
        fac.push_back(nlohmann::json{{"output_member", f.output_index},
                                     {"input_member", f.input_index},
                                     {"connecting", to_json(f.connecting)}});
    return nlohmann::json{{"case", refine_case_name(cert.label)},
                          {"input_cover", to_json(cert.input)},
                          {"morphism", to_json(cert.morphism)},
                          {"output_cover", to_json(cert.output)},
                          {"factorizations", fac}};
}

inline nlohmann::json to_json(const OrbitDecomposition& dec) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : dec.orbits)
        orbits.push_back(nlohmann::json{{"representative", o.representative},
                                        {"stabilizer", to_json(o.stabilizer)},
                                        {"elements", o.elements}});
    return nlohmann::json{{"orbits", orbits},
                          {"coset_union", to_json(dec.coset_union)},
                          {"witness_table", dec.witness.table()}};
}

inline nlohmann::json to_json(const FiberProductDiagnostic& d) {
    nlohmann::json j{{"in_site", d.in_site}};
    if (d.in_site) {
        j["object"] = to_json(*d.object);
        j["left_projection"] = to_json(*d.left_projection);
        j["right_projection"] = to_json(*d.right_projection);
    } else {
        j["description"] = d.description;
        if (d.orbit_set_infinite) {
            j["free_orbit_count"] = "infinite";
            j["orbit_coset_subgroup"] = to_json(*d.orbit_coset_subgroup);
        } else {
            j["free_orbit_count"] = d.free_orbit_count;
        }
    }
    return j;
}

inline nlohmann::json to_json(const SheafConditionResult& r) {
    nlohmann::json j{{"sections", r.section_count}, {"matching_families", r.family_count}};
    switch (r.status) {
        case SheafConditionResult::Status::Pass:
            j["status"] = "pass";
            break;
        case SheafConditionResult::Status::FailNotInjective:
            j["status"] = "fail";
            j["failure"] = "not_injective";
            j["colliding_sections"] =
                nlohmann::json::array({r.colliding_sections.first,
                                       r.colliding_sections.second});
            break;
        case SheafConditionResult::Status::FailNotSurjective:
            j["status"] = "fail";
            j["failure"] = "not_surjective";
            j["unhit_family_root"] = r.unhit_family_root;
            break;
    }
    return j;
}

inline nlohmann::json to_json(const SubcanonicalityWitness& w) {
    nlohmann::json j{{"found", w.found}, {"target", to_json(w.target)}};
    if (!w.found) {
        j["reason"] = w.reason;
        return j;
    }
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : w.sieve_generators) gens.push_back(to_json(g));
    j["test_object"] = to_json(w.test_object);
    j["sieve_generators"] = gens;
    j["lhs_sections"] = w.lhs;
    j["rhs_matching_families"] = w.rhs;
    j["sheaf_condition"] = to_json(w.condition);
    return j;
}

}  // namespace gsite
