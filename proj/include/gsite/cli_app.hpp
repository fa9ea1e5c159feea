#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsite/checks.hpp"
#include "gsite/spec_io.hpp"

namespace gsite {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoWitness = 3;

struct RunConfig {
    std::string tower_path;
    int depth_override = -1;
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::string format = "json";  // json | text
    std::string out_path;         // empty = stdout
    bool inject_stability_fault = false;
};

namespace detail {

inline void emit(const std::string& text, const std::string& out_path, std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw SpecError("cannot open output path: " + out_path);
    f << text;
}

inline nlohmann::json config_echo(const RunConfig& cfg) {
    return nlohmann::json{{"tower", cfg.tower_path},
                          {"depth", cfg.depth_override},
                          {"suite", cfg.suite},
                          {"seed", cfg.seed},
                          {"format", cfg.format}};
}

/// Target descriptors: "group", "empty", "trivial:N", "coset:LEVEL:IDX"
/// (IDX into the enumerated subgroups of that level), or a G-set spec path.
inline RObject parse_target(const TowerPtr& tower, const std::string& desc) {
    if (desc == "group") return RObject::group(tower);
    if (desc == "empty") return RObject::finite_set(DiscreteGSet::empty(tower));
    auto starts_with = [&](const std::string& p) {
        return desc.size() > p.size() && desc.compare(0, p.size(), p) == 0;
    };
    if (starts_with("trivial:")) {
        int n = std::stoi(desc.substr(8));
        if (n < 0) throw SpecError("target: trivial size must be nonnegative");
        return RObject::finite_set(DiscreteGSet::trivial(tower, n));
    }
    if (starts_with("coset:")) {
        std::string rest = desc.substr(6);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw SpecError("target: expected coset:LEVEL:INDEX");
        int level = std::stoi(rest.substr(0, colon));
        int idx = std::stoi(rest.substr(colon + 1));
        auto subgroups = enumerate_open_subgroups(tower, level);
        if (idx < 0 || idx >= static_cast<int>(subgroups.size()))
            throw SpecError("target: subgroup index out of range (level has " +
                            std::to_string(subgroups.size()) + " subgroups)");
        return RObject::finite_set(coset_gset(subgroups[idx]));
    }
    return RObject::finite_set(load_gset_file(tower, desc));
}

}  // namespace detail

/// Run the selected suites and serialize the report. Exit 0 iff every
/// record passed.
inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    TowerPtr tower;
    Suite suite;
    try {
        tower = load_tower_file(cfg.tower_path, cfg.depth_override);
        suite = parse_suite(cfg.suite);
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    CheckReport report;
    try {
        report = run_check_suites(tower, suite, cfg.seed, cfg.inject_stability_fault);
    } catch (const std::exception& e) {
        // a throw inside a suite is a failed check, not a malformed input
        report.records.push_back(
            {"suite_exception", "check suites run to completion", "fail",
             {{"what", e.what()}}});
    }
    report.config_echo = detail::config_echo(cfg);
    std::string text = cfg.format == "text" ? report_to_text(report)
                                            : report_to_json(report).dump(2) + "\n";
    try {
        detail::emit(text, cfg.out_path, out);
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return report.failed() == 0 ? kExitOk : kExitCheckFailure;
}

inline int cmd_witness(const RunConfig& cfg, const std::string& target,
                       std::ostream& out, std::ostream& err) {
    try {
        TowerPtr tower = load_tower_file(cfg.tower_path, cfg.depth_override);
        RObject x = detail::parse_target(tower, target);
        SubcanonicalityWitness w = subcanonicality_witness(x);
        nlohmann::json j = to_json(w);
        j["config"] = detail::config_echo(cfg);
        std::string text;
        if (cfg.format == "text") {
            std::ostringstream s;
            if (w.found) {
                s << "witness found\n"
                  << "  sections over the test object: " << w.lhs << "\n"
                  << "  matching families over the sieve: " << w.rhs << "\n";
            } else {
                s << "no witness: " << w.reason << "\n";
            }
            text = s.str();
        } else {
            text = j.dump(2) + "\n";
        }
        detail::emit(text, cfg.out_path, out);
        return w.found ? kExitOk : kExitNoWitness;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
}

inline int cmd_orbits(const RunConfig& cfg, const std::string& gset_desc,
                      std::ostream& out, std::ostream& err) {
    try {
        TowerPtr tower = load_tower_file(cfg.tower_path, cfg.depth_override);
        RObject x = detail::parse_target(tower, gset_desc);
        if (!x.is_finite()) throw SpecError("orbits: target must be a finite G-set");
        OrbitDecomposition dec = orbits_and_stabilizers(x.gset());
        std::string text;
        if (cfg.format == "text") {
            std::ostringstream s;
            s << dec.orbits.size() << " orbit(s)\n";
            for (const auto& o : dec.orbits) {
                s << "  representative " << o.representative << ", stabilizer level "
                  << o.stabilizer.level() << ", index " << o.stabilizer.index()
                  << ", elements {";
                for (std::size_t i = 0; i < o.elements.size(); ++i)
                    s << (i ? "," : "") << o.elements[i];
                s << "}\n";
            }
            text = s.str();
        } else {
            text = to_json(dec).dump(2) + "\n";
        }
        detail::emit(text, cfg.out_path, out);
        return kExitOk;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
}

inline int cmd_hom(const RunConfig& cfg, const std::string& from, const std::string& to,
                   std::ostream& out, std::ostream& err) {
    try {
        TowerPtr tower = load_tower_file(cfg.tower_path, cfg.depth_override);
        RObject a = detail::parse_target(tower, from);
        RObject b = detail::parse_target(tower, to);
        auto morphisms = hom(a, b);
        std::string text;
        if (cfg.format == "text") {
            text = std::to_string(morphisms.size()) + " morphism(s)\n";
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& m : morphisms) arr.push_back(to_json(m));
            text = nlohmann::json{{"count", morphisms.size()}, {"morphisms", arr}}
                       .dump(2) +
                   "\n";
        }
        detail::emit(text, cfg.out_path, out);
        return kExitOk;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
}

inline int cmd_refine(const RunConfig& cfg, const std::string& case_name,
                      std::ostream& out, std::ostream& err) {
    try {
        TowerPtr tower = load_tower_file(cfg.tower_path, cfg.depth_override);
        RefineCase which = RefineCase::Case1;
        if (case_name == "1") which = RefineCase::Case1;
        else if (case_name == "2") which = RefineCase::Case2;
        else if (case_name == "3") which = RefineCase::Case3;
        else if (case_name == "4a") which = RefineCase::Case4a;
        else if (case_name == "4b") which = RefineCase::Case4b;
        else if (case_name == "5") which = RefineCase::Case5;
        else throw SpecError("refine: unknown case \"" + case_name + "\"");
        Rng rng(cfg.seed);
        RefineInstance inst = stratified_refine_instance(rng, tower, which);
        RefinementCertificate cert = stability_refine(inst.cover, inst.morphism);
        std::string why;
        const bool ok = verify_certificate(cert, &why);
        std::string text;
        if (cfg.format == "text") {
            std::ostringstream s;
            s << "case " << refine_case_name(cert.label) << ": cover of size "
              << cert.input.members.size() << " refined to " << cert.output.members.size()
              << " member(s); certificate " << (ok ? "verified" : ("rejected: " + why))
              << "\n";
            text = s.str();
        } else {
            nlohmann::json j = to_json(cert);
            j["verified"] = ok;
            j["config"] = detail::config_echo(cfg);
            text = j.dump(2) + "\n";
        }
        detail::emit(text, cfg.out_path, out);
        return ok ? kExitOk : kExitCheckFailure;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace gsite
