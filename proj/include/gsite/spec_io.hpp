#pragma once

#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsite/gset.hpp"
#include "gsite/tower.hpp"

namespace gsite {

namespace detail {

inline std::vector<std::vector<int>> int_matrix(const nlohmann::json& j,
                                                const std::string& where) {
    if (!j.is_array()) throw SpecError(where + ": expected an array of integer rows");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) {
        if (!row.is_array()) throw SpecError(where + ": expected integer rows");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw SpecError(where + ": non-integer entry");
            r.push_back(v.get<int>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<int> int_row(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw SpecError(where + ": expected an integer array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw SpecError(where + ": non-integer entry");
        out.push_back(v.get<int>());
    }
    return out;
}

struct TowerData {
    std::vector<FiniteGroup> levels;
    std::vector<std::vector<int>> transitions;
};

inline TowerData build_tower_data(const nlohmann::json& spec);

inline TowerData build_cyclic_data(long p, int depth) {
    if (p < 2) throw SpecError("tower spec: p must be at least 2");
    if (depth < 1) throw SpecError("tower spec: depth must be at least 1");
    TowerData d;
    long order = 1;
    for (int i = 1; i <= depth; ++i) {
        order *= p;
        if (order > 4096) throw SpecError("tower spec: cyclic level order too large");
        d.levels.push_back(FiniteGroup::cyclic(static_cast<int>(order)));
        if (i > 1) {
            std::vector<int> t(static_cast<std::size_t>(order));
            for (long a = 0; a < order; ++a)
                t[a] = static_cast<int>(a % (order / p));
            d.transitions.push_back(std::move(t));
        }
    }
    return d;
}

inline TowerData build_product_data(const nlohmann::json& factors) {
    if (!factors.is_array() || factors.size() < 2)
        throw SpecError("tower spec: product needs at least two factors");
    std::vector<TowerData> parts;
    for (const auto& f : factors) parts.push_back(build_tower_data(f));
    const std::size_t depth = parts[0].levels.size();
    for (const auto& p : parts)
        if (p.levels.size() != depth)
            throw SpecError("tower spec: product factors must share one depth");
    TowerData acc = std::move(parts[0]);
    for (std::size_t f = 1; f < parts.size(); ++f) {
        TowerData next;
        for (std::size_t i = 0; i < depth; ++i)
            next.levels.push_back(
                FiniteGroup::direct_product(acc.levels[i], parts[f].levels[i]));
        for (std::size_t i = 0; i + 1 < depth; ++i) {
            const int nb_hi = parts[f].levels[i + 1].order();
            const int nb_lo = parts[f].levels[i].order();
            std::vector<int> t(next.levels[i + 1].order());
            for (int a = 0; a < acc.levels[i + 1].order(); ++a)
                for (int b = 0; b < nb_hi; ++b)
                    t[a * nb_hi + b] =
                        acc.transitions[i][a] * nb_lo + parts[f].transitions[i][b];
            next.transitions.push_back(std::move(t));
        }
        acc = std::move(next);
    }
    return acc;
}

inline TowerData build_tower_data(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw SpecError("tower spec: missing \"kind\"");
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "cyclic_p") {
        if (!spec.contains("p") || !spec.contains("depth"))
            throw SpecError("tower spec: cyclic_p needs \"p\" and \"depth\"");
        return build_cyclic_data(spec["p"].get<long>(), spec["depth"].get<int>());
    }
    if (kind == "explicit") {
        if (!spec.contains("levels"))
            throw SpecError("tower spec: explicit kind needs \"levels\"");
        TowerData d;
        int idx = 0;
        for (const auto& lv : spec["levels"]) {
            ++idx;
            const std::string where = "tower level " + std::to_string(idx);
            d.levels.push_back(FiniteGroup::from_mul_table(int_matrix(lv, where), where));
        }
        if (d.levels.size() > 1) {
            if (!spec.contains("transitions"))
                throw SpecError("tower spec: explicit kind needs \"transitions\"");
            for (const auto& t : spec["transitions"])
                d.transitions.push_back(int_row(t, "tower transition"));
        }
        if (spec.contains("depth") &&
            spec["depth"].get<int>() != static_cast<int>(d.levels.size()))
            throw SpecError("tower spec: \"depth\" disagrees with the number of levels");
        return d;
    }
    if (kind == "product") {
        if (!spec.contains("factors"))
            throw SpecError("tower spec: product kind needs \"factors\"");
        return build_product_data(spec["factors"]);
    }
    throw SpecError("tower spec: unknown kind \"" + kind + "\"");
}

}  // namespace detail

/// Build a tower from a specification value. Supported kinds: cyclic_p
/// (fields p, depth), explicit (fields levels, transitions), product
/// (field factors). Construction is deterministic from the spec.
inline TowerPtr build_tower(const nlohmann::json& spec) {
    detail::TowerData d = detail::build_tower_data(spec);
    return std::make_shared<ProfiniteTower>(std::move(d.levels), std::move(d.transitions));
}

/// Truncate a tower spec to a shallower depth before building.
inline TowerPtr build_tower(const nlohmann::json& spec, int depth_override) {
    detail::TowerData d = detail::build_tower_data(spec);
    if (depth_override < 1 || depth_override > static_cast<int>(d.levels.size()))
        throw SpecError("depth override " + std::to_string(depth_override) +
                        " exceeds the spec depth " + std::to_string(d.levels.size()));
    d.levels.erase(d.levels.begin() + depth_override, d.levels.end());
    if (static_cast<int>(d.transitions.size()) > depth_override - 1)
        d.transitions.erase(d.transitions.begin() + (depth_override - 1),
                            d.transitions.end());
    return std::make_shared<ProfiniteTower>(std::move(d.levels), std::move(d.transitions));
}

inline TowerPtr load_tower_file(const std::string& path, int depth_override = -1) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open tower spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError("tower spec " + path + ": " + e.what());
    }
    return depth_override > 0 ? build_tower(j, depth_override) : build_tower(j);
}

/// Build a G-set from a specification value: fields size, level, and an
/// action given either as "table" (one permutation row per level element)
/// or as "generators" (images of named generating elements, completed by
/// multiplication).
inline DiscreteGSet make_gset(const TowerPtr& tower, const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("size") || !spec.contains("level") ||
        !spec.contains("action"))
        throw SpecError("G-set spec: fields size, level, action are required");
    const int size = spec["size"].get<int>();
    const int level = spec["level"].get<int>();
    if (level < 1 || level > tower->depth())
        throw SpecError("G-set spec: level out of range");
    const auto& action = spec["action"];
    if (action.contains("table"))
        return DiscreteGSet(tower, size, level,
                            detail::int_matrix(action["table"], "G-set action table"));
    if (!action.contains("generators"))
        throw SpecError("G-set spec: action needs \"table\" or \"generators\"");

    const FiniteGroup& g = tower->level(level);
    std::vector<std::vector<int>> rows(g.order());
    std::vector<char> known(g.order(), 0);
    std::vector<int> id(size);
    for (int i = 0; i < size; ++i) id[i] = i;
    rows[g.identity()] = id;
    known[g.identity()] = 1;
    std::vector<std::pair<int, std::vector<int>>> gens;
    for (const auto& item : action["generators"]) {
        if (!item.contains("element") || !item.contains("image"))
            throw SpecError("G-set spec: each generator needs \"element\" and \"image\"");
        int e = item["element"].get<int>();
        if (e < 0 || e >= g.order())
            throw SpecError("G-set spec: generator element out of range");
        gens.emplace_back(e, detail::int_row(item["image"], "G-set generator image"));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [e, img] : gens) {
            if (static_cast<int>(img.size()) != size)
                throw SpecError("G-set spec: generator image has wrong length");
            for (int a = 0; a < g.order(); ++a) {
                if (!known[a]) continue;
                int ea = g.mul(e, a);
                std::vector<int> row(size);
                for (int x = 0; x < size; ++x) row[x] = img[rows[a][x]];
                if (!known[ea]) {
                    rows[ea] = std::move(row);
                    known[ea] = 1;
                    grew = true;
                } else if (rows[ea] != row) {
                    throw SpecError(
                        "G-set spec: generator images are inconsistent at the pair (" +
                        std::to_string(e) + "," + std::to_string(a) + ")");
                }
            }
        }
    }
    for (int a = 0; a < g.order(); ++a)
        if (!known[a])
            throw SpecError("G-set spec: the generators do not generate the level group "
                            "(element " + std::to_string(a) + " unreached)");
    return DiscreteGSet(tower, size, level, std::move(rows));
}

inline DiscreteGSet load_gset_file(const TowerPtr& tower, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open G-set spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SpecError("G-set spec " + path + ": " + e.what());
    }
    return make_gset(tower, j);
}

}  // namespace gsite
