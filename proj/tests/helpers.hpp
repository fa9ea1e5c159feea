#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsite/gsite.hpp"

namespace th {

using namespace gsite;

inline TowerPtr cyclic2_depth3() {
    return build_tower(nlohmann::json{{"kind", "cyclic_p"}, {"p", 2}, {"depth", 3}});
}

inline TowerPtr cyclic3_depth2() {
    return build_tower(nlohmann::json{{"kind", "cyclic_p"}, {"p", 3}, {"depth", 2}});
}

inline nlohmann::json s3_mul_table_json() {
    FiniteGroup s3 = FiniteGroup::symmetric(3);
    return nlohmann::json(s3.mul_table());
}

/// Product of the cyclic 2-tower (depth 2) with a constant S3 tower:
/// level orders 12 and 24, nonabelian.
inline TowerPtr s3xc2_depth2() {
    nlohmann::json s3 = s3_mul_table_json();
    nlohmann::json constant_s3{{"kind", "explicit"},
                               {"levels", nlohmann::json::array({s3, s3})},
                               {"transitions", nlohmann::json::array({{0, 1, 2, 3, 4, 5}})}};
    nlohmann::json cyc{{"kind", "cyclic_p"}, {"p", 2}, {"depth", 2}};
    return build_tower(
        nlohmann::json{{"kind", "product"}, {"factors", {cyc, constant_s3}}});
}

inline std::vector<TowerPtr> acceptance_towers() {
    return {cyclic2_depth3(), cyclic3_depth2(), s3xc2_depth2()};
}

/// The coset set of the index-two subgroup at level 1 of the cyclic 2-tower:
/// two elements swapped by the nonidentity class.
inline DiscreteGSet swap_gset(const TowerPtr& t) {
    return DiscreteGSet(t, 2, 1, {{0, 1}, {1, 0}});
}

/// Three points over level 1 of the cyclic 2-tower: {0,1} swapped, 2 fixed.
inline DiscreteGSet three_point_mixed(const TowerPtr& t) {
    return DiscreteGSet(t, 3, 1, {{0, 1, 2}, {1, 0, 2}});
}

// ---- independent oracles (test-only) ----

/// All set maps X -> Y that commute with the action, checked directly
/// against the two action tables at the join level. Independent of the
/// library's orbit-based enumeration.
inline std::vector<std::vector<int>> oracle_all_equivariant_tables(const DiscreteGSet& x,
                                                                   const DiscreteGSet& y) {
    std::vector<std::vector<int>> out;
    const int j = std::max(x.level(), y.level());
    const FiniteGroup& g = x.tower()->level(j);
    std::vector<int> table(x.size(), 0);
    if (x.size() == 0) {
        out.push_back({});
        return out;
    }
    if (y.size() == 0) return out;
    while (true) {
        bool ok = true;
        for (int a = 0; a < g.order() && ok; ++a)
            for (int e = 0; e < x.size() && ok; ++e)
                if (table[x.act_from(j, a, e)] != y.act_from(j, a, table[e])) ok = false;
        if (ok) out.push_back(table);
        int pos = x.size() - 1;
        while (pos >= 0) {
            if (++table[pos] < y.size()) break;
            table[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

/// Orbit partition by closure, independent of the library's decomposition.
inline std::vector<std::vector<int>> oracle_orbits(const DiscreteGSet& x) {
    std::vector<std::vector<int>> orbits;
    std::vector<char> seen(x.size(), 0);
    const FiniteGroup& g = x.tower()->level(x.level());
    for (int e = 0; e < x.size(); ++e) {
        if (seen[e]) continue;
        std::set<int> orbit{e};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int o : std::vector<int>(orbit.begin(), orbit.end()))
                for (int a = 0; a < g.order(); ++a)
                    if (orbit.insert(x.act_at_level(a, o)).second) grew = true;
        }
        for (int o : orbit) seen[o] = 1;
        orbits.emplace_back(orbit.begin(), orbit.end());
    }
    return orbits;
}

/// Number of divisors: the subgroup count of a cyclic group, used as an
/// independent route for the growth checks.
inline long oracle_divisor_count(long n) {
    long c = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

}  // namespace th
