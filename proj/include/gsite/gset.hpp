#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsite/error.hpp"
#include "gsite/tower.hpp"

namespace gsite {

/// A finite set with a left action of the truncated group that factors
/// through tower level `level`. The action table has one permutation row per
/// element of L_level; the homomorphism law is verified on construction by
/// full enumeration. The empty G-set (size 0) is a first-class object.
class DiscreteGSet {
public:
    DiscreteGSet(TowerPtr tower, int size, int level,
                 std::vector<std::vector<int>> action)
        : tower_(std::move(tower)), size_(size), level_(level), action_(std::move(action)) {
        if (size_ < 0) throw SpecError("G-set: negative size");
        if (level_ < 1 || level_ > tower_->depth())
            throw SpecError("G-set: level " + std::to_string(level_) + " out of range 1.." +
                            std::to_string(tower_->depth()));
        const FiniteGroup& g = tower_->level(level_);
        if (static_cast<int>(action_.size()) != g.order())
            throw SpecError("G-set: action table has " + std::to_string(action_.size()) +
                            " rows, level order is " + std::to_string(g.order()));
        for (int a = 0; a < g.order(); ++a) {
            if (static_cast<int>(action_[a].size()) != size_)
                throw SpecError("G-set: action row " + std::to_string(a) +
                                " has wrong length");
            std::vector<char> hit(size_, 0);
            for (int x = 0; x < size_; ++x) {
                int y = action_[a][x];
                if (y < 0 || y >= size_ || hit[y])
                    throw SpecError("G-set: action row " + std::to_string(a) +
                                    " is not a permutation (element " + std::to_string(x) +
                                    ")");
                hit[y] = 1;
            }
        }
        for (int x = 0; x < size_; ++x)
            if (action_[g.identity()][x] != x)
                throw SpecError("G-set: identity row moves element " + std::to_string(x));
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                for (int x = 0; x < size_; ++x)
                    if (action_[g.mul(a, b)][x] != action_[a][action_[b][x]])
                        throw SpecError(
                            "G-set: action is not a homomorphism at pair (" +
                            std::to_string(a) + "," + std::to_string(b) + ")");
    }

    static DiscreteGSet trivial(TowerPtr tower, int size, int level = 1) {
        std::vector<int> id(size);
        for (int i = 0; i < size; ++i) id[i] = i;
        std::vector<std::vector<int>> rows(tower->level(level).order(), id);
        return DiscreteGSet(std::move(tower), size, level, std::move(rows));
    }

    static DiscreteGSet empty(TowerPtr tower, int level = 1) {
        return trivial(std::move(tower), 0, level);
    }

    static DiscreteGSet point(TowerPtr tower, int level = 1) {
        return trivial(std::move(tower), 1, level);
    }

    const TowerPtr& tower() const { return tower_; }
    int size() const { return size_; }
    int level() const { return level_; }
    bool is_empty() const { return size_ == 0; }
    const std::vector<std::vector<int>>& action() const { return action_; }

    /// Apply an element of L_level.
    int act_at_level(int group_elem, int x) const { return action_[group_elem][x]; }

    /// Apply an element given at any level >= this set's level.
    int act_from(int elem_level, int elem, int x) const {
        return action_[tower_->project(elem, elem_level, level_)][x];
    }

    bool is_trivial_action() const {
        for (const auto& row : action_)
            for (int x = 0; x < size_; ++x)
                if (row[x] != x) return false;
        return true;
    }

    bool operator==(const DiscreteGSet& o) const {
        return tower_ == o.tower_ && size_ == o.size_ && level_ == o.level_ &&
               action_ == o.action_;
    }
    bool operator!=(const DiscreteGSet& o) const { return !(*this == o); }

private:
    TowerPtr tower_;
    int size_;
    int level_;
    std::vector<std::vector<int>> action_;
};

inline int act(const GroupElement& gamma, int x, const DiscreteGSet& X) {
    if (gamma.tower() != X.tower())
        throw CompatibilityError("act: element and G-set belong to different towers");
    if (x < 0 || x >= X.size()) throw SpecError("act: element index out of range");
    return X.act_at_level(gamma.at(X.level()), x);
}

/// Same underlying set viewed through a higher tower level.
inline DiscreteGSet lift_gset(const DiscreteGSet& X, int level) {
    if (level < X.level())
        throw CompatibilityError("lift_gset: target level below the set's level");
    if (level == X.level()) return X;
    const FiniteGroup& g = X.tower()->level(level);
    std::vector<std::vector<int>> rows(g.order());
    for (int a = 0; a < g.order(); ++a) {
        rows[a].resize(X.size());
        for (int x = 0; x < X.size(); ++x) rows[a][x] = X.act_from(level, a, x);
    }
    return DiscreteGSet(X.tower(), X.size(), level, std::move(rows));
}

/// Relabel the underlying set along a permutation (conjugated action):
/// new[a][perm[x]] = perm[old[a][x]].
inline DiscreteGSet relabel_gset(const DiscreteGSet& X, const std::vector<int>& perm) {
    std::vector<std::vector<int>> rows(X.action().size(), std::vector<int>(X.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (int x = 0; x < X.size(); ++x) rows[a][perm[x]] = perm[X.action()[a][x]];
    return DiscreteGSet(X.tower(), X.size(), X.level(), std::move(rows));
}

/// A G-equivariant map between finite discrete G-sets. Equivariance is
/// verified on construction at the join level of the two actions.
class EquivariantMap {
public:
    EquivariantMap(DiscreteGSet domain, DiscreteGSet codomain, std::vector<int> table)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
        if (domain_.tower() != codomain_.tower())
            throw CompatibilityError("equivariant map: domain and codomain towers differ");
        if (static_cast<int>(table_.size()) != domain_.size())
            throw SpecError("equivariant map: table length does not match domain size");
        for (int x = 0; x < domain_.size(); ++x)
            if (table_[x] < 0 || table_[x] >= codomain_.size())
                throw SpecError("equivariant map: image of element " + std::to_string(x) +
                                " out of range");
        const int j = std::max(domain_.level(), codomain_.level());
        const FiniteGroup& g = domain_.tower()->level(j);
        for (int a = 0; a < g.order(); ++a)
            for (int x = 0; x < domain_.size(); ++x)
                if (table_[domain_.act_from(j, a, x)] != codomain_.act_from(j, a, table_[x]))
                    throw SpecError("equivariant map: not equivariant at (gamma=" +
                                    std::to_string(a) + ", x=" + std::to_string(x) + ")");
    }

    static EquivariantMap identity(const DiscreteGSet& X) {
        std::vector<int> id(X.size());
        for (int i = 0; i < X.size(); ++i) id[i] = i;
        return EquivariantMap(X, X, std::move(id));
    }

    const DiscreteGSet& domain() const { return domain_; }
    const DiscreteGSet& codomain() const { return codomain_; }
    const std::vector<int>& table() const { return table_; }
    int operator()(int x) const { return table_[x]; }

    bool is_bijective() const {
        if (domain_.size() != codomain_.size()) return false;
        std::vector<char> hit(codomain_.size(), 0);
        for (int v : table_) {
            if (hit[v]) return false;
            hit[v] = 1;
        }
        return true;
    }

    std::vector<int> image() const {
        std::vector<int> im = table_;
        std::sort(im.begin(), im.end());
        im.erase(std::unique(im.begin(), im.end()), im.end());
        return im;
    }

    bool operator==(const EquivariantMap& o) const {
        return domain_ == o.domain_ && codomain_ == o.codomain_ && table_ == o.table_;
    }
    bool operator!=(const EquivariantMap& o) const { return !(*this == o); }

private:
    DiscreteGSet domain_;
    DiscreteGSet codomain_;
    std::vector<int> table_;
};

inline EquivariantMap compose_maps(const EquivariantMap& f, const EquivariantMap& g) {
    if (g.codomain() != f.domain())
        throw CompatibilityError("compose: codomain of the inner map is not the domain of the outer map");
    std::vector<int> table(g.domain().size());
    for (int x = 0; x < g.domain().size(); ++x) table[x] = f(g(x));
    return EquivariantMap(g.domain(), f.codomain(), std::move(table));
}

/// Left-translation action on the left cosets of U inside its stored level.
/// Cosets are ordered by their least element; the coset of the identity has
/// stabilizer exactly U.
inline DiscreteGSet coset_gset(const OpenSubgroup& U) {
    const FiniteGroup& g = U.tower()->level(U.level());
    std::vector<int> coset_of(g.order(), -1);
    std::vector<int> reps;
    for (int a = 0; a < g.order(); ++a) {
        if (coset_of[a] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int h : U.elements()) coset_of[g.mul(a, h)] = id;
    }
    const int n = static_cast<int>(reps.size());
    std::vector<std::vector<int>> rows(g.order(), std::vector<int>(n));
    for (int a = 0; a < g.order(); ++a)
        for (int c = 0; c < n; ++c) rows[a][c] = coset_of[g.mul(a, reps[c])];
    return DiscreteGSet(U.tower(), n, U.level(), std::move(rows));
}

/// Index of the coset containing the identity in coset_gset(U)'s ordering.
inline int identity_coset_index(const OpenSubgroup& U) {
    const FiniteGroup& g = U.tower()->level(U.level());
    int least = g.order();
    for (int h : U.elements()) least = std::min(least, h);
    // cosets are numbered by first appearance of their least element
    std::vector<int> coset_of(g.order(), -1);
    int id = 0;
    for (int a = 0; a < g.order(); ++a) {
        if (coset_of[a] >= 0) continue;
        for (int h : U.elements()) coset_of[g.mul(a, h)] = id;
        ++id;
    }
    return coset_of[g.identity()];
}

struct DisjointUnion {
    DiscreteGSet object;
    std::vector<int> offsets;  // start index of each component

    DisjointUnion(DiscreteGSet obj, std::vector<int> offs)
        : object(std::move(obj)), offsets(std::move(offs)) {}
};

/// Disjoint union of G-sets over one tower; the result acts at the join of
/// the component levels, components keep their relative element order.
inline DisjointUnion disjoint_union(const std::vector<DiscreteGSet>& parts) {
    if (parts.empty()) throw SpecError("disjoint union: at least one component required");
    TowerPtr tower = parts[0].tower();
    int level = 1, total = 0;
    for (const auto& p : parts) {
        if (p.tower() != tower)
            throw CompatibilityError("disjoint union: components over different towers");
        level = std::max(level, p.level());
        total += p.size();
    }
    const FiniteGroup& g = tower->level(level);
    std::vector<std::vector<int>> rows(g.order(), std::vector<int>(total));
    std::vector<int> offsets;
    int off = 0;
    for (const auto& p : parts) {
        offsets.push_back(off);
        for (int a = 0; a < g.order(); ++a)
            for (int x = 0; x < p.size(); ++x)
                rows[a][off + x] = off + p.act_from(level, a, x);
        off += p.size();
    }
    return DisjointUnion(DiscreteGSet(tower, total, level, std::move(rows)),
                         std::move(offsets));
}

inline EquivariantMap component_injection(const DisjointUnion& u,
                                          const DiscreteGSet& component, int index) {
    std::vector<int> table(component.size());
    for (int x = 0; x < component.size(); ++x) table[x] = u.offsets[index] + x;
    return EquivariantMap(component, u.object, std::move(table));
}

struct OrbitDecomposition {
    struct Orbit {
        int representative;
        OpenSubgroup stabilizer;
        std::vector<int> elements;  // sorted
    };
    std::vector<Orbit> orbits;
    /// The disjoint union of the coset sets of the stabilizers, together
    /// with the bijection coset of gamma |-> gamma . representative.
    DiscreteGSet coset_union;
    EquivariantMap witness;

    OrbitDecomposition(std::vector<Orbit> orbs, DiscreteGSet cu, EquivariantMap w)
        : orbits(std::move(orbs)), coset_union(std::move(cu)), witness(std::move(w)) {}
};

/// Orbits with representatives in ascending index order; each stabilizer is
/// the exact point stabilizer in normal form. The witness identifies X with
/// the disjoint union of the coset sets and is checked to be a bijective
/// equivariant map.
inline OrbitDecomposition orbits_and_stabilizers(const DiscreteGSet& X) {
    const TowerPtr& tower = X.tower();
    const FiniteGroup& g = tower->level(X.level());
    std::vector<int> orbit_of(X.size(), -1);
    std::vector<OrbitDecomposition::Orbit> orbits;
    for (int x = 0; x < X.size(); ++x) {
        if (orbit_of[x] >= 0) continue;
        std::vector<int> elems;
        std::vector<int> stab;
        for (int a = 0; a < g.order(); ++a) {
            int y = X.act_at_level(a, x);
            if (orbit_of[y] < 0) {
                orbit_of[y] = static_cast<int>(orbits.size());
                elems.push_back(y);
            }
            if (y == x) stab.push_back(a);
        }
        std::sort(elems.begin(), elems.end());
        orbits.push_back({x, OpenSubgroup::at_level(tower, X.level(), stab),
                          std::move(elems)});
    }

    std::vector<DiscreteGSet> parts;
    for (const auto& o : orbits) parts.push_back(coset_gset(o.stabilizer));
    std::vector<int> table;
    if (parts.empty()) {
        DiscreteGSet cu = DiscreteGSet::empty(tower);
        EquivariantMap w(cu, X, {});
        return OrbitDecomposition({}, std::move(cu), std::move(w));
    }
    DisjointUnion u = disjoint_union(parts);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const OpenSubgroup& U = orbits[i].stabilizer;
        const FiniteGroup& gl = tower->level(U.level());
        // coset representatives in coset_gset order (least element first seen)
        std::vector<int> coset_of(gl.order(), -1);
        std::vector<int> reps;
        for (int a = 0; a < gl.order(); ++a) {
            if (coset_of[a] >= 0) continue;
            reps.push_back(a);
            for (int h : U.elements()) coset_of[gl.mul(a, h)] = 0;
        }
        for (int rep : reps) {
            int lifted = tower->lift_least(rep, U.level(), X.level());
            table.push_back(X.act_at_level(lifted, orbits[i].representative));
        }
    }
    EquivariantMap w(u.object, X, std::move(table));
    if (!w.is_bijective())
        throw SpecError("orbit decomposition: coset identification is not bijective");
    return OrbitDecomposition(std::move(orbits), std::move(u.object), std::move(w));
}

/// Elements fixed by every element of U (U applied through the join level).
inline std::vector<int> fixed_points(const DiscreteGSet& X, const OpenSubgroup& U) {
    if (X.tower() != U.tower())
        throw CompatibilityError("fixed_points: G-set and subgroup over different towers");
    const int j = std::max(X.level(), U.level());
    std::vector<int> sub = U.pullback_to(j);
    std::vector<int> out;
    for (int x = 0; x < X.size(); ++x) {
        bool fixed = true;
        for (int a : sub)
            if (X.act_from(j, a, x) != x) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(x);
    }
    return out;
}

/// Complete, duplicate-free enumeration of the equivariant maps X -> Y,
/// built orbit by orbit: the representative of an orbit with stabilizer S
/// may go to any target whose stabilizer contains S.
inline std::vector<EquivariantMap> enumerate_equivariant_maps(const DiscreteGSet& X,
                                                              const DiscreteGSet& Y) {
    if (X.tower() != Y.tower())
        throw CompatibilityError("hom enumeration: G-sets over different towers");
    const TowerPtr& tower = X.tower();
    const int j = std::max(X.level(), Y.level());
    const FiniteGroup& g = tower->level(j);

    OrbitDecomposition dec = orbits_and_stabilizers(X);
    const int k = static_cast<int>(dec.orbits.size());

    // per-orbit: stabilizer at the join level, valid targets, transversal
    std::vector<std::vector<int>> targets(k);
    std::vector<std::vector<int>> transversal(k);  // per domain element: moving elem
    for (int i = 0; i < k; ++i) {
        int rep = dec.orbits[i].representative;
        std::vector<int> stab;
        for (int a = 0; a < g.order(); ++a)
            if (X.act_from(j, a, rep) == rep) stab.push_back(a);
        for (int y = 0; y < Y.size(); ++y) {
            bool ok = true;
            for (int a : stab)
                if (Y.act_from(j, a, y) != y) {
                    ok = false;
                    break;
                }
            if (ok) targets[i].push_back(y);
        }
        transversal[i].assign(X.size(), -1);
        for (int a = 0; a < g.order(); ++a) {
            int e = X.act_from(j, a, rep);
            if (transversal[i][e] < 0) transversal[i][e] = a;
        }
    }

    std::vector<EquivariantMap> out;
    for (int i = 0; i < k; ++i)
        if (targets[i].empty()) return out;  // some orbit has nowhere to go
    std::vector<std::size_t> pick(k, 0);
    while (true) {
        std::vector<int> table(X.size());
        for (int i = 0; i < k; ++i) {
            int y = targets[i][pick[i]];
            for (int e : dec.orbits[i].elements)
                table[e] = Y.act_from(j, transversal[i][e], y);
        }
        out.emplace_back(X, Y, std::move(table));
        int pos = k - 1;
        while (pos >= 0) {
            if (++pick[pos] < targets[pos].size()) break;
            pick[pos] = 0;
            --pos;
        }
        if (pos < 0) break;  // for an empty domain this still emits the one vacuous map
    }
    return out;
}

struct Pullback {
    DiscreteGSet object;
    EquivariantMap left;   // to the domain of f
    EquivariantMap right;  // to the domain of g
    std::vector<std::pair<int, int>> pairs;

    Pullback(DiscreteGSet obj, EquivariantMap l, EquivariantMap r,
             std::vector<std::pair<int, int>> p)
        : object(std::move(obj)), left(std::move(l)), right(std::move(r)),
          pairs(std::move(p)) {}
};

/// Fiber product {(x,y) : f(x) = g(y)} with the diagonal action, in
/// lexicographic pair order, with its two projections.
inline Pullback pullback_finite(const EquivariantMap& f, const EquivariantMap& g) {
    if (f.codomain() != g.codomain())
        throw CompatibilityError("pullback: the two maps have different codomains");
    const DiscreteGSet& X = f.domain();
    const DiscreteGSet& Y = g.domain();
    const TowerPtr& tower = X.tower();
    const int j = std::max(X.level(), Y.level());
    const FiniteGroup& gr = tower->level(j);

    std::vector<std::pair<int, int>> pairs;
    std::map<std::pair<int, int>, int> index;
    for (int x = 0; x < X.size(); ++x)
        for (int y = 0; y < Y.size(); ++y)
            if (f(x) == g(y)) {
                index[{x, y}] = static_cast<int>(pairs.size());
                pairs.emplace_back(x, y);
            }
    const int n = static_cast<int>(pairs.size());
    std::vector<std::vector<int>> rows(gr.order(), std::vector<int>(n));
    for (int a = 0; a < gr.order(); ++a)
        for (int p = 0; p < n; ++p)
            rows[a][p] = index.at({X.act_from(j, a, pairs[p].first),
                                   Y.act_from(j, a, pairs[p].second)});
    DiscreteGSet P(tower, n, j, std::move(rows));
    std::vector<int> lt(n), rt(n);
    for (int p = 0; p < n; ++p) {
        lt[p] = pairs[p].first;
        rt[p] = pairs[p].second;
    }
    EquivariantMap left(P, X, std::move(lt));
    EquivariantMap right(P, Y, std::move(rt));
    return Pullback(std::move(P), std::move(left), std::move(right), std::move(pairs));
}

}  // namespace gsite
