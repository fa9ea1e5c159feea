#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gsite/error.hpp"
#include "gsite/finite_group.hpp"

namespace gsite {

/// A depth-truncated tower of finite groups L_1, ..., L_d with surjective
/// transition homomorphisms p_i : L_{i+1} -> L_i. It stands in for the
/// inverse limit: every action and morphism in play must factor through
/// level d, which keeps all enumerations finite and exact.
class ProfiniteTower {
public:
    ProfiniteTower(std::vector<FiniteGroup> levels,
                   std::vector<std::vector<int>> transitions) {
        if (levels.empty()) throw SpecError("tower: depth must be at least 1");
        if (transitions.size() + 1 != levels.size())
            throw SpecError("tower: expected " + std::to_string(levels.size() - 1) +
                            " transition maps, got " + std::to_string(transitions.size()));
        for (std::size_t i = 0; i < transitions.size(); ++i) {
            const FiniteGroup& upper = levels[i + 1];
            const FiniteGroup& lower = levels[i];
            const auto& p = transitions[i];
            const std::string where =
                "transition " + std::to_string(i + 2) + "->" + std::to_string(i + 1);
            if (static_cast<int>(p.size()) != upper.order())
                throw SpecError(where + ": table length " + std::to_string(p.size()) +
                                " does not match level order " + std::to_string(upper.order()));
            for (int a = 0; a < upper.order(); ++a)
                if (p[a] < 0 || p[a] >= lower.order())
                    throw SpecError(where + ": image of element " + std::to_string(a) +
                                    " out of range");
            for (int a = 0; a < upper.order(); ++a)
                for (int b = 0; b < upper.order(); ++b)
                    if (p[upper.mul(a, b)] != lower.mul(p[a], p[b]))
                        throw SpecError(where + ": not a homomorphism at pair (" +
                                        std::to_string(a) + "," + std::to_string(b) + ")");
            std::vector<char> hit(lower.order(), 0);
            for (int a = 0; a < upper.order(); ++a) hit[p[a]] = 1;
            for (int c = 0; c < lower.order(); ++c)
                if (!hit[c])
                    throw SpecError(where + ": not surjective, element " + std::to_string(c) +
                                    " of the lower level has no preimage");
            if (upper.order() < lower.order())
                throw SpecError("tower: level " + std::to_string(i + 2) +
                                " is smaller than level " + std::to_string(i + 1));
        }
        levels_ = std::move(levels);
        transitions_ = std::move(transitions);
    }

    int depth() const { return static_cast<int>(levels_.size()); }

    const FiniteGroup& level(int i) const {
        check_level(i);
        return levels_[i - 1];
    }

    /// Project an element of L_from down to L_to (to <= from).
    int project(int elem, int from, int to) const {
        check_level(from);
        check_level(to);
        if (to > from) throw CompatibilityError("project: target level above source level");
        int x = elem;
        for (int i = from; i > to; --i) x = transitions_[i - 2][x];
        return x;
    }

    /// Lift an element of L_from to L_to (to >= from) choosing the least
    /// preimage at each step. Deterministic; used wherever a concrete group
    /// element must represent a coset of the transition kernel.
    int lift_least(int elem, int from, int to) const {
        check_level(from);
        check_level(to);
        if (to < from) throw CompatibilityError("lift: target level below source level");
        int x = elem;
        for (int i = from; i < to; ++i) {
            const auto& p = transitions_[i - 1];
            int found = -1;
            for (int a = 0; a < static_cast<int>(p.size()); ++a)
                if (p[a] == x) {
                    found = a;
                    break;
                }
            x = found;  // surjectivity guarantees found >= 0
        }
        return x;
    }

    bool strictly_increasing_orders() const {
        for (int i = 1; i < depth(); ++i)
            if (levels_[i].order() <= levels_[i - 1].order()) return false;
        return true;
    }

private:
    void check_level(int i) const {
        if (i < 1 || i > depth())
            throw SpecError("level " + std::to_string(i) + " out of range 1.." +
                            std::to_string(depth()));
    }

    std::vector<FiniteGroup> levels_;
    std::vector<std::vector<int>> transitions_;
};

using TowerPtr = std::shared_ptr<const ProfiniteTower>;

/// An element of the truncated group: a compatible coordinate tuple
/// (g_1, ..., g_d) with p_i(g_{i+1}) = g_i.
class GroupElement {
public:
    GroupElement(TowerPtr tower, std::vector<int> coords)
        : tower_(std::move(tower)), coords_(std::move(coords)) {
        if (static_cast<int>(coords_.size()) != tower_->depth())
            throw SpecError("group element: coordinate tuple length " +
                            std::to_string(coords_.size()) + " does not match depth " +
                            std::to_string(tower_->depth()));
        for (int i = 1; i <= tower_->depth(); ++i)
            if (coords_[i - 1] < 0 || coords_[i - 1] >= tower_->level(i).order())
                throw SpecError("group element: coordinate at level " + std::to_string(i) +
                                " out of range");
        for (int i = 1; i < tower_->depth(); ++i)
            if (tower_->project(coords_[i], i + 1, i) != coords_[i - 1])
                throw SpecError("group element: incompatible coordinates at levels " +
                                std::to_string(i) + "," + std::to_string(i + 1));
    }

    static GroupElement identity(TowerPtr tower) {
        std::vector<int> c(tower->depth());
        for (int i = 1; i <= tower->depth(); ++i) c[i - 1] = tower->level(i).identity();
        return GroupElement(std::move(tower), std::move(c));
    }

    /// Element determined by its top-level coordinate.
    static GroupElement from_top(TowerPtr tower, int top) {
        const int d = tower->depth();
        std::vector<int> c(d);
        c[d - 1] = top;
        for (int i = d; i > 1; --i) c[i - 2] = tower->project(c[i - 1], i, i - 1);
        return GroupElement(std::move(tower), std::move(c));
    }

    /// Least compatible tuple through a given coordinate at a given level.
    static GroupElement lift(TowerPtr tower, int level, int elem) {
        int top = tower->lift_least(elem, level, tower->depth());
        return from_top(std::move(tower), top);
    }

    const TowerPtr& tower() const { return tower_; }

    int at(int level) const {
        if (level < 1 || level > tower_->depth())
            throw SpecError("project: level " + std::to_string(level) + " out of range");
        return coords_[level - 1];
    }

    GroupElement mul(const GroupElement& o) const {
        require_same_tower(o);
        std::vector<int> c(coords_.size());
        for (int i = 1; i <= tower_->depth(); ++i)
            c[i - 1] = tower_->level(i).mul(coords_[i - 1], o.coords_[i - 1]);
        return GroupElement(tower_, std::move(c));
    }

    GroupElement inverse() const {
        std::vector<int> c(coords_.size());
        for (int i = 1; i <= tower_->depth(); ++i)
            c[i - 1] = tower_->level(i).inverse(coords_[i - 1]);
        return GroupElement(tower_, std::move(c));
    }

    bool is_identity() const {
        return coords_.back() == tower_->level(tower_->depth()).identity();
    }

    const std::vector<int>& coords() const { return coords_; }

    bool operator==(const GroupElement& o) const {
        return tower_ == o.tower_ && coords_ == o.coords_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }

private:
    void require_same_tower(const GroupElement& o) const {
        if (tower_ != o.tower_)
            throw CompatibilityError("group elements belong to different towers");
    }

    TowerPtr tower_;
    std::vector<int> coords_;
};

/// An open subgroup of the truncated group, stored in normal form: at the
/// lowest level where it is the full preimage of a subgroup. Two open
/// subgroups are equal iff their pullbacks to the top level coincide, which
/// for normal forms is plain field equality.
class OpenSubgroup {
public:
    static OpenSubgroup at_level(TowerPtr tower, int level, std::vector<int> elems) {
        if (level < 1 || level > tower->depth())
            throw SpecError("open subgroup: level " + std::to_string(level) + " out of range");
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        if (!tower->level(level).is_subgroup(elems))
            throw SpecError("open subgroup: element set at level " + std::to_string(level) +
                            " is not closed under multiplication and inversion");
        // normal form: walk down and keep the lowest level whose preimage
        // reproduces the set exactly
        for (int target = 1; target < level; ++target) {
            std::vector<char> img(tower->level(target).order(), 0);
            for (int a : elems) img[tower->project(a, level, target)] = 1;
            std::vector<int> back;
            for (int a = 0; a < tower->level(level).order(); ++a)
                if (img[tower->project(a, level, target)]) back.push_back(a);
            if (back == elems) {
                std::vector<int> low;
                for (int c = 0; c < tower->level(target).order(); ++c)
                    if (img[c]) low.push_back(c);
                return OpenSubgroup(std::move(tower), target, std::move(low));
            }
        }
        return OpenSubgroup(std::move(tower), level, std::move(elems));
    }

    static OpenSubgroup full(TowerPtr tower) {
        std::vector<int> all(tower->level(1).order());
        std::iota(all.begin(), all.end(), 0);
        return at_level(std::move(tower), 1, std::move(all));
    }

    const TowerPtr& tower() const { return tower_; }
    int level() const { return level_; }
    const std::vector<int>& elements() const { return elems_; }

    /// Preimage of the stored set at a level >= level().
    std::vector<int> pullback_to(int target) const {
        if (target < level_)
            throw CompatibilityError("open subgroup pullback: target level below stored level");
        std::vector<char> in(tower_->level(level_).order(), 0);
        for (int a : elems_) in[a] = 1;
        std::vector<int> out;
        for (int a = 0; a < tower_->level(target).order(); ++a)
            if (in[tower_->project(a, target, level_)]) out.push_back(a);
        return out;
    }

    bool contains(int level, int elem) const {
        if (level < level_) return false;  // caller gave an element too low to test
        int down = tower_->project(elem, level, level_);
        return std::binary_search(elems_.begin(), elems_.end(), down);
    }

    long index() const {
        return static_cast<long>(tower_->level(level_).order()) /
               static_cast<long>(elems_.size());
    }

    bool is_full() const {
        return static_cast<int>(elems_.size()) == tower_->level(level_).order();
    }

    bool operator==(const OpenSubgroup& o) const {
        return tower_ == o.tower_ && level_ == o.level_ && elems_ == o.elems_;
    }
    bool operator!=(const OpenSubgroup& o) const { return !(*this == o); }

private:
    OpenSubgroup(TowerPtr tower, int level, std::vector<int> elems)
        : tower_(std::move(tower)), level_(level), elems_(std::move(elems)) {}

    TowerPtr tower_;
    int level_;
    std::vector<int> elems_;
};

/// All subgroups of the named level, in normal form, ordered by the sorted
/// element lists at that level.
inline std::vector<OpenSubgroup> enumerate_open_subgroups(const TowerPtr& tower, int level) {
    std::vector<OpenSubgroup> out;
    for (auto& h : tower->level(level).subgroups())
        out.push_back(OpenSubgroup::at_level(tower, level, h));
    return out;
}

/// Number of subgroups of each level, bottom to top. For towers with
/// strictly increasing orders the counts never decrease: distinct subgroups
/// pull back to distinct subgroups one level up.
inline std::vector<long> subgroup_count_growth(const TowerPtr& tower) {
    std::vector<long> counts;
    for (int i = 1; i <= tower->depth(); ++i)
        counts.push_back(static_cast<long>(tower->level(i).subgroups().size()));
    return counts;
}

}  // namespace gsite
