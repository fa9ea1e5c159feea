#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "gsite/error.hpp"

namespace gsite {

/// A finite group given by its full multiplication table. Elements are the
/// indices 0..order-1; the identity and inverse table are derived from the
/// table and the group axioms are verified by exhaustive enumeration.
class FiniteGroup {
public:
    static FiniteGroup from_mul_table(std::vector<std::vector<int>> table,
                                      const std::string& where = "group") {
        FiniteGroup g;
        g.order_ = static_cast<int>(table.size());
        if (g.order_ == 0) throw SpecError(where + ": empty multiplication table");
        for (int a = 0; a < g.order_; ++a) {
            if (static_cast<int>(table[a].size()) != g.order_)
                throw SpecError(where + ": row " + std::to_string(a) + " has wrong length");
            for (int b = 0; b < g.order_; ++b)
                if (table[a][b] < 0 || table[a][b] >= g.order_)
                    throw SpecError(where + ": entry (" + std::to_string(a) + "," +
                                    std::to_string(b) + ") out of range");
        }
        g.mul_ = std::move(table);
        g.identity_ = -1;
        for (int e = 0; e < g.order_; ++e) {
            bool ok = true;
            for (int x = 0; x < g.order_ && ok; ++x)
                ok = g.mul_[e][x] == x && g.mul_[x][e] == x;
            if (ok) {
                g.identity_ = e;
                break;
            }
        }
        if (g.identity_ < 0) throw SpecError(where + ": no two-sided identity element");
        for (int a = 0; a < g.order_; ++a)
            for (int b = 0; b < g.order_; ++b)
                for (int c = 0; c < g.order_; ++c)
                    if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]])
                        throw SpecError(where + ": associativity fails at triple (" +
                                        std::to_string(a) + "," + std::to_string(b) + "," +
                                        std::to_string(c) + ")");
        g.inverse_.assign(g.order_, -1);
        for (int a = 0; a < g.order_; ++a) {
            for (int b = 0; b < g.order_; ++b)
                if (g.mul_[a][b] == g.identity_ && g.mul_[b][a] == g.identity_) {
                    g.inverse_[a] = b;
                    break;
                }
            if (g.inverse_[a] < 0)
                throw SpecError(where + ": element " + std::to_string(a) + " has no inverse");
        }
        return g;
    }

    /// Additive group of integers mod n.
    static FiniteGroup cyclic(int n) {
        if (n < 1) throw SpecError("cyclic group: order must be positive");
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
        return from_mul_table(std::move(table), "cyclic(" + std::to_string(n) + ")");
    }

    /// Direct product; pair (a,b) is encoded as a*|B| + b.
    static FiniteGroup direct_product(const FiniteGroup& ga, const FiniteGroup& gb) {
        const int na = ga.order(), nb = gb.order(), n = na * nb;
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int a1 = 0; a1 < na; ++a1)
            for (int b1 = 0; b1 < nb; ++b1)
                for (int a2 = 0; a2 < na; ++a2)
                    for (int b2 = 0; b2 < nb; ++b2)
                        table[a1 * nb + b1][a2 * nb + b2] =
                            ga.mul(a1, a2) * nb + gb.mul(b1, b2);
        return from_mul_table(std::move(table), "product group");
    }

    /// The symmetric group on `points` letters, elements ordered by their
    /// image tuples (lexicographic). Used for nonabelian desk-scale towers.
    static FiniteGroup symmetric(int points) {
        std::vector<int> base(points);
        for (int i = 0; i < points; ++i) base[i] = i;
        std::vector<std::vector<int>> perms;
        std::vector<int> p = base;
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        const int n = static_cast<int>(perms.size());
        auto find = [&](const std::vector<int>& q) {
            return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) -
                                    perms.begin());
        };
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                // left action composition: (a*b)(x) = a(b(x))
                std::vector<int> q(points);
                for (int x = 0; x < points; ++x) q[x] = perms[a][perms[b][x]];
                table[a][b] = find(q);
            }
        return from_mul_table(std::move(table), "symmetric(" + std::to_string(points) + ")");
    }

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::vector<std::vector<int>>& mul_table() const { return mul_; }

    /// Closure of a subset under multiplication and inversion, as a sorted
    /// element list. Always contains the identity.
    std::vector<int> generated_subgroup(const std::vector<int>& gens) const {
        std::set<int> h{identity_};
        for (int g : gens) h.insert(g);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(h.begin(), h.end());
            for (int a : cur)
                for (int b : cur)
                    if (h.insert(mul_[a][b]).second) grew = true;
            for (int a : cur)
                if (h.insert(inverse_[a]).second) grew = true;
        }
        return {h.begin(), h.end()};
    }

    /// Every subgroup, each as a sorted element list; the list itself is
    /// sorted lexicographically. Found by closing one added generator at a
    /// time starting from the trivial subgroup.
    std::vector<std::vector<int>> subgroups() const {
        std::set<std::vector<int>> found;
        std::vector<std::vector<int>> work{generated_subgroup({})};
        found.insert(work[0]);
        while (!work.empty()) {
            std::vector<int> h = std::move(work.back());
            work.pop_back();
            for (int g = 0; g < order_; ++g) {
                if (std::binary_search(h.begin(), h.end(), g)) continue;
                std::vector<int> gens = h;
                gens.push_back(g);
                auto bigger = generated_subgroup(gens);
                if (found.insert(bigger).second) work.push_back(bigger);
            }
        }
        return {found.begin(), found.end()};
    }

    bool is_subgroup(const std::vector<int>& elems) const {
        if (!std::binary_search(elems.begin(), elems.end(), identity_)) return false;
        for (int a : elems) {
            if (a < 0 || a >= order_) return false;
            if (!std::binary_search(elems.begin(), elems.end(), inverse_[a])) return false;
            for (int b : elems)
                if (!std::binary_search(elems.begin(), elems.end(), mul_[a][b])) return false;
        }
        return true;
    }

    bool operator==(const FiniteGroup& o) const { return mul_ == o.mul_; }

private:
    FiniteGroup() = default;
    int order_ = 0;
    int identity_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inverse_;
};

}  // namespace gsite
