#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "schur/errors.hpp"

namespace schur {

/**
 * A finite abelian group given as a product of cyclic factors,
 * G = Z_{f1} x ... x Z_{fk}.  Elements are integers 0..order-1 obtained by
 * lexicographic indexing of the tuples (x_1,...,x_k); index 0 is the
 * identity.  The factor list is kept exactly as given (it is NOT normalized
 * to invariant factors), because several constructions depend on a specific
 * decomposition; use invariant_factors() / normalized() for isomorphism
 * questions.
 */
class AbelianGroup {
public:
    AbelianGroup() : factors_{}, order_(1), strides_{}, neg_{0} {}

    explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
        long long ord = 1;
        for (int f : factors_) {
            if (f <= 1) throw domain_error("invalid cyclic factor (must be >= 2)");
            ord *= f;
            if (ord > 4096) throw resource_error("group order exceeds 4096");
        }
        order_ = static_cast<int>(ord);
        strides_.assign(factors_.size(), 1);
        for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i)
            strides_[i] = strides_[i + 1] * factors_[i + 1];
        neg_.resize(order_);
        for (int x = 0; x < order_; ++x) {
            int r = 0;
            for (std::size_t i = 0; i < factors_.size(); ++i) {
                int xi = (x / strides_[i]) % factors_[i];
                r += ((factors_[i] - xi) % factors_[i]) * strides_[i];
            }
            neg_[x] = r;
        }
        if (order_ <= 512) {
            add_table_.resize(static_cast<std::size_t>(order_) * order_);
            for (int a = 0; a < order_; ++a)
                for (int b = 0; b < order_; ++b)
                    add_table_[static_cast<std::size_t>(a) * order_ + b] = add_slow(a, b);
        }
    }

    const std::vector<int>& factors() const { return factors_; }
    int order() const { return order_; }

    int add(int a, int b) const {
        if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * order_ + b];
        return add_slow(a, b);
    }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg_[b]); }

    /// m * x (additively), any integer m.
    int scale(long long m, int x) const {
        int r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            int xi = (x / strides_[i]) % factors_[i];
            long long v = (m % factors_[i]) * xi % factors_[i];
            if (v < 0) v += factors_[i];
            r += static_cast<int>(v) * strides_[i];
        }
        return r;
    }

    int element_order(int x) const {
        int o = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            int xi = (x / strides_[i]) % factors_[i];
            int oi = factors_[i] / std::gcd(factors_[i], xi == 0 ? factors_[i] : xi);
            o = std::lcm(o, xi == 0 ? 1 : oi);
        }
        return o;
    }

    std::vector<int> decode(int idx) const {
        std::vector<int> t(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            t[i] = (idx / strides_[i]) % factors_[i];
        return t;
    }

    int encode(const std::vector<int>& tuple) const {
        int r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            int xi = tuple[i] % factors_[i];
            if (xi < 0) xi += factors_[i];
            r += xi * strides_[i];
        }
        return r;
    }

    /// Indices of the per-factor generators e_i = (0,..,1,..,0).
    std::vector<int> factor_generators() const {
        std::vector<int> g;
        g.reserve(factors_.size());
        for (std::size_t i = 0; i < factors_.size(); ++i) g.push_back(strides_[i]);
        return g;
    }

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

private:
    int add_slow(int a, int b) const {
        int r = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            int ai = (a / strides_[i]) % factors_[i];
            int bi = (b / strides_[i]) % factors_[i];
            r += ((ai + bi) % factors_[i]) * strides_[i];
        }
        return r;
    }

    std::vector<int> factors_;
    int order_;
    std::vector<int> strides_;
    std::vector<int> neg_;
    std::vector<int> add_table_;
};

inline AbelianGroup make_group(const std::vector<int>& factors) { return AbelianGroup(factors); }

/// G1 x G2 by concatenating factor lists.  With lexicographic indexing the
/// pair (a, b) gets index a * |G2| + b.
inline AbelianGroup direct_product(const AbelianGroup& g1, const AbelianGroup& g2) {
    std::vector<int> f = g1.factors();
    f.insert(f.end(), g2.factors().begin(), g2.factors().end());
    return AbelianGroup(f);
}
inline int pair_index(const AbelianGroup&, const AbelianGroup& g2, int a, int b) {
    return a * g2.order() + b;
}

/// Invariant factors d_1 | d_2 | ... | d_m (ascending), computed from the
/// prime powers of the given factor list.
inline std::vector<int> invariant_factors(const std::vector<int>& factors) {
    // prime -> multiset of exponents' prime powers, largest first
    std::map<int, std::vector<int>> pp;
    for (int f : factors) {
        int m = f;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                int q = 1;
                while (m % p == 0) { m /= p; q *= p; }
                pp[p].push_back(q);
            }
        }
        if (m > 1) pp[m].push_back(m);
    }
    std::size_t rows = 0;
    for (auto& [p, v] : pp) {
        std::sort(v.begin(), v.end(), std::greater<int>());
        rows = std::max(rows, v.size());
    }
    std::vector<int> inv;
    for (std::size_t i = 0; i < rows; ++i) {
        long long d = 1;
        for (auto& [p, v] : pp)
            if (i < v.size()) d *= v[i];
        inv.push_back(static_cast<int>(d));
    }
    std::reverse(inv.begin(), inv.end()); // ascending
    return inv;
}

inline AbelianGroup normalized(const AbelianGroup& g) {
    return AbelianGroup(invariant_factors(g.factors()));
}

inline bool isomorphic(const AbelianGroup& a, const AbelianGroup& b) {
    return invariant_factors(a.factors()) == invariant_factors(b.factors());
}

/**
 * A subgroup stored as its full sorted member list plus a small generating
 * sequence.  Operations that need the ambient group take it explicitly.
 */
struct Subgroup {
    std::vector<int> members;    // sorted, contains 0
    std::vector<int> generators; // greedy max-order generating sequence

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
    bool contains_all(const Subgroup& other) const {
        return std::includes(members.begin(), members.end(),
                             other.members.begin(), other.members.end());
    }
    bool operator==(const Subgroup& o) const { return members == o.members; }
    bool operator<(const Subgroup& o) const {
        if (members.size() != o.members.size()) return members.size() < o.members.size();
        return members < o.members;
    }
};

inline std::vector<int> closure_members(const AbelianGroup& g, const std::vector<int>& xs) {
    std::vector<char> in(g.order(), 0);
    in[0] = 1;
    std::vector<int> stack{0}, out{0};
    while (!stack.empty()) {
        int m = stack.back();
        stack.pop_back();
        for (int x : xs) {
            int s = g.add(m, x);
            if (!in[s]) { in[s] = 1; out.push_back(s); stack.push_back(s); }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> greedy_generators(const AbelianGroup& g, const std::vector<int>& members) {
    std::vector<int> gens;
    std::vector<int> have{0};
    while (have.size() < members.size()) {
        int best = -1, best_ord = 0;
        for (int x : members) {
            if (std::binary_search(have.begin(), have.end(), x)) continue;
            int o = g.element_order(x);
            if (o > best_ord) { best_ord = o; best = x; }
        }
        gens.push_back(best);
        have = closure_members(g, gens);
    }
    return gens;
}

inline Subgroup subgroup_generated(const AbelianGroup& g, const std::vector<int>& xs) {
    for (int x : xs)
        if (x < 0 || x >= g.order()) throw domain_error("element outside group");
    Subgroup s;
    s.members = closure_members(g, xs);
    s.generators = greedy_generators(g, s.members);
    return s;
}

inline Subgroup trivial_subgroup() { return Subgroup{{0}, {}}; }

/// A subgroup of the given order (one always exists in an abelian group when
/// the order divides |G|).  Deterministic: for each prime, scaled factor
/// generators are taken greedily, largest available power first.
inline Subgroup subgroup_of_order(const AbelianGroup& g, int t) {
    if (t < 1 || g.order() % t != 0) throw domain_error("subgroup_of_order: order must divide |G|");
    std::vector<int> gens;
    const std::vector<int>& f = g.factors();
    std::vector<int> fgens = g.factor_generators();
    int rest = t;
    for (int p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        // factor indices ordered by decreasing p-valuation
        std::vector<std::pair<int, int>> byval; // (valuation, index)
        for (std::size_t i = 0; i < f.size(); ++i) {
            int v = 0, m = f[i];
            while (m % p == 0) { m /= p; ++v; }
            if (v > 0) byval.emplace_back(-v, static_cast<int>(i));
        }
        std::sort(byval.begin(), byval.end());
        for (auto [nv, i] : byval) {
            if (e == 0) break;
            int k = std::min(-nv, e);
            long long pk = 1;
            for (int j = 0; j < k; ++j) pk *= p;
            gens.push_back(g.scale(f[i] / pk, fgens[i]));
            e -= k;
        }
        if (e > 0) throw internal_error("subgroup_of_order: insufficient p-rank");
    }
    Subgroup s = subgroup_generated(g, gens);
    if (s.order() != t) throw internal_error("subgroup_of_order: wrong order");
    return s;
}

inline Subgroup full_subgroup(const AbelianGroup& g) {
    Subgroup s;
    s.members.resize(g.order());
    std::iota(s.members.begin(), s.members.end(), 0);
    s.generators = g.factor_generators();
    return s;
}

/// Every subgroup of G, each exactly once, sorted by (order, member list).
/// Join-closure BFS starting from cyclic subgroups.
inline std::vector<Subgroup> all_subgroups(const AbelianGroup& g, int order_bound = 256) {
    if (g.order() > order_bound) throw resource_error("all_subgroups: order bound exceeded");
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> queue; // (members, gens)
    auto push = [&](std::vector<int> members, std::vector<int> gens) {
        if (seen.insert(members).second) queue.emplace_back(std::move(members), std::move(gens));
    };
    push({0}, {});
    while (!queue.empty()) {
        auto [h, hgens] = std::move(queue.back());
        queue.pop_back();
        for (int x = 1; x < g.order(); ++x) {
            if (std::binary_search(h.begin(), h.end(), x)) continue;
            std::vector<int> gens = hgens;
            gens.push_back(x);
            push(closure_members(g, gens), gens);
        }
        Subgroup s;
        s.members = std::move(h);
        s.generators = greedy_generators(g, s.members);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace schur
