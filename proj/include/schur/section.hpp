#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "schur/errors.hpp"
#include "schur/group.hpp"

namespace schur {

/**
 * A section U/L of an ambient group, with the quotient materialized as an
 * AbelianGroup in canonical (invariant-factor) form.  `project` sends a
 * member of U to its quotient index (-1 outside U); `coset_rep` sends a
 * quotient index to the least ambient element of its fiber.
 */
struct Section {
    Subgroup U;
    Subgroup L;
    AbelianGroup quotient;
    std::vector<int> project;
    std::vector<int> coset_rep;
};

namespace detail {

/// A finite abelian group given by an explicit addition table; used only as
/// scaffolding while decomposing a quotient into cyclic factors.
struct TableGroup {
    int n = 1;
    std::vector<int> add; // n*n, identity is 0

    int sum(int a, int b) const { return add[static_cast<std::size_t>(a) * n + b]; }
    int scale(int m, int x) const {
        int r = 0;
        while (m-- > 0) r = sum(r, x);
        return r;
    }
    int element_order(int x) const {
        int o = 1, y = x;
        while (y != 0) { y = sum(y, x); ++o; }
        return o;
    }
};

/// Cyclic decomposition: returns (orders, generators) with the element of
/// maximal order first, so orders are descending under divisibility.
/// Uses the classical summand argument: an element a of maximal order spans
/// a direct summand, and generators of G/<a> lift to complement generators
/// after subtracting a suitable multiple of a.
inline std::pair<std::vector<int>, std::vector<int>> cyclic_decomposition(const TableGroup& g) {
    if (g.n == 1) return {{}, {}};
    int a = 1, d = g.element_order(1);
    for (int x = 2; x < g.n; ++x) {
        int o = g.element_order(x);
        if (o > d) { d = o; a = x; }
    }
    // cosets of <a>, keyed by least member
    std::vector<int> cyc;
    for (int y = 0, first = 1; first || y != 0; first = 0, y = g.sum(y, a)) cyc.push_back(y);
    std::vector<int> coset_of(g.n, -1), reps;
    for (int x = 0; x < g.n; ++x) {
        if (coset_of[x] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int h : cyc) coset_of[g.sum(x, h)] = id;
    }
    TableGroup q;
    q.n = static_cast<int>(reps.size());
    q.add.resize(static_cast<std::size_t>(q.n) * q.n);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            q.add[static_cast<std::size_t>(i) * q.n + j] = coset_of[g.sum(reps[i], reps[j])];
    auto [sub_orders, sub_gens] = cyclic_decomposition(q);
    std::vector<int> orders{d}, gens{a};
    for (std::size_t i = 0; i < sub_gens.size(); ++i) {
        int e = sub_orders[i];
        int b = reps[sub_gens[i]];
        // e*b lies in <a>, say e*b = t*a with e | t; replace b by b - (t/e)*a
        int eb = g.scale(e, b);
        int t = 0, y = 0;
        while (y != eb) { y = g.sum(y, a); ++t; }
        if (t % e != 0) throw internal_error("cyclic_decomposition: lift adjustment failed");
        int corr = g.scale(d - (t / e) % d, a);
        b = g.sum(b, corr);
        if (g.element_order(b) != e) throw internal_error("cyclic_decomposition: bad lifted order");
        orders.push_back(e);
        gens.push_back(b);
    }
    return {orders, gens};
}

} // namespace detail

/// The section U/L with canonical quotient decomposition.  L must be
/// contained in U; both must be subgroups of g.
inline Section make_section(const AbelianGroup& g, Subgroup U, Subgroup L) {
    if (!U.contains_all(L)) throw domain_error("make_section: L is not contained in U");
    // L-cosets inside U, numbered in order of least representative
    std::vector<int> coset_of(g.order(), -1), reps;
    for (int u : U.members) {
        if (coset_of[u] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(u);
        for (int l : L.members) {
            int x = g.add(u, l);
            if (!U.contains(x)) throw domain_error("make_section: L does not normalize U membership");
            coset_of[x] = id;
        }
    }
    int m = static_cast<int>(reps.size());
    if (m * L.order() != U.order()) throw internal_error("make_section: coset count mismatch");

    detail::TableGroup t;
    t.n = m;
    t.add.resize(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            t.add[static_cast<std::size_t>(i) * m + j] = coset_of[g.add(reps[i], reps[j])];

    auto [orders, gens] = detail::cyclic_decomposition(t);
    // ascending invariant factors d_1 | d_2 | ... | d_k
    std::reverse(orders.begin(), orders.end());
    std::reverse(gens.begin(), gens.end());

    Section s;
    s.U = std::move(U);
    s.L = std::move(L);
    s.quotient = AbelianGroup(orders);
    // quotient index -> coset id, by expanding tuples through the table group
    std::vector<int> to_coset(m, -1);
    {
        std::vector<char> hit(m, 0);
        for (int q = 0; q < m; ++q) {
            auto tup = s.quotient.decode(q);
            int c = 0;
            for (std::size_t i = 0; i < tup.size(); ++i) c = t.sum(c, t.scale(tup[i], gens[i]));
            if (hit[c]) throw internal_error("make_section: decomposition is not a bijection");
            hit[c] = 1;
            to_coset[q] = c;
        }
    }
    std::vector<int> from_coset(m);
    for (int q = 0; q < m; ++q) from_coset[to_coset[q]] = q;

    s.project.assign(g.order(), -1);
    for (int x : s.U.members) s.project[x] = from_coset[coset_of[x]];
    s.coset_rep.assign(m, -1);
    for (int x : s.U.members) {
        int q = s.project[x];
        if (s.coset_rep[q] < 0) s.coset_rep[q] = x;
    }
    return s;
}

/// A subgroup viewed as a group in its own right (section U/1).
inline Section as_group(const AbelianGroup& g, Subgroup U) {
    return make_section(g, std::move(U), trivial_subgroup());
}

/**
 * A registered direct decomposition G = G1 x G2 obtained by cutting the
 * factor list at position `cut`.  With lexicographic indexing the element
 * x corresponds to the pair (x / |G2|, x % |G2|).
 */
struct Decomposition {
    AbelianGroup g;
    std::size_t cut = 0;
    AbelianGroup g1;
    AbelianGroup g2;

    int left_of(int x) const { return x / g2.order(); }
    int right_of(int x) const { return x % g2.order(); }
    int pair(int a, int b) const { return a * g2.order() + b; }

    /// All of G1 x {0} as a subgroup of G.
    Subgroup left_subgroup() const {
        std::vector<int> gens;
        for (int i = 0; i < g1.order(); ++i) gens.push_back(pair(i, 0));
        return subgroup_generated(g, gens);
    }
    Subgroup right_subgroup() const {
        std::vector<int> gens;
        for (int i = 0; i < g2.order(); ++i) gens.push_back(pair(0, i));
        return subgroup_generated(g, gens);
    }
};

inline Decomposition split_at(const AbelianGroup& g, std::size_t cut) {
    if (cut > g.factors().size())
        throw usage_error("split_at: cut position exceeds the number of factors");
    Decomposition d;
    d.g = g;
    d.cut = cut;
    d.g1 = AbelianGroup(std::vector<int>(g.factors().begin(), g.factors().begin() + cut));
    d.g2 = AbelianGroup(std::vector<int>(g.factors().begin() + cut, g.factors().end()));
    return d;
}

/// Componentwise projection of a subset of G onto a registered factor.
inline std::vector<int> project_left(const Decomposition& d, const std::vector<int>& xs) {
    std::vector<int> out;
    for (int x : xs) out.push_back(d.left_of(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<int> project_right(const Decomposition& d, const std::vector<int>& xs) {
    std::vector<int> out;
    for (int x : xs) out.push_back(d.right_of(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace schur
