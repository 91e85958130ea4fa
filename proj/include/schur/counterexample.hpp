#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "schur/build.hpp"
#include "schur/classify.hpp"
#include "schur/errors.hpp"
#include "schur/group.hpp"
#include "schur/perm.hpp"
#include "schur/section.hpp"
#include "schur/sring.hpp"

namespace schur {

/**
 * Full record of the explicit non-schurian S-ring construction over
 * G1 x G2 when Omega*(|Gi|) >= 2 on both sides.  Every intermediate object
 * is kept so the result can be re-verified piece by piece.
 */
struct Theorem4Witness {
    AbelianGroup g1_input, g2_input;
    Subgroup g1_reduced, g2_reduced; // subgroups of the inputs used for the construction
    AbelianGroup g1, g2;             // the reduced groups in canonical coordinates
    Subgroup a1, b1;                 // chain 1 < A1 <= B1 < G1
    Subgroup a2, b2;                 // chain 1 < A2 <= B2 < G2
    AbelianGroup group;              // G = G1 x G2
    Subgroup U, L;                   // final wreath section: U = G1 x B2, L = 1 x A2
    SRing ring1, ring2, ring3, ring4; // the four cyclotomic pieces
    SRing ring12, ring34;             // the two intermediate wreath products
    SRing ring;                       // the final S-ring over G
};

namespace detail {

// order of a subgroup of shape p*q (odd primes), 4*q, or 8, chosen from the
// arithmetic of n; exists exactly when Omega*(n) >= 2
inline int counterexample_shape(long long n) {
    int a = 0;
    long long m = n;
    while (m % 2 == 0) { m /= 2; ++a; }
    std::vector<long long> odd;
    for (long long p = 3; p * p <= m; p += 2)
        while (m % p == 0) { odd.push_back(p); m /= p; }
    if (m > 1) odd.push_back(m);
    std::sort(odd.begin(), odd.end());
    if (odd.size() >= 2) return static_cast<int>(odd[0] * odd[1]);
    if (a >= 2 && !odd.empty()) return static_cast<int>(4 * odd[0]);
    if (a >= 3) return 8;
    throw domain_error("counterexample_shape: Omega*(n) < 2");
}

// The inversion x -> -x, except on an elementary abelian B of order 4 where
// inversion is trivial: there, the involution fixing the designated order-2
// subgroup pointwise and swapping the other two elements.  Defined on all of
// g, acting only inside B.
inline std::vector<int> involution_on_subgroup(const AbelianGroup& g, const Subgroup& B,
                                               const Subgroup& A) {
    std::vector<int> s(g.order());
    std::iota(s.begin(), s.end(), 0);
    bool e4 = B.order() == 4;
    for (int x : B.members)
        if (g.element_order(x) > 2) e4 = false;
    if (e4) {
        std::vector<int> fixed = A.order() == 2 ? A.members : std::vector<int>{0, B.members[1]};
        std::vector<int> moved;
        for (int x : B.members)
            if (x != fixed[0] && x != fixed[1]) moved.push_back(x);
        s[moved[0]] = moved[1];
        s[moved[1]] = moved[0];
    } else {
        for (int x : B.members) s[x] = g.neg(x);
    }
    return s;
}

/// Same dichotomy on a whole (canonically presented) group; W is the
/// designated fixed subgroup for the elementary abelian order-4 case.
inline std::vector<int> involution_on_group(const AbelianGroup& h, const std::vector<int>& W) {
    std::vector<int> s(h.order());
    if (h.order() != 4 || h.factors() != std::vector<int>{2, 2}) {
        for (int x = 0; x < h.order(); ++x) s[x] = h.neg(x);
        return s;
    }
    if (W.size() != 2) throw internal_error("involution_on_group: need an order-2 fixed subgroup");
    std::iota(s.begin(), s.end(), 0);
    std::vector<int> moved;
    for (int x = 0; x < 4; ++x)
        if (x != W[0] && x != W[1]) moved.push_back(x);
    s[moved[0]] = moved[1];
    s[moved[1]] = moved[0];
    return s;
}

} // namespace detail

/**
 * The explicit non-schurian S-ring over (a subgroup of) G1 x G2, where both
 * factors satisfy Omega*(|Gi|) >= 2.  Each factor is first reduced to a
 * subgroup of order p*q (odd primes), 4q, or 8; chains Ai <= Bi are chosen
 * in the reduced groups; four cyclotomic S-rings for involution actions on
 * the sections B1 x B2, (G1/A1) x B2, B1 x (G2/A2), (G1/A1) x (G2/A2) are
 * glued by three generalized wreath products.  The gluing conditions are
 * checked exactly during construction.
 */
inline Theorem4Witness build_theorem4(const AbelianGroup& g1_in, const AbelianGroup& g2_in) {
    if (omega_star(g1_in.order()) < 2 || omega_star(g2_in.order()) < 2)
        throw domain_error("build_theorem4: both factors need Omega*(order) >= 2");
    Theorem4Witness w;
    w.g1_input = g1_in;
    w.g2_input = g2_in;

    auto reduce = [](const AbelianGroup& gi, Subgroup& red, AbelianGroup& out) {
        red = subgroup_of_order(gi, detail::counterexample_shape(gi.order()));
        out = as_group(gi, red).quotient;
    };
    reduce(g1_in, w.g1_reduced, w.g1);
    reduce(g2_in, w.g2_reduced, w.g2);

    // chains: index-q subgroup when the order is p*q or 4q (A = B);
    // for order 8, an order-2 subgroup inside an order-4 overgroup
    auto chain = [](const AbelianGroup& gr, Subgroup& A, Subgroup& B) {
        int m = gr.order();
        if (m % 2 == 1) {
            int p = 3;
            while (m % p != 0) p += 2;
            A = B = subgroup_of_order(gr, p);
        } else if (m != 8) {
            A = B = subgroup_of_order(gr, 4);
        } else {
            A = subgroup_of_order(gr, 2);
            for (int x = 1; x < 8; ++x) {
                std::vector<int> gens = A.generators;
                gens.push_back(x);
                Subgroup s = subgroup_generated(gr, gens);
                if (s.order() == 4) { B = s; break; }
            }
        }
    };
    chain(w.g1, w.a1, w.b1);
    chain(w.g2, w.a2, w.b2);

    w.group = direct_product(w.g1, w.g2);
    Decomposition d = split_at(w.group, w.g1.factors().size());
    auto prod_sub = [&](const std::vector<int>& m1, const std::vector<int>& m2) {
        std::vector<int> gens;
        for (int x : m1) gens.push_back(d.pair(x, 0));
        for (int y : m2) gens.push_back(d.pair(0, y));
        return subgroup_generated(w.group, gens);
    };
    w.U = prod_sub(full_subgroup(w.g1).members, w.b2.members); // G1 x B2
    w.L = prod_sub({0}, w.a2.members);                         // 1 x A2

    Section sec_u = as_group(w.group, w.U);                             // G1 x B2
    Section sec_l = make_section(w.group, full_subgroup(w.group), w.L); // G1 x (G2/A2)
    const AbelianGroup& gu = sec_u.quotient;
    const AbelianGroup& gl = sec_l.quotient;

    Section sec_h2 = make_section(w.g1, full_subgroup(w.g1), w.a1); // H2 = G1/A1
    Section sec_h4 = make_section(w.g2, full_subgroup(w.g2), w.a2); // H4 = G2/A2

    std::vector<int> s1 = detail::involution_on_subgroup(w.g1, w.b1, w.a1);
    std::vector<int> s3 = detail::involution_on_subgroup(w.g2, w.b2, w.a2);
    auto image_subgroup = [](const Section& sec, const std::vector<int>& members) {
        std::vector<int> img;
        for (int x : members) img.push_back(sec.project[x]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return img;
    };
    std::vector<int> s2 = detail::involution_on_group(sec_h2.quotient,
                                                      image_subgroup(sec_h2, w.b1.members));
    std::vector<int> s4 = detail::involution_on_group(sec_h4.quotient,
                                                      image_subgroup(sec_h4, w.b2.members));
    // the induced maps on the factor coordinates of G
    auto act1 = [&](int x1) { return s1[x1]; };
    auto act2 = [&](int x1) { return sec_h2.coset_rep[s2[sec_h2.project[x1]]]; };
    auto act3 = [&](int x2) { return s3[x2]; };
    auto act4 = [&](int x2) { return sec_h4.coset_rep[s4[sec_h4.project[x2]]]; };

    // first gluing, over G1 x B2: cyc on B1 x B2 above, cyc on (G1/A1) x B2 below
    Subgroup u_in = subgroup_generated(gu, image_subgroup(sec_u, prod_sub(w.b1.members, w.b2.members).members));
    Subgroup l_in = subgroup_generated(gu, image_subgroup(sec_u, prod_sub(w.a1.members, {0}).members));
    {
        Section sec_t = as_group(gu, u_in);
        int n = sec_t.quotient.order();
        Perm pa(n), pb(n);
        for (int t = 0; t < n; ++t) {
            int x = sec_u.coset_rep[sec_t.coset_rep[t]];
            int x1 = d.left_of(x), x2 = d.right_of(x);
            pa[t] = sec_t.project[sec_u.project[d.pair(act1(x1), x2)]];
            pb[t] = sec_t.project[sec_u.project[d.pair(x1, act3(x2))]];
        }
        w.ring1 = cyclotomic(PermGroup(n, {pa, pb}), sec_t.quotient);
    }
    {
        Section sec_t = make_section(gu, full_subgroup(gu), l_in);
        int n = sec_t.quotient.order();
        Perm pc(n);
        for (int t = 0; t < n; ++t) {
            int x = sec_u.coset_rep[sec_t.coset_rep[t]];
            pc[t] = sec_t.project[sec_u.project[d.pair(act2(d.left_of(x)), act3(d.right_of(x)))]];
        }
        w.ring2 = cyclotomic(PermGroup(n, {pc}), sec_t.quotient);
    }
    w.ring12 = wreath(gu, u_in, l_in, w.ring1, w.ring2);

    // second gluing, over G1 x (G2/A2): cyc on B1 x H4 above, cyc on
    // (G1/A1) x H4 below
    Subgroup u_in2 = subgroup_generated(
        gl, image_subgroup(sec_l, prod_sub(w.b1.members, full_subgroup(w.g2).members).members));
    Subgroup l_in2 = subgroup_generated(gl, image_subgroup(sec_l, prod_sub(w.a1.members, {0}).members));
    {
        Section sec_t = as_group(gl, u_in2);
        int n = sec_t.quotient.order();
        Perm pd(n);
        for (int t = 0; t < n; ++t) {
            int x = sec_l.coset_rep[sec_t.coset_rep[t]];
            pd[t] = sec_t.project[sec_l.project[d.pair(act1(d.left_of(x)), act4(d.right_of(x)))]];
        }
        w.ring3 = cyclotomic(PermGroup(n, {pd}), sec_t.quotient);
    }
    {
        Section sec_t = make_section(gl, full_subgroup(gl), l_in2);
        int n = sec_t.quotient.order();
        Perm pe(n);
        for (int t = 0; t < n; ++t) {
            int x = sec_l.coset_rep[sec_t.coset_rep[t]];
            pe[t] = sec_t.project[sec_l.project[d.pair(act2(d.left_of(x)), act4(d.right_of(x)))]];
        }
        w.ring4 = cyclotomic(PermGroup(n, {pe}), sec_t.quotient);
    }
    w.ring34 = wreath(gl, u_in2, l_in2, w.ring3, w.ring4);

    // final gluing over S = G1 x (B2/A2)
    w.ring = wreath(w.group, w.U, w.L, w.ring12, w.ring34);

    // the lever of the non-schurity argument: the top cyclotomic piece must
    // have a basic set of size 4
    std::size_t mx = 0;
    for (const auto& c : w.ring1.classes) mx = std::max(mx, c.size());
    if (mx != 4) throw internal_error("build_theorem4: expected a basic set of size 4");
    return w;
}

} // namespace schur
