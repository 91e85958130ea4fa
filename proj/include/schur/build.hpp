#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "schur/errors.hpp"
#include "schur/group.hpp"
#include "schur/perm.hpp"
#include "schur/section.hpp"
#include "schur/sring.hpp"

namespace schur {

/// cyc(K, G): classes are the orbits of a group K of automorphisms of G.
inline SRing cyclotomic(const PermGroup& k, const AbelianGroup& g) {
    if (k.degree() != g.order()) throw domain_error("cyclotomic: domain mismatch");
    for (const auto& f : k.generators())
        if (!is_group_automorphism(g, f))
            throw domain_error("cyclotomic: generator is not a group automorphism");
    return expect_sring(verify_sring(g, k.orbits()), "cyclotomic");
}

/// Orbit S-ring of a permutation group containing G_right: classes are the
/// orbits of the identity-point stabilizer.
inline SRing orbit_sring(const PermGroup& gamma, const AbelianGroup& g) {
    if (gamma.degree() != g.order()) throw domain_error("orbit_sring: domain mismatch");
    for (int e : g.factor_generators())
        if (!gamma.contains(translation(g, e)))
            throw domain_error("orbit_sring: group does not contain all right translations");
    PermGroup stab = gamma.point_stabilizer(0);
    return expect_sring(verify_sring(g, stab.orbits()), "orbit_sring");
}

/// Tensor product: S-ring over G1 x G2 with product classes.
inline SRing tensor(const SRing& a1, const SRing& a2) {
    AbelianGroup g = direct_product(a1.group, a2.group);
    std::vector<std::vector<int>> parts;
    for (const auto& X : a1.classes)
        for (const auto& Y : a2.classes) {
            std::vector<int> c;
            for (int x : X)
                for (int y : Y) c.push_back(pair_index(a1.group, a2.group, x, y));
            parts.push_back(std::move(c));
        }
    return expect_sring(verify_sring(g, parts), "tensor");
}

namespace detail {

// Transport the classes of a1 (over as_group(g, U).quotient) into the
// coordinates of the section U/L; distinct images form a partition when a1
// is an S-ring with L as an A-group.
inline std::set<std::vector<int>> project_upper(const SRing& a1, const Section& sec_u,
                                                const Section& sec_s) {
    std::set<std::vector<int>> out;
    for (const auto& X : a1.classes) {
        std::vector<int> img;
        for (int q : X) img.push_back(sec_s.project[sec_u.coset_rep[q]]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        out.insert(std::move(img));
    }
    return out;
}

} // namespace detail

/**
 * Generalized S-wreath product over the section S = U/L: keeps the classes
 * of A1 (an S-ring over U) inside U and pulls the classes of A2 (an S-ring
 * over G/L) back to unions of L-cosets outside U.  Requires the exact
 * gluing condition (A1)_S = (A2)_S; a mismatch is reported with a witness
 * class.
 */
inline SRing wreath(const AbelianGroup& g, const Subgroup& U, const Subgroup& L,
                    const SRing& a1, const SRing& a2) {
    if (!U.contains_all(L)) throw domain_error("wreath: L is not contained in U");
    Section sec_u = as_group(g, U);
    Section sec_gl = make_section(g, full_subgroup(g), L);
    if (a1.group != sec_u.quotient)
        throw usage_error("wreath: A1 is not over the canonical group of U");
    if (a2.group != sec_gl.quotient)
        throw usage_error("wreath: A2 is not over the canonical group of G/L");
    Section sec_s = make_section(g, U, L);

    // (A1)_S
    std::set<std::vector<int>> p1 = detail::project_upper(a1, sec_u, sec_s);

    // (A2)_S: classes of A2 inside the image of U, transported to S
    std::vector<char> in_u_image(sec_gl.quotient.order(), 0);
    for (int x : U.members) in_u_image[sec_gl.project[x]] = 1;
    std::set<std::vector<int>> p2;
    for (const auto& Y : a2.classes) {
        if (!in_u_image[Y.front()]) continue;
        std::vector<int> img;
        for (int q : Y) {
            if (!in_u_image[q])
                throw domain_error("wreath: a class of A2 crosses the image of U");
            img.push_back(sec_s.project[sec_gl.coset_rep[q]]);
        }
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        p2.insert(std::move(img));
    }

    if (p1 != p2) {
        std::string w = "wreath: gluing mismatch, (A1)_S != (A2)_S; witness class {";
        for (const auto& c : p1)
            if (!p2.count(c)) {
                for (std::size_t i = 0; i < c.size(); ++i)
                    w += (i ? "," : "") + std::to_string(c[i]);
                break;
            }
        if (w.back() == '{')
            for (const auto& c : p2)
                if (!p1.count(c)) {
                    for (std::size_t i = 0; i < c.size(); ++i)
                        w += (i ? "," : "") + std::to_string(c[i]);
                    break;
                }
        throw domain_error(w + "}");
    }

    std::vector<std::vector<int>> parts;
    for (const auto& X : a1.classes) {
        std::vector<int> c;
        for (int q : X) c.push_back(sec_u.coset_rep[q]);
        parts.push_back(std::move(c));
    }
    for (const auto& Y : a2.classes) {
        if (in_u_image[Y.front()]) continue;
        std::vector<int> c;
        std::vector<char> want(sec_gl.quotient.order(), 0);
        for (int q : Y) want[q] = 1;
        for (int x = 0; x < g.order(); ++x)
            if (want[sec_gl.project[x]]) c.push_back(x);
        parts.push_back(std::move(c));
    }
    return expect_sring(verify_sring(g, parts), "wreath");
}

} // namespace schur
