#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "schur/build.hpp"
#include "schur/errors.hpp"
#include "schur/group.hpp"
#include "schur/perm.hpp"
#include "schur/section.hpp"
#include "schur/sring.hpp"

namespace schur {

struct EnumerateOptions {
    int order_bound = 24;
    // prune first-level choices to orbit representatives under aut(G) and
    // expand the images afterwards; the emitted set is the same either way
    bool aut_pruning = true;
};

namespace detail {

class SRingEnumerator {
public:
    SRingEnumerator(const AbelianGroup& g, const std::function<bool(const SRing&)>& cb,
                    const EnumerateOptions& opt)
        : g_(g), cb_(cb), opt_(opt) {
        if (opt_.aut_pruning) {
            PermGroup aut = automorphism_group(g_, 4096);
            aut_elements_ = aut.elements(2000000);
        }
    }

    void run() {
        std::vector<std::vector<int>> decided;
        recurse(decided, 0);
    }

private:
    bool emit(const SRing& a) {
        if (!opt_.aut_pruning) return cb_(a);
        // expand the aut(G)-orbit of the found ring, deduplicated
        for (const auto& f : aut_elements_) {
            std::vector<std::vector<int>> img;
            for (const auto& X : a.classes) {
                std::vector<int> y;
                for (int x : X) y.push_back(f[x]);
                std::sort(y.begin(), y.end());
                img.push_back(std::move(y));
            }
            std::sort(img.begin(), img.end());
            if (emitted_.insert(img).second)
                if (!cb_(SRing(g_, img))) return false;
        }
        return true;
    }

    // keep a first-level candidate only if it is the lexicographically least
    // among its aut(G)-images that contain the pivot element
    bool canonical_first_choice(const std::vector<int>& X, int pivot) const {
        for (const auto& f : aut_elements_) {
            std::vector<int> y;
            bool has_pivot = false;
            for (int x : X) {
                y.push_back(f[x]);
                if (f[x] == pivot) has_pivot = true;
            }
            if (!has_pivot) continue;
            std::sort(y.begin(), y.end());
            if (y < X) return false;
        }
        return true;
    }

    bool try_candidate(std::vector<std::vector<int>>& decided, const std::vector<int>& X,
                       int depth) {
        decided.push_back(X);
        std::vector<int> negX;
        for (int x : X) negX.push_back(g_.neg(x));
        std::sort(negX.begin(), negX.end());
        bool added_neg = negX != X;
        if (added_neg) decided.push_back(negX);
        bool go_on = recurse(decided, depth + 1);
        if (added_neg) decided.pop_back();
        decided.pop_back();
        return go_on;
    }

    // returns false when the callback asked to stop
    bool recurse(std::vector<std::vector<int>>& decided, int depth) {
        SRing c = closure(g_, decided);
        std::size_t covered = 1;
        for (const auto& X : decided) {
            if (c.classes[c.class_of[X.front()]] != X) return true; // class split: prune
            covered += X.size();
        }
        if (static_cast<int>(covered) == g_.order()) return emit(c);

        int e = -1;
        {
            std::vector<char> in(g_.order(), 0);
            in[0] = 1;
            for (const auto& X : decided)
                for (int x : X) in[x] = 1;
            for (int x = 1; x < g_.order(); ++x)
                if (!in[x]) { e = x; break; }
        }
        const std::vector<int>& cell = c.classes[c.class_of[e]];
        bool inverse_closed = true;
        for (int x : cell)
            if (c.class_of[g_.neg(x)] != c.class_of[e]) { inverse_closed = false; break; }

        std::vector<std::vector<int>> candidates;
        if (!inverse_closed) {
            // the inverse class lives in another cell, so any subset works
            std::vector<int> rest;
            for (int x : cell)
                if (x != e) rest.push_back(x);
            std::size_t total = std::size_t{1} << rest.size();
            for (std::size_t mask = 0; mask < total; ++mask) {
                std::vector<int> X{e};
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (mask >> i & 1) X.push_back(rest[i]);
                std::sort(X.begin(), X.end());
                candidates.push_back(std::move(X));
            }
        } else {
            // units: self-inverse elements and {x,-x} pairs inside the cell
            std::vector<int> selfs;
            std::vector<std::pair<int, int>> pairs;
            for (int x : cell) {
                int nx = g_.neg(x);
                if (nx == x) selfs.push_back(x);
                else if (x < nx) pairs.emplace_back(x, nx);
            }
            // symmetric candidates (X = -X): whole pairs and selfs
            {
                std::vector<int> base;
                std::vector<std::vector<int>> units;
                if (g_.neg(e) == e) base.push_back(e);
                else { base.push_back(e); base.push_back(g_.neg(e)); }
                for (int s : selfs)
                    if (s != e) units.push_back({s});
                for (auto [x, nx] : pairs)
                    if (x != e && nx != e) units.push_back({x, nx});
                std::size_t total = std::size_t{1} << units.size();
                for (std::size_t mask = 0; mask < total; ++mask) {
                    std::vector<int> X = base;
                    for (std::size_t i = 0; i < units.size(); ++i)
                        if (mask >> i & 1)
                            X.insert(X.end(), units[i].begin(), units[i].end());
                    std::sort(X.begin(), X.end());
                    candidates.push_back(std::move(X));
                }
            }
            // antisymmetric candidates (X and -X disjoint): at most one
            // element per pair, no self-inverse elements
            if (g_.neg(e) != e) {
                std::vector<std::pair<int, int>> other;
                for (auto [x, nx] : pairs)
                    if (x != e && nx != e) other.push_back({x, nx});
                std::vector<int> state(other.size(), 0); // 0 none, 1 first, 2 second
                while (true) {
                    std::vector<int> X{e};
                    for (std::size_t i = 0; i < other.size(); ++i) {
                        if (state[i] == 1) X.push_back(other[i].first);
                        if (state[i] == 2) X.push_back(other[i].second);
                    }
                    std::sort(X.begin(), X.end());
                    candidates.push_back(std::move(X));
                    std::size_t i = 0;
                    while (i < other.size() && state[i] == 2) state[i++] = 0;
                    if (i == other.size()) break;
                    ++state[i];
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& X : candidates) {
            if (depth == 0 && opt_.aut_pruning && !canonical_first_choice(X, e)) continue;
            if (!try_candidate(decided, X, depth)) return false;
        }
        return true;
    }

    const AbelianGroup& g_;
    const std::function<bool(const SRing&)>& cb_;
    EnumerateOptions opt_;
    std::vector<Perm> aut_elements_;
    std::set<std::vector<std::vector<int>>> emitted_;
};

} // namespace detail

/// Every S-ring over G exactly once, streamed to the callback (return false
/// to stop early).
inline void all_srings(const AbelianGroup& g, const std::function<bool(const SRing&)>& cb,
                       EnumerateOptions opt = {}) {
    if (g.order() > opt.order_bound)
        throw resource_error("all_srings: order bound exceeded (" + std::to_string(g.order()) +
                             " > " + std::to_string(opt.order_bound) + ")");
    detail::SRingEnumerator e(g, cb, opt);
    e.run();
}

inline std::vector<SRing> all_srings(const AbelianGroup& g, EnumerateOptions opt = {}) {
    std::vector<SRing> out;
    all_srings(g, [&](const SRing& a) { out.push_back(a); return true; }, opt);
    std::sort(out.begin(), out.end(),
              [](const SRing& a, const SRing& b) { return a.classes < b.classes; });
    return out;
}

/// Oracle: filter every partition of G with {identity} as a cell through
/// verify_sring.  Only for |G| <= 8.
inline std::vector<SRing> brute_force_srings(const AbelianGroup& g) {
    if (g.order() > 8) throw resource_error("brute_force_srings: order bound 8 exceeded");
    int n = g.order();
    std::vector<SRing> out;
    // restricted-growth strings over the elements 1..n-1
    std::vector<int> assign(std::max(n - 1, 0), 0);
    auto test = [&]() {
        int k = assign.empty() ? 0 : *std::max_element(assign.begin(), assign.end()) + 1;
        std::vector<std::vector<int>> parts(k + 1);
        parts[0] = {0};
        for (int x = 1; x < n; ++x) parts[assign[x - 1] + 1].push_back(x);
        auto v = verify_sring(g, parts);
        if (auto* s = std::get_if<SRing>(&v)) out.push_back(*s);
    };
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == static_cast<int>(assign.size())) { test(); return; }
        for (int v = 0; v <= maxv + 1; ++v) {
            assign[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    if (n <= 1) {
        std::vector<std::vector<int>> parts;
        if (n == 1) parts.push_back({0});
        auto v = verify_sring(g, parts);
        if (auto* s = std::get_if<SRing>(&v)) out.push_back(*s);
    } else {
        rec(0, -1);
    }
    std::sort(out.begin(), out.end(),
              [](const SRing& a, const SRing& b) { return a.classes < b.classes; });
    return out;
}

// ---------------------------------------------------------------------------
// Property suites: statements that are theorems for valid S-rings, checked
// as executable tests.  A failure on a verified S-ring indicates a bug.
// ---------------------------------------------------------------------------

struct LemmaReport {
    bool passed = true;
    int checks = 0; // non-vacuous checks actually performed
    std::string detail;

    void fail(const std::string& msg) {
        passed = false;
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

namespace detail {

inline std::vector<int> embed_left(const Decomposition& d, const std::vector<int>& hs) {
    std::vector<int> out;
    for (int h : hs) out.push_back(d.pair(h, 0));
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_class(const SRing& a, const std::vector<int>& xs) {
    if (xs.empty()) return false;
    return a.classes[a.class_of[xs.front()]] == xs;
}

} // namespace detail

/**
 * Projection lemma over a registered decomposition G = G1 x G2 whose factors
 * are both A-groups: projections of classes are classes, and A equals the
 * tensor product of its restrictions when one restriction is the full group
 * ring.
 */
inline LemmaReport projection_lemma_check(const SRing& a, const Decomposition& d) {
    LemmaReport r;
    if (a.group != d.g) throw usage_error("projection_lemma_check: decomposition group mismatch");
    Subgroup g1 = d.left_subgroup(), g2 = d.right_subgroup();
    if (!is_a_group(a, g1) || !is_a_group(a, g2)) return r; // hypothesis fails: vacuous
    for (const auto& X : a.classes) {
        ++r.checks;
        std::vector<int> ph;
        for (int h : project_left(d, X)) ph.push_back(d.pair(h, 0));
        std::sort(ph.begin(), ph.end());
        if (!detail::is_class(a, ph)) r.fail("left projection of a class is not a class");
        std::vector<int> pp;
        for (int t : project_right(d, X)) pp.push_back(d.pair(0, t));
        std::sort(pp.begin(), pp.end());
        if (!detail::is_class(a, pp)) r.fail("right projection of a class is not a class");
    }
    SRing a1 = restrict_sring(a, g1);
    if (a1.rank() == d.g1.order()) {
        // restriction to G1 is the group ring; A must be the tensor product
        for (const auto& X : a.classes) {
            ++r.checks;
            std::vector<int> prod;
            for (int h : project_left(d, X))
                for (int t : project_right(d, X)) prod.push_back(d.pair(h, t));
            std::sort(prod.begin(), prod.end());
            std::vector<int> xs = X;
            if (prod != xs) r.fail("class is not the product of its projections");
        }
    }
    return r;
}

/**
 * The H x Z_p lemma suite: identities for classes meeting both H and its
 * complement, the maximal-A-group dichotomy, and the highest-basic-set
 * statements when H is elementary of order 4.  Checks whose hypotheses are
 * not met pass vacuously.
 */
inline LemmaReport lemma_suite(const SRing& a, const Decomposition& d) {
    LemmaReport r;
    if (a.group != d.g) throw usage_error("lemma_suite: decomposition group mismatch");
    int p = d.g2.order();
    {
        bool prime = p >= 2;
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (!prime || d.g1.order() % p == 0 || std::gcd(d.g1.order(), p) != 1)
            throw usage_error("lemma_suite: second factor must be Z_p with p prime and coprime");
    }
    const AbelianGroup& g = a.group;

    // classes meeting both H and G \ H: X = H_X P with H'_X P^# attached
    for (const auto& X : a.classes) {
        std::vector<int> hx, prh;
        bool outside = false;
        for (int x : X) {
            if (d.right_of(x) == 0) hx.push_back(d.left_of(x));
            else outside = true;
        }
        if (hx.empty() || !outside) continue;
        ++r.checks;
        prh = project_left(d, X);
        std::vector<int> hprime;
        std::set_difference(prh.begin(), prh.end(), hx.begin(), hx.end(),
                            std::back_inserter(hprime));
        if (!a.is_a_set(detail::embed_left(d, hprime)))
            r.fail("H'_X is not an A-set");
        std::vector<int> expected;
        for (int h : hx)
            for (int t = 0; t < p; ++t) expected.push_back(d.pair(h, t));
        for (int h : hprime)
            for (int t = 1; t < p; ++t) expected.push_back(d.pair(h, t));
        std::sort(expected.begin(), expected.end());
        if (expected != X) r.fail("X != H_X P u H'_X P#");
        std::vector<int> united = X;
        for (int h : hprime) united.push_back(d.pair(h, 0));
        std::sort(united.begin(), united.end());
        std::vector<int> full;
        for (int h : prh)
            for (int t = 0; t < p; ++t) full.push_back(d.pair(h, t));
        std::sort(full.begin(), full.end());
        if (united != full) r.fail("X u H'_X != pr_H(X) P");
    }

    Subgroup h_sub = d.left_subgroup();
    Subgroup p_sub = d.right_subgroup();
    std::vector<Subgroup> ags = a_subgroups(a);

    // dichotomy when the maximal A-group inside H is proper
    if (!is_a_group(a, h_sub)) {
        ++r.checks;
        Subgroup h1 = trivial_subgroup();
        for (const auto& s : ags)
            if (h_sub.contains_all(s) && s.order() > h1.order()) h1 = s;
        bool stmt1 = false;
        {
            std::vector<int> complement;
            for (int x = 0; x < g.order(); ++x)
                if (!h1.contains(x)) complement.push_back(x);
            stmt1 = detail::is_class(a, complement);
        }
        bool stmt2 = false;
        for (const auto& l : ags) {
            if (l.order() == g.order()) continue;
            if (!std::includes(l.members.begin(), l.members.end(),
                               p_sub.members.begin(), p_sub.members.end()))
                continue;
            std::vector<int> ugens = h1.members;
            ugens.insert(ugens.end(), l.members.begin(), l.members.end());
            Subgroup u = subgroup_generated(g, ugens);
            if (!is_a_group(a, u)) continue;
            bool wreath_ok = true;
            for (const auto& Y : a.classes) {
                if (std::includes(u.members.begin(), u.members.end(), Y.begin(), Y.end()))
                    continue;
                Subgroup rad = radical(g, Y);
                if (!rad.contains_all(l)) { wreath_ok = false; break; }
            }
            if (wreath_ok) { stmt2 = true; break; }
        }
        if (!stmt1 && !stmt2) r.fail("maximal-A-group dichotomy fails");
    }

    // highest-basic-set statements; hypotheses: H = E4, both factors
    // A-groups, A_H cyclotomic with K1 != 1, A not a tensor product
    if (invariant_factors(d.g1.factors()) == std::vector<int>{2, 2} &&
        is_a_group(a, h_sub) && is_a_group(a, p_sub)) {
        SRing a_h = restrict_sring(a, h_sub);
        bool tensorial = true;
        for (const auto& X : a.classes) {
            std::vector<int> prod;
            for (int h : project_left(d, X))
                for (int t : project_right(d, X)) prod.push_back(d.pair(h, t));
            std::sort(prod.begin(), prod.end());
            if (prod != X) { tensorial = false; break; }
        }
        if (a_h.rank() < 4 && !tensorial) {
            // the unique regular K1-orbit: the one non-singleton class of A_H,
            // transported to ambient H-coordinates
            Section sec_h = as_group(g, h_sub);
            std::vector<int> reg;
            for (const auto& C : a_h.classes)
                if (C.size() > 1)
                    for (int q : C) reg.push_back(d.left_of(sec_h.coset_rep[q]));
            std::sort(reg.begin(), reg.end());
            // multiplier orbits on P from the restriction A_P
            SRing a_p = restrict_sring(a, p_sub);
            Section sec_p = as_group(g, p_sub);
            std::vector<int> pcls(p, -1); // class id per P element (P coords)
            for (int q = 0; q < p; ++q) pcls[d.right_of(sec_p.coset_rep[q])] = a_p.class_of[q];
            std::vector<int> multipliers; // K2 as residues mod p
            for (int m = 1; m < p; ++m) {
                bool ok = true;
                for (int t = 0; t < p && ok; ++t)
                    if (pcls[t * m % p] != pcls[t]) ok = false;
                if (ok) multipliers.push_back(m);
            }
            auto orbit_of = [&](int t) {
                std::vector<int> o;
                for (int m : multipliers) o.push_back(t * m % p);
                std::sort(o.begin(), o.end());
                o.erase(std::unique(o.begin(), o.end()), o.end());
                return o;
            };
            std::vector<std::vector<int>> highest;
            for (const auto& X : a.classes) {
                std::vector<int> xh = project_left(d, X), xp = project_right(d, X);
                bool is_highest = xh == reg && !(xp.size() == 1 && xp[0] == 0);
                if (is_highest) {
                    ++r.checks;
                    // statement (1): X_P is a K2-orbit
                    if (xp != orbit_of(xp.front()))
                        r.fail("highest basic set projection is not a K2-orbit");
                    highest.push_back(X);
                } else {
                    ++r.checks;
                    // statement (3): product of projections, one side a point
                    std::vector<int> prod;
                    for (int h : xh)
                        for (int t : xp) prod.push_back(d.pair(h, t));
                    std::sort(prod.begin(), prod.end());
                    if (prod != X || (xh.size() > 1 && xp.size() > 1))
                        r.fail("non-highest basic set is not a pointed product");
                }
            }
            // statement (2): 1 x aut(P) is transitive on the highest sets
            if (!highest.empty()) {
                ++r.checks;
                std::set<std::vector<int>> orbit;
                for (int m = 1; m < p; ++m) {
                    std::vector<int> img;
                    for (int x : highest.front())
                        img.push_back(d.pair(d.left_of(x), d.right_of(x) * m % p));
                    std::sort(img.begin(), img.end());
                    orbit.insert(std::move(img));
                }
                std::set<std::vector<int>> all(highest.begin(), highest.end());
                if (orbit != all) r.fail("1 x aut(P) is not transitive on highest sets");
            }
        }
    }
    return r;
}

} // namespace schur
