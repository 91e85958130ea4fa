#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "schur/errors.hpp"
#include "schur/group.hpp"
#include "schur/perm.hpp"
#include "schur/section.hpp"

namespace schur {

/**
 * An S-ring over an abelian group: an inverse-closed partition of the group
 * whose class sums span a ring.  Classes are sorted internally and ordered
 * by least element, so equal S-rings compare equal by value.  Construct
 * through verify_sring/closure or the builders; the constructor only
 * normalizes, it does not check the axioms.
 */
struct SRing {
    AbelianGroup group;
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;

    SRing() = default;
    SRing(AbelianGroup g, std::vector<std::vector<int>> cls)
        : group(std::move(g)), classes(std::move(cls)) {
        for (auto& c : classes) std::sort(c.begin(), c.end());
        std::sort(classes.begin(), classes.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        class_of.assign(group.order(), -1);
        for (int i = 0; i < static_cast<int>(classes.size()); ++i)
            for (int x : classes[i]) class_of[x] = i;
    }

    int rank() const { return static_cast<int>(classes.size()); }

    bool operator==(const SRing& o) const {
        return group == o.group && classes == o.classes;
    }

    /// Structure constants c^Z_{X,Y} for all Z, as a row indexed by Z.
    std::vector<int> structure_row(int x_cls, int y_cls) const {
        std::size_t key = static_cast<std::size_t>(x_cls) * classes.size() + y_cls;
        if (sc_cache_.size() != classes.size() * classes.size())
            sc_cache_.assign(classes.size() * classes.size(), {});
        if (!sc_cache_[key].empty()) return sc_cache_[key];
        std::vector<int> row(classes.size(), 0);
        // count pairs landing on one representative of each target class
        std::vector<int> cnt(group.order(), 0);
        for (int x : classes[x_cls])
            for (int y : classes[y_cls]) ++cnt[group.add(x, y)];
        for (std::size_t z = 0; z < classes.size(); ++z) row[z] = cnt[classes[z].front()];
        sc_cache_[key] = row;
        return row;
    }

    bool is_a_set(const std::vector<int>& xs) const {
        std::vector<char> in(group.order(), 0);
        for (int x : xs) in[x] = 1;
        for (int x : xs)
            for (int y : classes[class_of[x]])
                if (!in[y]) return false;
        return true;
    }

private:
    mutable std::vector<std::vector<int>> sc_cache_;
};

/// Witness for a failed S-ring check.
struct Violation {
    std::string axiom; // "partition", "S1", "S2" or "S3"
    std::string note;
    std::vector<int> X, Y; // offending classes where applicable
    int z = -1, z2 = -1;   // elements with differing structure counts
    int count_z = -1, count_z2 = -1;
};

/**
 * Check the S-ring axioms for a partition of G.  Returns the S-ring on
 * success, otherwise a Violation naming the failed axiom with a witness.
 * A malformed partition is reported as axiom "partition".
 */
inline std::variant<SRing, Violation> verify_sring(const AbelianGroup& g,
                                                   const std::vector<std::vector<int>>& parts) {
    std::vector<int> owner(g.order(), -1);
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
        if (parts[i].empty())
            return Violation{"partition", "empty class", {}, {}, -1, -1, -1, -1};
        for (int x : parts[i]) {
            if (x < 0 || x >= g.order())
                return Violation{"partition", "element outside group", parts[i], {}, x};
            if (owner[x] >= 0)
                return Violation{"partition", "element covered twice", parts[i], parts[owner[x]], x};
            owner[x] = i;
        }
    }
    for (int x = 0; x < g.order(); ++x)
        if (owner[x] < 0) return Violation{"partition", "element not covered", {}, {}, x};

    SRing a(g, parts);
    if (a.classes[0].size() != 1)
        return Violation{"S1", "identity is not a singleton class", a.classes[0]};
    for (const auto& X : a.classes) {
        int target = a.class_of[g.neg(X.front())];
        for (int x : X)
            if (a.class_of[g.neg(x)] != target)
                return Violation{"S2", "inverses split across classes", X,
                                 a.classes[target], x};
        if (a.classes[target].size() != X.size())
            return Violation{"S2", "inverse set is not a class", X, a.classes[target]};
    }
    std::vector<int> cnt(g.order(), 0);
    for (const auto& X : a.classes)
        for (const auto& Y : a.classes) {
            std::vector<int> touched;
            for (int x : X)
                for (int y : Y) {
                    int z = g.add(x, y);
                    if (cnt[z]++ == 0) touched.push_back(z);
                }
            for (int z : touched) {
                int z0 = a.classes[a.class_of[z]].front();
                if (cnt[z] != cnt[z0]) {
                    Violation v{"S3", "structure count differs within a class",
                                X, Y, z, z0, cnt[z], cnt[z0]};
                    for (int t : touched) cnt[t] = 0;
                    return v;
                }
            }
            for (int z : touched) cnt[z] = 0;
        }
    return a;
}

inline SRing expect_sring(std::variant<SRing, Violation> v, const std::string& who) {
    if (auto* s = std::get_if<SRing>(&v)) return std::move(*s);
    const auto& viol = std::get<Violation>(v);
    throw internal_error(who + ": produced an invalid S-ring (axiom " + viol.axiom + ", " +
                         viol.note + ")");
}

/**
 * The smallest S-ring whose A-sets include all the seed sets: coarsest
 * stable refinement of the partition generated by the seeds together with
 * the identity singleton, computed by iterated splitting (inverse classes
 * and structure-count vectors) until fixpoint.
 */
inline SRing closure(const AbelianGroup& g, const std::vector<std::vector<int>>& seeds) {
    int n = g.order();
    // initial atoms: distinguish by the seed-membership signature and identity
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> cls(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> sig{x == 0 ? 1 : 0};
        for (const auto& s : seeds) {
            bool in = std::find(s.begin(), s.end(), x) != s.end();
            sig.push_back(in ? 1 : 0);
        }
        auto it = sig_ids.find(sig);
        if (it == sig_ids.end()) it = sig_ids.emplace(sig, static_cast<int>(sig_ids.size())).first;
        cls[x] = it->second;
    }

    auto rebuild = [&](std::vector<std::vector<int>>& classes) {
        classes.assign(*std::max_element(cls.begin(), cls.end()) + 1, {});
        for (int x = 0; x < n; ++x) classes[cls[x]].push_back(x);
    };
    // split classes by an element key; returns true if anything split
    std::vector<int> key(n, 0);
    auto split_by_key = [&]() {
        int k = *std::max_element(cls.begin(), cls.end()) + 1;
        std::map<std::pair<int, int>, int> remap;
        std::vector<int> next(n);
        for (int x = 0; x < n; ++x) {
            auto it = remap.find({cls[x], key[x]});
            if (it == remap.end())
                it = remap.emplace(std::make_pair(cls[x], key[x]),
                                   static_cast<int>(remap.size())).first;
            next[x] = it->second;
        }
        bool changed = static_cast<int>(remap.size()) != k;
        cls = std::move(next);
        return changed;
    };

    std::vector<std::vector<int>> classes;
    std::vector<int> cnt(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        // inverse refinement
        for (int x = 0; x < n; ++x) key[x] = cls[g.neg(x)];
        if (split_by_key()) { changed = true; continue; }
        rebuild(classes);
        for (std::size_t i = 0; i < classes.size() && !changed; ++i)
            for (std::size_t j = 0; j < classes.size() && !changed; ++j) {
                std::fill(cnt.begin(), cnt.end(), 0);
                for (int x : classes[i])
                    for (int y : classes[j]) ++cnt[g.add(x, y)];
                key = cnt;
                if (split_by_key()) changed = true;
            }
    }
    rebuild(classes);
    return expect_sring(verify_sring(g, classes), "closure");
}

/// rad(X) = {g : X + g = X}, always a subgroup.
inline Subgroup radical(const AbelianGroup& g, const std::vector<int>& xs) {
    std::vector<char> in(g.order(), 0);
    for (int x : xs) in[x] = 1;
    Subgroup r;
    for (int t = 0; t < g.order(); ++t) {
        bool ok = true;
        for (int x : xs)
            if (!in[g.add(x, t)]) { ok = false; break; }
        if (ok) r.members.push_back(t);
    }
    r.generators = greedy_generators(g, r.members);
    return r;
}

/// The subgroup generated by a class, as member list.
inline Subgroup span_of(const AbelianGroup& g, const std::vector<int>& xs) {
    return subgroup_generated(g, xs);
}

/**
 * The A-group lattice H(A): every subgroup that is a union of classes.
 * Computed as the join closure of the groups generated by single classes;
 * every member is checked to really be a union of classes.
 */
inline std::vector<Subgroup> a_subgroups(const SRing& a) {
    const AbelianGroup& g = a.group;
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
        for (const auto& X : a.classes) {
            if (std::includes(h.begin(), h.end(), X.begin(), X.end())) continue;
            std::vector<int> gens = hgens;
            gens.insert(gens.end(), X.begin(), X.end());
            std::vector<int> joined = closure_members(g, gens);
            push(joined, greedy_generators(g, joined));
        }
        Subgroup s;
        s.members = std::move(h);
        if (!a.is_a_set(s.members))
            throw internal_error("a_subgroups: join of class spans is not an A-set");
        s.generators = std::move(hgens);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_a_group(const SRing& a, const Subgroup& h) {
    return a.is_a_set(h.members);
}

/**
 * Quotient S-ring A_S over an A-section S = U/L: classes are the distinct
 * projections of the classes of A inside U.
 */
inline SRing quotient_sring(const SRing& a, const Section& s) {
    if (!is_a_group(a, s.U) || !is_a_group(a, s.L))
        throw domain_error("quotient_sring: not an A-section (U or L is not an A-group)");
    std::set<std::vector<int>> images;
    for (const auto& X : a.classes) {
        if (!s.U.contains(X.front())) continue;
        std::vector<int> img;
        for (int x : X) img.push_back(s.project[x]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        images.insert(std::move(img));
    }
    std::vector<std::vector<int>> parts(images.begin(), images.end());
    return expect_sring(verify_sring(s.quotient, parts), "quotient_sring");
}

/// Restriction A_U to an A-group U, in the canonical coordinates of
/// as_group(G, U).
inline SRing restrict_sring(const SRing& a, const Subgroup& u) {
    return quotient_sring(a, as_group(a.group, u));
}

/**
 * X^[p] = {p·x : x in X, |xH ∩ X| not divisible by p} where H is the
 * p-torsion subgroup.  The flag reports whether the result is a union of
 * classes (guaranteed by theory for valid S-rings, but never assumed).
 */
struct WielandtPower {
    std::vector<int> set;
    bool is_union_of_classes = false;
};

inline WielandtPower wielandt_power(const SRing& a, const std::vector<int>& X, int p) {
    const AbelianGroup& g = a.group;
    if (p < 2 || g.order() % p != 0)
        throw domain_error("wielandt_power: p must be a prime divisor of the group order");
    std::vector<int> H;
    for (int x = 0; x < g.order(); ++x)
        if (g.scale(p, x) == 0) H.push_back(x);
    std::vector<char> in(g.order(), 0);
    for (int x : X) in[x] = 1;
    std::set<int> out;
    for (int x : X) {
        int c = 0;
        for (int h : H)
            if (in[g.add(x, h)]) ++c;
        if (c % p != 0) out.insert(g.scale(p, x));
    }
    WielandtPower w;
    w.set.assign(out.begin(), out.end());
    w.is_union_of_classes = w.set.empty() || a.is_a_set(w.set);
    return w;
}

/**
 * All group isomorphisms f with classes(A)^f = classes(B), found by
 * backtracking over images of the factor generators with class-size and
 * class-map consistency pruning.
 */
inline std::vector<Perm> cayley_isomorphisms(const SRing& a, const SRing& b) {
    const AbelianGroup& ga = a.group;
    const AbelianGroup& gb = b.group;
    if (ga.order() != gb.order())
        throw domain_error("cayley_isomorphisms: groups have different orders");
    std::vector<Perm> found;
    if (a.rank() != b.rank()) return found;

    std::vector<int> gens = ga.factor_generators();
    std::vector<int> images;

    // checks that the partial map on the subgroup generated by the assigned
    // generators is injective and maps classes of A into classes of B
    // consistently; fills `f`/`clsmap` as a side effect when complete
    auto check = [&](bool full, Perm* out) -> bool {
        std::size_t j = images.size();
        std::vector<char> hit(gb.order(), 0);
        std::vector<int> clsmap(a.rank(), -1);
        bool ok = true;
        std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int x, int fx) {
            if (!ok) return;
            if (i == j) {
                if (hit[fx]) { ok = false; return; }
                hit[fx] = 1;
                int ca = a.class_of[x], cb = b.class_of[fx];
                if (clsmap[ca] < 0) {
                    if (a.classes[ca].size() != b.classes[cb].size()) { ok = false; return; }
                    clsmap[ca] = cb;
                } else if (clsmap[ca] != cb) {
                    ok = false;
                    return;
                }
                if (out) (*out)[x] = fx;
                return;
            }
            int cur = 0, fcur = 0;
            for (int c = 0; c < ga.factors()[i]; ++c) {
                rec(i + 1, ga.add(x, cur), gb.add(fx, fcur));
                if (!ok) return;
                cur = ga.add(cur, gens[i]);
                fcur = gb.add(fcur, images[i]);
            }
        };
        rec(0, 0, 0);
        if (ok && full) {
            // full assignment must cover everything (bijection)
            for (char h : hit)
                if (!h) return false;
        }
        return ok;
    };

    std::function<void()> dfs = [&]() {
        std::size_t j = images.size();
        if (j == gens.size()) {
            Perm f(ga.order(), -1);
            if (check(true, &f)) found.push_back(std::move(f));
            return;
        }
        int d = ga.factors()[j];
        for (int v = 0; v < gb.order(); ++v) {
            if (gb.scale(d, v) != 0) continue;
            images.push_back(v);
            if (check(false, nullptr)) dfs();
            images.pop_back();
        }
    };
    dfs();
    return found;
}

/// The common value |X ∩ Hx| over x in X (constant for any A-group H).
inline int coset_count_profile(const SRing& a, const Subgroup& h, const std::vector<int>& X) {
    if (!is_a_group(a, h)) throw domain_error("coset_count_profile: H is not an A-group");
    const AbelianGroup& g = a.group;
    std::vector<char> in(g.order(), 0);
    for (int x : X) in[x] = 1;
    int common = -1;
    for (int x : X) {
        int c = 0;
        for (int m : h.members)
            if (in[g.add(m, x)]) ++c;
        if (common < 0) common = c;
        else if (common != c)
            throw internal_error("coset_count_profile: |X ∩ Hx| is not constant on X");
    }
    return common;
}

/// A wreath decomposition of A: an A-section S = U/L with L inside rad(X)
/// for every class X not contained in U.
struct WreathDecomposition {
    Section section;
    bool proper = false; // L nontrivial and U proper
};

inline std::vector<WreathDecomposition> wreath_decompositions(const SRing& a) {
    const AbelianGroup& g = a.group;
    std::vector<Subgroup> groups = a_subgroups(a);
    // radical of every class, as membership bitmaps
    std::vector<std::vector<char>> rad_in;
    for (const auto& X : a.classes) {
        Subgroup r = radical(g, X);
        std::vector<char> in(g.order(), 0);
        for (int m : r.members) in[m] = 1;
        rad_in.push_back(std::move(in));
    }
    std::vector<WreathDecomposition> out;
    for (const auto& u : groups)
        for (const auto& l : groups) {
            if (!u.contains_all(l)) continue;
            bool ok = true;
            for (int i = 0; i < a.rank() && ok; ++i) {
                if (u.contains(a.classes[i].front()) &&
                    std::includes(u.members.begin(), u.members.end(),
                                  a.classes[i].begin(), a.classes[i].end()))
                    continue;
                for (int m : l.members)
                    if (!rad_in[i][m]) { ok = false; break; }
            }
            if (!ok) continue;
            WreathDecomposition w;
            w.section = make_section(g, u, l);
            w.proper = l.order() > 1 && u.order() < g.order();
            out.push_back(std::move(w));
        }
    return out;
}

} // namespace schur
