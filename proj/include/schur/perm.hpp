#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "schur/errors.hpp"
#include "schur/group.hpp"

namespace schur {

/// A permutation of 0..n-1 stored as its image vector; x^f = f[x].
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool is_identity(const Perm& p) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if (p[i] != i) return false;
    return true;
}

inline bool is_bijection(const Perm& p) {
    std::vector<char> hit(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || hit[v]) return false;
        hit[v] = 1;
    }
    return true;
}

/// compose(f,g) applies f first: x -> g[f[x]].
inline Perm compose(const Perm& f, const Perm& g) {
    Perm r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
    return r;
}

inline Perm inverse(const Perm& f) {
    Perm r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[f[i]] = static_cast<int>(i);
    return r;
}

using u128 = unsigned __int128;

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) { s.push_back(static_cast<char>('0' + static_cast<int>(v % 10))); v /= 10; }
    std::reverse(s.begin(), s.end());
    return s;
}

/**
 * A permutation group given by generators, with a stabilizer chain (base and
 * strong generating set) for order, membership and stabilizer queries.
 * The chain is built on construction; base points are taken from `base_hint`
 * first, then ascending.
 */
class PermGroup {
public:
    PermGroup() : n_(0) {}

    explicit PermGroup(int n, std::vector<Perm> gens = {}, std::vector<int> base_hint = {})
        : n_(n), base_hint_(std::move(base_hint)) {
        for (auto& g : gens) {
            if (static_cast<int>(g.size()) != n || !is_bijection(g))
                throw domain_error("PermGroup: generator is not a permutation of the domain");
            if (!is_identity(g)) gens_.push_back(std::move(g));
        }
        build_chain();
    }

    int degree() const { return n_; }
    const std::vector<Perm>& generators() const { return gens_; }

    u128 order() const {
        u128 o = 1;
        for (const auto& lv : chain_) o *= static_cast<u128>(lv.orbit.size());
        return o;
    }

    bool contains(const Perm& p) const {
        if (static_cast<int>(p.size()) != n_) return false;
        Perm g = p;
        for (const auto& lv : chain_) {
            int img = g[lv.base];
            if (lv.where[img] < 0) return false;
            g = compose(g, inverse(lv.transversal[lv.where[img]]));
        }
        return is_identity(g);
    }

    /// Orbit partition of the domain under the generators.
    std::vector<std::vector<int>> orbits() const {
        std::vector<int> comp(n_, -1);
        std::vector<std::vector<int>> out;
        for (int s = 0; s < n_; ++s) {
            if (comp[s] >= 0) continue;
            int id = static_cast<int>(out.size());
            out.push_back({});
            std::vector<int> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                out[id].push_back(x);
                for (const auto& g : gens_) {
                    if (comp[g[x]] < 0) { comp[g[x]] = id; stack.push_back(g[x]); }
                }
            }
            std::sort(out[id].begin(), out[id].end());
        }
        return out;
    }

    std::vector<int> orbit_of(int p) const {
        std::vector<char> in(n_, 0);
        std::vector<int> orb{p}, stack{p};
        in[p] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& g : gens_)
                if (!in[g[x]]) { in[g[x]] = 1; orb.push_back(g[x]); stack.push_back(g[x]); }
        }
        std::sort(orb.begin(), orb.end());
        return orb;
    }

    /// Stabilizer of a point, via a chain whose first base point is p.
    PermGroup point_stabilizer(int p) const {
        if (p < 0 || p >= n_) throw domain_error("point outside domain");
        const PermGroup* src = this;
        PermGroup rebuilt;
        if (chain_.empty() || chain_[0].base != p) {
            rebuilt = PermGroup(n_, gens_, {p});
            src = &rebuilt;
        }
        if (src->chain_.empty() || src->chain_[0].base != p) {
            // group does not move p at all; the whole group stabilizes it
            return PermGroup(n_, src->gens_);
        }
        std::vector<Perm> sg;
        std::set<Perm> seen;
        for (std::size_t i = 1; i < src->chain_.size(); ++i)
            for (const auto& g : src->chain_[i].gens)
                if (seen.insert(g).second) sg.push_back(g);
        return PermGroup(n_, sg);
    }

    /// All elements, failing if the group is larger than `limit`.
    std::vector<Perm> elements(std::size_t limit = 1000000) const {
        if (order() > static_cast<u128>(limit))
            throw resource_error("PermGroup::elements: group too large (" +
                                 u128_to_string(order()) + " > " + std::to_string(limit) + ")");
        std::vector<Perm> out{identity_perm(n_)};
        for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
            std::vector<Perm> next;
            next.reserve(out.size() * it->transversal.size());
            for (const auto& t : it->transversal)
                for (const auto& e : out) next.push_back(compose(e, t));
            out = std::move(next);
        }
        return out;
    }

private:
    struct Level {
        int base = -1;
        std::vector<Perm> gens;        // strong generators at this level
        std::vector<int> orbit;        // in discovery order
        std::vector<int> where;        // point -> index into transversal, or -1
        std::vector<Perm> transversal; // u with base^u = orbit point
    };

    int pick_base_point(const Perm& g, std::size_t level) const {
        for (int b : base_hint_) {
            bool used = false;
            for (std::size_t i = 0; i < level; ++i)
                if (chain_[i].base == b) used = true;
            if (!used && g[b] != b) return b;
        }
        // hinted points that g fixes but that are still unused come first too,
        // so that point_stabilizer chains start where requested
        for (int b : base_hint_) {
            bool used = false;
            for (std::size_t i = 0; i < level; ++i)
                if (chain_[i].base == b) used = true;
            if (!used) return b;
        }
        for (int x = 0; x < n_; ++x)
            if (g[x] != x) return x;
        return -1;
    }

    void compute_orbit(Level& lv) const {
        lv.orbit.clear();
        lv.where.assign(n_, -1);
        lv.transversal.clear();
        lv.orbit.push_back(lv.base);
        lv.where[lv.base] = 0;
        lv.transversal.push_back(identity_perm(n_));
        for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
            int p = lv.orbit[i];
            for (const auto& g : lv.gens) {
                int q = g[p];
                if (lv.where[q] < 0) {
                    lv.where[q] = static_cast<int>(lv.orbit.size());
                    lv.orbit.push_back(q);
                    lv.transversal.push_back(compose(lv.transversal[i], g));
                }
            }
        }
    }

    // Sift g through levels starting at `from`; returns residue and the level
    // where sifting stopped.
    std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const {
        for (std::size_t i = from; i < chain_.size(); ++i) {
            int img = g[chain_[i].base];
            if (chain_[i].where[img] < 0) return {g, i};
            g = compose(g, inverse(chain_[i].transversal[chain_[i].where[img]]));
        }
        return {g, chain_.size()};
    }

    // A residue that stopped sifting at `at` fixes the bases of all earlier
    // levels, so it is a strong generator for every level up to `at`.
    void insert_strong_gen(const Perm& g, std::size_t at) {
        if (at == chain_.size()) {
            Level lv;
            lv.base = pick_base_point(g, at);
            chain_.push_back(lv);
        }
        for (std::size_t j = 0; j <= at; ++j) {
            chain_[j].gens.push_back(g);
            compute_orbit(chain_[j]);
        }
    }

    // Verify level i: every Schreier generator of its orbit must sift to the
    // identity through deeper levels.  Returns the residue's level on
    // failure (after inserting it), or SIZE_MAX when the level is clean.
    std::size_t verify_level(std::size_t i) {
        Level& lv = chain_[i];
        for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
            for (const auto& s : lv.gens) {
                int p = lv.orbit[oi];
                Perm schreier = compose(compose(lv.transversal[oi], s),
                                        inverse(lv.transversal[lv.where[s[p]]]));
                if (is_identity(schreier)) continue;
                auto [residue, at] = sift(std::move(schreier), i + 1);
                if (!is_identity(residue)) {
                    insert_strong_gen(residue, at);
                    return at;
                }
            }
        }
        return static_cast<std::size_t>(-1);
    }

    void build_chain() {
        chain_.clear();
        for (const auto& g : gens_) {
            auto [residue, at] = sift(g, 0);
            if (!is_identity(residue)) insert_strong_gen(residue, at);
        }
        // verify from the deepest level upward; a failed level restarts
        // verification at the residue's level
        std::size_t i = chain_.size();
        while (i-- > 0) {
            std::size_t bad = verify_level(i);
            if (bad != static_cast<std::size_t>(-1)) i = bad + 1;
        }
    }

    int n_;
    std::vector<Perm> gens_;
    std::vector<int> base_hint_;
    std::vector<Level> chain_;
};

inline bool is_subgroup_of(const PermGroup& h, const PermGroup& g) {
    if (h.degree() != g.degree()) throw domain_error("domain mismatch");
    for (const auto& x : h.generators())
        if (!g.contains(x)) return false;
    return true;
}

inline bool is_normal_in(const PermGroup& n, const PermGroup& g) {
    if (!is_subgroup_of(n, g)) return false;
    for (const auto& x : n.generators())
        for (const auto& c : g.generators()) {
            Perm conj = compose(compose(inverse(c), x), c);
            if (!n.contains(conj)) return false;
        }
    return true;
}

/// Orbit coloring of ordered pairs under the coordinatewise action;
/// colors are canonicalized by first appearance in row-major order.
inline std::vector<int> orbitals(const PermGroup& g, int domain_bound = 512) {
    int n = g.degree();
    if (n > domain_bound) throw resource_error("orbitals: domain bound exceeded");
    std::vector<int> color(static_cast<std::size_t>(n) * n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::size_t id = static_cast<std::size_t>(x) * n + y;
            if (color[id] >= 0) continue;
            int c = next++;
            color[id] = c;
            stack.assign(1, static_cast<int>(id));
            while (!stack.empty()) {
                int pid = stack.back();
                stack.pop_back();
                int px = pid / n, py = pid % n;
                for (const auto& f : g.generators()) {
                    int qid = f[px] * n + f[py];
                    if (color[qid] < 0) { color[qid] = c; stack.push_back(qid); }
                }
            }
        }
    return color;
}

inline bool two_equivalent(const PermGroup& a, const PermGroup& b, int domain_bound = 512) {
    if (a.degree() != b.degree()) throw domain_error("two_equivalent: domain mismatch");
    return orbitals(a, domain_bound) == orbitals(b, domain_bound);
}

/**
 * The action induced on a block system: `block` maps each domain point to a
 * block id in 0..m-1, or -1 for points outside the supported set.  Keeps
 * exactly the elements that preserve the supported set and map blocks to
 * blocks, and projects them.  Enumerates the whole group, so it is guarded
 * by `limit`.
 */
inline PermGroup project_group(const PermGroup& gamma, const std::vector<int>& block, int m,
                               std::size_t limit = 1000000) {
    if (static_cast<int>(block.size()) != gamma.degree())
        throw domain_error("project_group: block vector does not match the domain");
    std::set<Perm> induced;
    for (const auto& f : gamma.elements(limit)) {
        Perm q(m, -1);
        bool ok = true;
        for (int x = 0; x < gamma.degree() && ok; ++x) {
            if (block[x] < 0) {
                if (block[f[x]] >= 0) ok = false;
                continue;
            }
            if (block[f[x]] < 0) { ok = false; continue; }
            if (q[block[x]] < 0) q[block[x]] = block[f[x]];
            else if (q[block[x]] != block[f[x]]) ok = false;
        }
        if (ok && is_bijection(q)) induced.insert(std::move(q));
    }
    return PermGroup(m, std::vector<Perm>(induced.begin(), induced.end()));
}

// ---------------------------------------------------------------------------
// Permutation representations attached to an abelian group
// ---------------------------------------------------------------------------

/// Right translation x -> x + a.
inline Perm translation(const AbelianGroup& g, int a) {
    Perm p(g.order());
    for (int x = 0; x < g.order(); ++x) p[x] = g.add(x, a);
    return p;
}

/// The regular representation G_right.
inline PermGroup right_regular(const AbelianGroup& g) {
    std::vector<Perm> gens;
    for (int e : g.factor_generators()) gens.push_back(translation(g, e));
    return PermGroup(g.order(), gens);
}

/// x -> m*x; requires gcd(m, |G|) = 1.
inline Perm power_map(const AbelianGroup& g, long long m) {
    long long mm = m % g.order();
    if (mm < 0) mm += g.order();
    if (std::gcd(mm == 0 ? static_cast<long long>(g.order()) : mm,
                 static_cast<long long>(g.order())) != 1)
        throw domain_error("power_map: exponent not coprime to group order");
    Perm p(g.order());
    for (int x = 0; x < g.order(); ++x) p[x] = g.scale(mm, x);
    return p;
}

inline bool is_group_automorphism(const AbelianGroup& g, const Perm& f) {
    if (static_cast<int>(f.size()) != g.order() || f[0] != 0) return false;
    for (int e : g.factor_generators())
        for (int x = 0; x < g.order(); ++x)
            if (f[g.add(x, e)] != g.add(f[x], f[e])) return false;
    return true;
}

namespace detail {

// Backtracking over generator images; emits one automorphism per coset of the
// successive "fix e_1..e_j" stabilizers, which together generate aut(G).
class AutOfGroupSearch {
public:
    explicit AutOfGroupSearch(const AbelianGroup& g) : g_(g), gens_(g.factor_generators()) {}

    std::vector<Perm> run() {
        int k = static_cast<int>(gens_.size());
        std::vector<Perm> found;
        for (int level = k - 1; level >= 0; --level) {
            std::vector<int> images(gens_.begin(), gens_.begin() + level); // identity prefix
            // orbit of gens_[level] under already-found automorphisms
            std::vector<char> seen(g_.order(), 0);
            auto grow_orbit = [&](const std::vector<Perm>& fs) {
                std::vector<int> stack;
                if (!seen[gens_[level]]) { seen[gens_[level]] = 1; stack.push_back(gens_[level]); }
                for (int x = 0; x < g_.order(); ++x)
                    if (seen[x]) stack.push_back(x);
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (const auto& f : fs)
                        if (!seen[f[x]]) { seen[f[x]] = 1; stack.push_back(f[x]); }
                }
            };
            grow_orbit(found);
            int d = g_.factors()[level];
            for (int v = 0; v < g_.order(); ++v) {
                if (v == gens_[level] || seen[v]) continue;
                if (g_.scale(d, v) != 0) continue;
                std::vector<int> trial = images;
                trial.push_back(v);
                if (!partial_ok(trial)) continue;
                Perm f;
                if (complete(trial, f)) {
                    found.push_back(f);
                    grow_orbit({f});
                }
            }
        }
        return found;
    }

private:
    bool partial_ok(const std::vector<int>& images) const {
        // the partial hom on <e_1..e_j> must be injective
        std::size_t j = images.size();
        std::vector<char> hit(g_.order(), 0);
        long long count = 0;
        std::vector<int> idx(j, 0);
        // iterate the subgroup generated by the first j factor generators
        std::function<bool(std::size_t, int, int)> rec = [&](std::size_t i, int x, int fx) -> bool {
            if (i == j) {
                if (hit[fx]) return false;
                hit[fx] = 1;
                ++count;
                return true;
            }
            int cur = 0, fcur = 0;
            for (int a = 0; a < g_.factors()[i]; ++a) {
                if (!rec(i + 1, g_.add(x, cur), g_.add(fx, fcur))) return false;
                cur = g_.add(cur, gens_[i]);
                fcur = g_.add(fcur, images[i]);
            }
            return true;
        };
        return rec(0, 0, 0);
    }

    bool complete(std::vector<int>& images, Perm& out) const {
        std::size_t j = images.size();
        if (j == gens_.size()) {
            out = materialize(images);
            return is_bijection(out);
        }
        int d = g_.factors()[j];
        for (int v = 0; v < g_.order(); ++v) {
            if (g_.scale(d, v) != 0) continue;
            images.push_back(v);
            if (partial_ok(images) && complete(images, out)) return true;
            images.pop_back();
        }
        return false;
    }

    Perm materialize(const std::vector<int>& images) const {
        Perm f(g_.order(), 0);
        for (int x = 0; x < g_.order(); ++x) {
            auto t = g_.decode(x);
            int fx = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
                fx = g_.add(fx, g_.scale(t[i], images[i]));
            f[x] = fx;
        }
        return f;
    }

    const AbelianGroup& g_;
    std::vector<int> gens_;
};

} // namespace detail

/// Generators of aut(G) as permutations of element indices.
inline PermGroup automorphism_group(const AbelianGroup& g, int order_bound = 256) {
    if (g.order() > order_bound) throw resource_error("automorphism_group: order bound exceeded");
    detail::AutOfGroupSearch search(g);
    return PermGroup(g.order(), search.run());
}

/// hol(G) = <G_right, aut(G)>.
inline PermGroup holomorph(const AbelianGroup& g, int order_bound = 256) {
    PermGroup a = automorphism_group(g, order_bound);
    std::vector<Perm> gens = a.generators();
    for (int e : g.factor_generators()) gens.push_back(translation(g, e));
    return PermGroup(g.order(), gens);
}

} // namespace schur
