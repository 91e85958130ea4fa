#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "schur/group.hpp"
#include "schur/perm.hpp"

using namespace schur;

namespace {

u128 factorial(int n) {
    u128 r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Perm cycle(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
    return p;
}

Perm transposition(int n, int a, int b) {
    Perm p = identity_perm(n);
    std::swap(p[a], p[b]);
    return p;
}

} // namespace

TEST_CASE("permutation basics") {
    Perm f{1, 2, 0, 3}, g{0, 1, 3, 2};
    REQUIRE(compose(f, g)[0] == 1);
    REQUIRE(compose(f, g)[2] == 0);
    REQUIRE(compose(f, inverse(f)) == identity_perm(4));
    REQUIRE(compose(inverse(f), f) == identity_perm(4));
    REQUIRE(is_bijection(f));
    REQUIRE_FALSE(is_bijection({0, 0, 1}));
    REQUIRE(is_identity(identity_perm(7)));
}

TEST_CASE("symmetric and alternating group orders") {
    for (int n : {3, 4, 5, 6, 8}) {
        PermGroup sn(n, {cycle(n), transposition(n, 0, 1)});
        REQUIRE(sn.order() == factorial(n));
    }
    // A4 from two 3-cycles
    Perm a{1, 2, 0, 3}, b{0, 2, 3, 1};
    PermGroup a4(4, {a, b});
    REQUIRE(a4.order() == 12);
    REQUIRE_FALSE(a4.contains(transposition(4, 0, 1)));
    REQUIRE(a4.contains(Perm{1, 0, 3, 2}));
}

TEST_CASE("dihedral group of the hexagon") {
    int n = 6;
    Perm r = cycle(n), s(n);
    for (int i = 0; i < n; ++i) s[i] = (n - i) % n;
    PermGroup d6(n, {r, s});
    REQUIRE(d6.order() == 12);
    auto elems = d6.elements();
    REQUIRE(elems.size() == 12);
    std::set<Perm> uniq(elems.begin(), elems.end());
    REQUIRE(uniq.size() == 12);
    for (const auto& e : elems) REQUIRE(d6.contains(e));
}

TEST_CASE("stabilizer chains and point stabilizers") {
    int n = 5;
    PermGroup s5(n, {cycle(n), transposition(n, 0, 1)});
    PermGroup stab = s5.point_stabilizer(2);
    REQUIRE(stab.order() == 24);
    for (const auto& e : stab.elements()) REQUIRE(e[2] == 2);
    // iterated stabilizer
    REQUIRE(stab.point_stabilizer(0).order() == 6);
    // stabilizer in an intransitive group
    PermGroup h(4, {transposition(4, 0, 1)});
    REQUIRE(h.point_stabilizer(3).order() == 2);
    REQUIRE(h.point_stabilizer(0).order() == 1);
}

TEST_CASE("orbits") {
    PermGroup h(6, {transposition(6, 0, 1), Perm{0, 1, 3, 4, 2, 5}});
    auto orb = h.orbits();
    REQUIRE(orb == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}, {5}});
    REQUIRE(h.orbit_of(3) == std::vector<int>{2, 3, 4});
}

TEST_CASE("subgroup and normality predicates") {
    int n = 4;
    PermGroup s4(n, {cycle(n), transposition(n, 0, 1)});
    PermGroup a4(n, {Perm{1, 2, 0, 3}, Perm{0, 2, 3, 1}});
    PermGroup v4(n, {Perm{1, 0, 3, 2}, Perm{2, 3, 0, 1}});
    REQUIRE(is_subgroup_of(a4, s4));
    REQUIRE(is_subgroup_of(v4, a4));
    REQUIRE_FALSE(is_subgroup_of(s4, a4));
    REQUIRE(is_normal_in(a4, s4));
    REQUIRE(is_normal_in(v4, s4));
    PermGroup c2(n, {transposition(n, 0, 1)});
    REQUIRE_FALSE(is_normal_in(c2, s4));
}

TEST_CASE("regular representation and translations") {
    AbelianGroup g({3, 4});
    PermGroup reg = right_regular(g);
    REQUIRE(reg.order() == 12);
    REQUIRE(reg.orbits().size() == 1);
    for (int a = 0; a < g.order(); ++a) {
        Perm t = translation(g, a);
        REQUIRE(reg.contains(t));
        REQUIRE(t[0] == a);
    }
    // a regular abelian group has n orbitals
    auto col = orbitals(reg);
    std::set<int> colors(col.begin(), col.end());
    REQUIRE(colors.size() == 12);
}

TEST_CASE("power maps and automorphisms") {
    AbelianGroup g({15});
    Perm p2 = power_map(g, 2);
    REQUIRE(is_group_automorphism(g, p2));
    REQUIRE_THROWS_AS(power_map(g, 3), domain_error); // gcd(3,15) != 1
    REQUIRE_FALSE(is_group_automorphism(g, translation(g, 1)));
}

TEST_CASE("automorphism group orders") {
    // |aut| oracles: phi(n) for cyclic, GL(k,p) for elementary abelian
    REQUIRE(automorphism_group(AbelianGroup({12})).order() == 4);
    REQUIRE(automorphism_group(AbelianGroup({15})).order() == 8);
    REQUIRE(automorphism_group(AbelianGroup({2, 2})).order() == 6);
    REQUIRE(automorphism_group(AbelianGroup({2, 2, 2})).order() == 168);
    REQUIRE(automorphism_group(AbelianGroup({3, 3})).order() == 48);
    REQUIRE(automorphism_group(AbelianGroup({4, 2})).order() == 8);
    REQUIRE(automorphism_group(AbelianGroup({9, 3})).order() == 108);
    SECTION("every generator is an automorphism fixing 0") {
        AbelianGroup g({4, 2});
        PermGroup aut = automorphism_group(g);
        for (const auto& f : aut.generators()) {
            REQUIRE(f[0] == 0);
            REQUIRE(is_group_automorphism(g, f));
        }
    }
}

TEST_CASE("holomorph") {
    AbelianGroup g({8});
    PermGroup hol = holomorph(g);
    REQUIRE(hol.order() == 32); // 8 * phi(8)
    REQUIRE(is_subgroup_of(right_regular(g), hol));
    REQUIRE(is_normal_in(right_regular(g), hol));
}

TEST_CASE("two-equivalence") {
    AbelianGroup g({5});
    PermGroup reg = right_regular(g);
    REQUIRE(two_equivalent(reg, reg));
    REQUIRE_FALSE(two_equivalent(reg, holomorph(g)));
    // S5 and A5 are 2-equivalent (both 2-transitive)
    PermGroup s5(5, {cycle(5), transposition(5, 0, 1)});
    PermGroup a5(5, {cycle(5), Perm{1, 2, 0, 3, 4}});
    REQUIRE(a5.order() == 60);
    REQUIRE(two_equivalent(s5, a5));
}

TEST_CASE("block projection") {
    // S3 acting on 6 points in two blocks of 3, diagonally
    Perm r{1, 2, 0, 4, 5, 3}, t{1, 0, 2, 4, 3, 5};
    PermGroup gamma(6, {r, t});
    std::vector<int> block{0, 1, 2, 0, 1, 2};
    PermGroup proj = project_group(gamma, block, 3);
    REQUIRE(proj.order() == 6);
}

TEST_CASE("elements limit guard") {
    PermGroup s8(8, {cycle(8), transposition(8, 0, 1)});
    REQUIRE_THROWS_AS(s8.elements(1000), resource_error);
}
