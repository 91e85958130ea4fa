#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "schur/build.hpp"
#include "schur/classify.hpp"
#include "schur/counterexample.hpp"
#include "schur/errors.hpp"
#include "schur/group.hpp"
#include "schur/perm.hpp"
#include "schur/schurity.hpp"
#include "schur/section.hpp"
#include "schur/sring.hpp"

namespace schur {

using json = nlohmann::json;

// ---- groups, subgroups, sections ----

inline json to_json(const AbelianGroup& g) { return json{{"factors", g.factors()}}; }

inline AbelianGroup group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("factors"))
        throw domain_error("group JSON needs a \"factors\" array");
    return AbelianGroup(j.at("factors").get<std::vector<int>>());
}

inline json to_json(const Subgroup& s) { return json{{"members", s.members}}; }

inline Subgroup subgroup_from_json(const AbelianGroup& g, const json& j) {
    std::vector<int> members;
    if (j.is_array())
        members = j.get<std::vector<int>>();
    else if (j.is_object() && j.contains("members"))
        members = j.at("members").get<std::vector<int>>();
    else
        throw domain_error("subgroup JSON needs a \"members\" array");
    Subgroup s = subgroup_generated(g, members);
    if (s.members != [&] {
            std::sort(members.begin(), members.end());
            members.erase(std::unique(members.begin(), members.end()), members.end());
            return members;
        }())
        throw domain_error("subgroup JSON: member list is not closed under the group operation");
    return s;
}

inline json section_to_json(const Section& s) {
    return json{{"U", to_json(s.U)}, {"L", to_json(s.L)}};
}

// ---- permutations ----

inline json to_json(const Perm& p) { return json{{"images", p}}; }

inline Perm perm_from_json(const json& j) {
    Perm p;
    if (j.is_array())
        p = j.get<Perm>();
    else if (j.is_object() && j.contains("images"))
        p = j.at("images").get<Perm>();
    else
        throw domain_error("permutation JSON needs an \"images\" array");
    if (!is_bijection(p)) throw domain_error("permutation JSON: not a bijection");
    return p;
}

inline json to_json(const PermGroup& g) {
    json gens = json::array();
    for (const auto& p : g.generators()) gens.push_back(p);
    return json{{"degree", g.degree()}, {"generators", gens}, {"order", u128_to_string(g.order())}};
}

inline PermGroup permgroup_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generators"))
        throw domain_error("permutation group JSON needs a \"generators\" array");
    std::vector<Perm> gens;
    for (const auto& pj : j.at("generators")) gens.push_back(perm_from_json(pj));
    int n = j.contains("degree") ? j.at("degree").get<int>()
                                 : (gens.empty() ? 0 : static_cast<int>(gens[0].size()));
    return PermGroup(n, gens);
}

// ---- S-rings and violations ----

inline json to_json(const SRing& a) {
    return json{{"group", to_json(a.group)}, {"classes", a.classes}};
}

/// Reads and re-verifies; a partition that is not an S-ring is rejected.
inline SRing sring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("classes"))
        throw domain_error("S-ring JSON needs \"group\" and \"classes\"");
    AbelianGroup g = group_from_json(j.at("group"));
    auto cls = j.at("classes").get<std::vector<std::vector<int>>>();
    auto v = verify_sring(g, cls);
    if (std::holds_alternative<Violation>(v))
        throw domain_error("S-ring JSON: " + std::get<Violation>(v).note);
    return std::get<SRing>(v);
}

/// Reads without the S-ring check (for `check`, which reports violations).
inline std::pair<AbelianGroup, std::vector<std::vector<int>>> partition_from_json(const json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("classes"))
        throw domain_error("partition JSON needs \"group\" and \"classes\"");
    return {group_from_json(j.at("group")), j.at("classes").get<std::vector<std::vector<int>>>()};
}

inline json to_json(const Violation& v) {
    json w{{"note", v.note}};
    if (!v.X.empty()) w["X"] = v.X;
    if (!v.Y.empty()) w["Y"] = v.Y;
    if (v.z >= 0) w["z"] = v.z;
    if (v.z2 >= 0) { w["z2"] = v.z2; w["count_z"] = v.count_z; w["count_z2"] = v.count_z2; }
    return json{{"axiom", v.axiom}, {"witness", w}};
}

// ---- certificates ----

inline json to_json(const Certificate& c) {
    json j{{"kind", c.kind}};
    if (!c.stabilizer_generators.empty()) {
        json gens = json::array();
        for (const auto& p : c.stabilizer_generators) gens.push_back(p);
        j["stabilizer_generators"] = gens;
    }
    if (!c.witness_orbit.empty()) j["witness_orbit"] = c.witness_orbit;
    if (!c.witness_class.empty()) j["witness_class"] = c.witness_class;
    if (c.witness_x >= 0) { j["witness_x"] = c.witness_x; j["witness_y"] = c.witness_y; }
    if (!c.conjugator.empty()) j["conjugator"] = c.conjugator;
    if (!c.conjugate.empty()) j["conjugate"] = c.conjugate;
    if (c.translation_by >= 0) j["translation_by"] = c.translation_by;
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.kind = j.at("kind").get<std::string>();
    if (j.contains("stabilizer_generators"))
        for (const auto& pj : j.at("stabilizer_generators"))
            c.stabilizer_generators.push_back(perm_from_json(pj));
    if (j.contains("witness_orbit")) c.witness_orbit = j.at("witness_orbit").get<std::vector<int>>();
    if (j.contains("witness_class")) c.witness_class = j.at("witness_class").get<std::vector<int>>();
    if (j.contains("witness_x")) c.witness_x = j.at("witness_x").get<int>();
    if (j.contains("witness_y")) c.witness_y = j.at("witness_y").get<int>();
    if (j.contains("conjugator")) c.conjugator = perm_from_json(j.at("conjugator"));
    if (j.contains("conjugate")) c.conjugate = perm_from_json(j.at("conjugate"));
    if (j.contains("translation_by")) c.translation_by = j.at("translation_by").get<int>();
    return c;
}

// ---- classification verdicts ----

inline json to_json(const SchurVerdict& v) {
    json j{{"status", v.status}, {"rule", v.rule}, {"detail", v.detail}};
    if (!v.split_g1.empty()) j["split"] = json{{"G1", v.split_g1}, {"G2", v.split_g2}};
    if (!v.section_U.empty())
        j["section"] = json{{"U", v.section_U},
                            {"L", v.section_L},
                            {"quotient_factors", v.section_quotient_factors},
                            {"rule", v.section_rule}};
    return j;
}

// ---- counterexample witnesses ----

inline json to_json(const Theorem4Witness& w) {
    return json{{"g1_input", to_json(w.g1_input)},
                {"g2_input", to_json(w.g2_input)},
                {"g1_reduced", to_json(w.g1_reduced)},
                {"g2_reduced", to_json(w.g2_reduced)},
                {"g1", to_json(w.g1)},
                {"g2", to_json(w.g2)},
                {"A1", to_json(w.a1)},
                {"B1", to_json(w.b1)},
                {"A2", to_json(w.a2)},
                {"B2", to_json(w.b2)},
                {"group", to_json(w.group)},
                {"U", to_json(w.U)},
                {"L", to_json(w.L)},
                {"ring1", to_json(w.ring1)},
                {"ring2", to_json(w.ring2)},
                {"ring3", to_json(w.ring3)},
                {"ring4", to_json(w.ring4)},
                {"ring12", to_json(w.ring12)},
                {"ring34", to_json(w.ring34)},
                {"ring", to_json(w.ring)}};
}

// ---- construction DSL ----
//
// A construction is a JSON tree; each node has an "op":
//   {"op":"sring", "group":{...}, "classes":[[...]]}     literal (verified)
//   {"op":"full", "group":{...}}                         Z G, all singletons
//   {"op":"rank2", "group":{...}}                        {1} and G \ {1}
//   {"op":"cyclotomic", "group":{...}, "generators":[...]}
//   {"op":"orbit", "group":{...}, "generators":[...]}    overgroup of G_right
//   {"op":"tensor", "A1":..., "A2":...}
//   {"op":"wreath", "group":{...}, "U":[...], "L":[...], "A1":..., "A2":...}
//       A1 over the canonical group of U, A2 over the canonical group of G/L
inline SRing eval_construction(const json& j) {
    if (!j.is_object() || !j.contains("op"))
        throw domain_error("construction node needs an \"op\" field");
    std::string op = j.at("op").get<std::string>();
    if (op == "sring") return sring_from_json(j);
    if (op == "full") {
        AbelianGroup g = group_from_json(j.at("group"));
        std::vector<std::vector<int>> cls;
        for (int x = 0; x < g.order(); ++x) cls.push_back({x});
        return expect_sring(verify_sring(g, cls), "full");
    }
    if (op == "rank2") {
        AbelianGroup g = group_from_json(j.at("group"));
        std::vector<std::vector<int>> cls{{0}};
        if (g.order() > 1) {
            std::vector<int> rest;
            for (int x = 1; x < g.order(); ++x) rest.push_back(x);
            cls.push_back(rest);
        }
        return expect_sring(verify_sring(g, cls), "rank2");
    }
    if (op == "cyclotomic" || op == "orbit") {
        AbelianGroup g = group_from_json(j.at("group"));
        std::vector<Perm> gens;
        if (j.contains("generators"))
            for (const auto& pj : j.at("generators")) gens.push_back(perm_from_json(pj));
        if (op == "cyclotomic") return cyclotomic(PermGroup(g.order(), gens), g);
        for (int e : g.factor_generators()) gens.push_back(translation(g, e));
        return orbit_sring(PermGroup(g.order(), gens), g);
    }
    if (op == "tensor")
        return tensor(eval_construction(j.at("A1")), eval_construction(j.at("A2")));
    if (op == "wreath") {
        AbelianGroup g = group_from_json(j.at("group"));
        Subgroup U = subgroup_from_json(g, j.at("U"));
        Subgroup L = subgroup_from_json(g, j.at("L"));
        return wreath(g, U, L, eval_construction(j.at("A1")), eval_construction(j.at("A2")));
    }
    throw usage_error("unknown construction op \"" + op + "\"");
}

} // namespace schur
