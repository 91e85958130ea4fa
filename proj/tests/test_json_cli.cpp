#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "schur/counterexample.hpp"
#include "schur/json_io.hpp"
#include "schur/schurity.hpp"

using namespace schur;

namespace {

SRing must(const AbelianGroup& g, const std::vector<std::vector<int>>& parts) {
    return expect_sring(verify_sring(g, parts), "test");
}

#ifdef SCHUR_CLI_PATH
const char* cli = SCHUR_CLI_PATH;

struct CliResult {
    int exit_code;
    std::string out;
};

// run the CLI with stdout captured; stderr passes through
CliResult run_cli(const std::string& args) {
    std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
    std::string cmd = std::string(cli) + " " + args + " > " + out_file;
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    std::remove(out_file.c_str());
    return r;
}

std::string write_temp(const json& j) {
    std::string path = std::string(std::tmpnam(nullptr)) + ".json";
    std::ofstream f(path);
    f << j.dump();
    return path;
}
#endif

} // namespace

TEST_CASE("JSON round-trips") {
    AbelianGroup g({2, 4});
    REQUIRE(group_from_json(to_json(g)) == g);
    Subgroup s = subgroup_generated(g, {g.encode({0, 2})});
    REQUIRE(subgroup_from_json(g, to_json(s)).members == s.members);
    Perm p = power_map(AbelianGroup({5}), 2);
    REQUIRE(perm_from_json(to_json(p)) == p);
    PermGroup pg = automorphism_group(g);
    PermGroup back = permgroup_from_json(to_json(pg));
    REQUIRE(back.order() == pg.order());
    SRing a = must(g, {{0}, {4}, {2, 6}, {1, 3, 5, 7}});
    REQUIRE(sring_from_json(to_json(a)) == a);
}

TEST_CASE("certificate JSON survives a round-trip and still verifies") {
    AbelianGroup g({8});
    SRing a = must(g, {{0}, {1, 7}, {2, 6}, {3, 5}, {4}});
    auto [ok, cert] = is_schurian(a);
    REQUIRE(ok);
    Certificate back = certificate_from_json(to_json(cert));
    REQUIRE(back.kind == cert.kind);
    REQUIRE(verify_certificate(a, back));
    auto [nrm, ncert] = is_normal(a);
    REQUIRE(verify_certificate(a, certificate_from_json(to_json(ncert))));
}

TEST_CASE("sring_from_json rejects invalid input") {
    json j{{"group", {{"factors", {5}}}}, {"classes", {{0}, {1, 2}, {3, 4}}}};
    REQUIRE_THROWS_AS(sring_from_json(j), domain_error); // S3 fails
    json j2{{"group", {{"factors", {5}}}}, {"classes", {{0}, {1, 2}}}};
    REQUIRE_THROWS_AS(sring_from_json(j2), domain_error); // not a partition
    json j3{{"group", {{"factors", {4}}}}, {"classes", {{0}, {1, 2, 5}}}};
    REQUIRE_THROWS_AS(sring_from_json(j3), domain_error); // out of range
}

TEST_CASE("construction DSL") {
    json zg{{"factors", {6}}};
    SECTION("full and rank2") {
        REQUIRE(eval_construction(json{{"op", "full"}, {"group", zg}}).rank() == 6);
        REQUIRE(eval_construction(json{{"op", "rank2"}, {"group", zg}}).rank() == 2);
    }
    SECTION("cyclotomic and orbit agree for the same generators") {
        AbelianGroup g({6});
        json gens = json::array({to_json(power_map(g, 5))});
        SRing c = eval_construction(json{{"op", "cyclotomic"}, {"group", zg}, {"generators", gens}});
        SRing o = eval_construction(json{{"op", "orbit"}, {"group", zg}, {"generators", gens}});
        REQUIRE(c == o);
        REQUIRE(c.rank() == 4);
    }
    SECTION("tensor") {
        json t{{"op", "tensor"},
               {"A1", {{"op", "rank2"}, {"group", {{"factors", {3}}}}}},
               {"A2", {{"op", "full"}, {"group", {{"factors", {2}}}}}}};
        SRing a = eval_construction(t);
        REQUIRE(a.group.factors() == std::vector<int>{3, 2});
        REQUIRE(a.rank() == 4);
    }
    SECTION("wreath") {
        json w{{"op", "wreath"},
               {"group", {{"factors", {4}}}},
               {"U", {{"members", {0, 2}}}},
               {"L", {{"members", {0, 2}}}},
               {"A1", {{"op", "full"}, {"group", {{"factors", {2}}}}}},
               {"A2", {{"op", "full"}, {"group", {{"factors", {2}}}}}}};
        SRing a = eval_construction(w);
        REQUIRE(a.classes == std::vector<std::vector<int>>{{0}, {1, 3}, {2}});
    }
    SECTION("unknown op") {
        REQUIRE_THROWS_AS(eval_construction(json{{"op", "nonsense"}}), usage_error);
        REQUIRE_THROWS_AS(eval_construction(json::array()), domain_error);
    }
}

TEST_CASE("witness serialization embeds re-checkable pieces") {
    Theorem4Witness w = build_theorem4(AbelianGroup({9}), AbelianGroup({9}));
    json j = to_json(w);
    SRing ring = sring_from_json(j.at("ring"));
    REQUIRE(ring == w.ring);
    REQUIRE(sring_from_json(j.at("ring1")) == w.ring1);
    REQUIRE(group_from_json(j.at("group")) == w.group);
    REQUIRE(subgroup_from_json(w.group, j.at("U")).members == w.U.members);
}

#ifdef SCHUR_CLI_PATH

TEST_CASE("cli: group description") {
    CliResult r = run_cli("group --factors 4,2");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["order"] == 8);
    REQUIRE(j["invariant_factors"] == json::array({2, 4}));
    CliResult subs = run_cli("group --factors 2,2 --subgroups");
    REQUIRE(json::parse(subs.out)["subgroups"].size() == 5);
}

TEST_CASE("cli: check accepts and rejects") {
    std::string good = write_temp(
        json{{"group", {{"factors", {8}}}}, {"classes", {{0}, {1, 7}, {2, 6}, {3, 5}, {4}}}});
    CliResult r = run_cli("check --in " + good);
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out)["ok"] == true);
    std::remove(good.c_str());

    std::string bad = write_temp(
        json{{"group", {{"factors", {5}}}}, {"classes", {{0}, {1, 2}, {3, 4}}}});
    CliResult rb = run_cli("check --in " + bad);
    REQUIRE(rb.exit_code == 0); // a violation report is a successful check
    json jb = json::parse(rb.out);
    REQUIRE(jb["ok"] == false);
    REQUIRE(jb["violation"]["axiom"] == "S3");
    std::remove(bad.c_str());
}

TEST_CASE("cli: closure and build") {
    std::string seeds =
        write_temp(json{{"group", {{"factors", {12}}}}, {"seeds", {{1}}}});
    CliResult r = run_cli("closure --in " + seeds);
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out)["classes"].size() == 12);
    std::remove(seeds.c_str());

    std::string tree = write_temp(json{{"op", "rank2"}, {"group", {{"factors", {6}}}}});
    CliResult rb = run_cli("build --in " + tree);
    REQUIRE(rb.exit_code == 0);
    REQUIRE(json::parse(rb.out)["classes"].size() == 2);
    std::remove(tree.c_str());
}

TEST_CASE("cli: schurian verdict with certificate round-trip") {
    std::string ring = write_temp(
        json{{"group", {{"factors", {8}}}}, {"classes", {{0}, {1, 7}, {2, 6}, {3, 5}, {4}}}});
    CliResult r = run_cli("schurian --in " + ring);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["schurian"] == true);
    std::string cert = write_temp(j["certificate"]);
    CliResult rv = run_cli("verify-certificate --in " + cert + " --sring " + ring);
    REQUIRE(rv.exit_code == 0);
    REQUIRE(json::parse(rv.out)["valid"] == true);
    // tamper with the certificate: drop the generators
    json broken = j["certificate"];
    broken["stabilizer_generators"] = json::array();
    std::string bad = write_temp(broken);
    CliResult rbad = run_cli("verify-certificate --in " + bad + " --sring " + ring);
    REQUIRE(rbad.exit_code == 1);
    REQUIRE(json::parse(rbad.out)["valid"] == false);
    std::remove(ring.c_str());
    std::remove(cert.c_str());
    std::remove(bad.c_str());
}

TEST_CASE("cli: aut order of the full scheme") {
    std::string ring = write_temp(
        json{{"group", {{"factors", {6}}}}, {"classes", {{0}, {1}, {2}, {3}, {4}, {5}}}});
    CliResult r = run_cli("aut --in " + ring);
    REQUIRE(r.exit_code == 0);
    REQUIRE(json::parse(r.out)["order"] == "6");
    std::remove(ring.c_str());
}

TEST_CASE("cli: enumerate emits one JSON object per line") {
    CliResult r = run_cli("enumerate --factors 8");
    REQUIRE(r.exit_code == 0);
    std::stringstream ss(r.out);
    std::string line;
    int count = 0;
    while (std::getline(ss, line)) {
        json j = json::parse(line);
        REQUIRE(j["group"]["factors"] == json::array({8}));
        ++count;
    }
    REQUIRE(count == 10);
    // the oracle path agrees
    CliResult ro = run_cli("enumerate --factors 8 --oracle");
    REQUIRE(ro.out == r.out);
}

TEST_CASE("cli: classify") {
    CliResult r = run_cli("classify --factors 9,9");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["status"] == "non_schur_by_paper");
    CliResult rc = run_cli("classify --range 70..73 --cyclic");
    json t = json::parse(rc.out);
    REQUIRE(t["cyclic_schur_orders"][2]["n"] == 72);
    REQUIRE(t["cyclic_schur_orders"][2]["schur"] == false);
}

TEST_CASE("cli: exit codes") {
    REQUIRE(run_cli("group --factors 1").exit_code == 1);    // domain error
    REQUIRE(run_cli("enumerate --factors 5,5").exit_code == 2);  // order bound
    REQUIRE(run_cli("nonsense").exit_code == 64);            // usage
    REQUIRE(run_cli("classify").exit_code == 64);            // missing selector
    REQUIRE(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: counterexample pipeline") {
    std::string out = std::string(std::tmpnam(nullptr)) + ".json";
    CliResult r = run_cli("counterexample --g1 9 --g2 9 --out " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream f(out);
    json j = json::parse(f);
    REQUIRE(j["group"]["factors"].size() > 0);
    REQUIRE(j["schurian"] == false);
    SRing ring = sring_from_json(j["ring"]);
    REQUIRE(ring.group.order() == 81);
    Certificate cert = certificate_from_json(j["certificate"]);
    REQUIRE(verify_certificate(ring, cert));
    std::remove(out.c_str());
}

#endif // SCHUR_CLI_PATH
