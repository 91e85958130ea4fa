// Command-line front end: constructs, checks, enumerates and classifies
// S-rings over finite abelian groups, with JSON artifacts on stdout.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schur/enumerate.hpp"
#include "schur/json_io.hpp"

namespace {

using schur::json;

std::vector<int> parse_factors(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    if (out.empty()) throw schur::usage_error("empty factor list");
    return out;
}

json read_json(const std::string& path) {
    if (path.empty() || path == "-") return json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw schur::usage_error("cannot open input file: " + path);
    return json::parse(f);
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw schur::usage_error("cannot open output file: " + out_path);
        f << j.dump(2) << "\n";
    }
}

json schurian_report(const schur::SRing& a, int point_bound) {
    auto [ok, cert] = schur::is_schurian(a, point_bound);
    return json{{"schurian", ok}, {"certificate", schur::to_json(cert)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-ring construction, schurity and classification toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker cap (accepted for compatibility)");

    std::string in_path, out_path, factors_str;
    int point_bound = 0;

    auto* c_group = app.add_subcommand("group", "describe an abelian group");
    c_group->add_option("--factors", factors_str, "cyclic factors, comma separated")->required();
    bool with_subgroups = false;
    c_group->add_flag("--subgroups", with_subgroups, "list the full subgroup lattice");

    auto* c_check = app.add_subcommand("check", "verify the S-ring axioms for a partition");
    c_check->add_option("--in", in_path, "partition JSON (default: stdin)");

    auto* c_closure = app.add_subcommand("closure", "smallest S-ring whose classes refine the seeds");
    c_closure->add_option("--in", in_path, "JSON {\"group\":...,\"seeds\":[[...],...]}");

    auto* c_build = app.add_subcommand("build", "evaluate a construction DSL tree");
    c_build->add_option("--in", in_path, "construction JSON (default: stdin)");
    c_build->add_option("--out", out_path, "output file (default: stdout)");

    auto* c_aut = app.add_subcommand("aut", "automorphism group of the Cayley scheme");
    c_aut->add_option("--in", in_path, "S-ring JSON (default: stdin)");
    c_aut->add_option("--point-bound", point_bound, "domain size cap for the search");

    auto* c_schurian = app.add_subcommand("schurian", "decide schurity with a certificate");
    c_schurian->add_option("--in", in_path, "S-ring JSON (default: stdin)");
    c_schurian->add_option("--point-bound", point_bound, "domain size cap for the search");

    auto* c_normal = app.add_subcommand("normal", "decide normality with a certificate");
    c_normal->add_option("--in", in_path, "S-ring JSON (default: stdin)");
    c_normal->add_option("--point-bound", point_bound, "domain size cap for the search");

    auto* c_enum = app.add_subcommand("enumerate", "all S-rings over a group, one JSON per line");
    c_enum->add_option("--factors", factors_str, "cyclic factors, comma separated")->required();
    c_enum->add_option("--out", out_path, "output file (default: stdout)");
    bool annotate = false, oracle = false, no_prune = false;
    int order_bound = 24;
    c_enum->add_option("--order-bound", order_bound, "largest group order accepted");
    c_enum->add_flag("--schurity", annotate, "annotate each ring with its schurity certificate");
    c_enum->add_flag("--oracle", oracle, "force the brute-force partition oracle (order <= 8)");
    c_enum->add_flag("--no-aut-prune", no_prune, "disable automorphism pruning");

    auto* c_classify = app.add_subcommand("classify", "Schur-group verdict from the classification");
    c_classify->add_option("--factors", factors_str, "cyclic factors, comma separated");
    std::string range_str;
    bool cyclic_table = false;
    c_classify->add_option("--range", range_str, "order range A..B");
    c_classify->add_flag("--cyclic", cyclic_table, "with --range: table of cyclic Schur orders");

    auto* c_cx = app.add_subcommand("counterexample", "explicit non-schurian S-ring over G1 x G2");
    int g1_order = 0, g2_order = 0;
    std::string g1_factors, g2_factors;
    c_cx->add_option("--g1", g1_order, "order of the first factor (cyclic unless --g1-factors)");
    c_cx->add_option("--g2", g2_order, "order of the second factor (cyclic unless --g2-factors)");
    c_cx->add_option("--g1-factors", g1_factors, "cyclic factors of the first group");
    c_cx->add_option("--g2-factors", g2_factors, "cyclic factors of the second group");
    c_cx->add_option("--out", out_path, "output file (default: stdout)");
    c_cx->add_option("--point-bound", point_bound, "domain size cap for the schurity search");

    auto* c_verify = app.add_subcommand("verify-certificate", "re-check a certificate");
    c_verify->add_option("--in", in_path, "certificate JSON (default: stdin)");
    std::string sring_path;
    c_verify->add_option("--sring", sring_path, "S-ring JSON the certificate refers to")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 64;
    }

    try {
        if (*c_group) {
            schur::AbelianGroup g(parse_factors(factors_str));
            json j{{"factors", g.factors()},
                   {"order", g.order()},
                   {"invariant_factors", schur::invariant_factors(g.factors())}};
            if (with_subgroups) {
                json subs = json::array();
                for (const auto& s : schur::all_subgroups(g)) subs.push_back(schur::to_json(s));
                j["subgroups"] = subs;
            }
            emit(j, "");
        } else if (*c_check) {
            auto [g, parts] = schur::partition_from_json(read_json(in_path));
            auto v = schur::verify_sring(g, parts);
            if (std::holds_alternative<schur::SRing>(v))
                emit(json{{"ok", true}, {"rank", std::get<schur::SRing>(v).rank()}}, "");
            else
                emit(json{{"ok", false}, {"violation", schur::to_json(std::get<schur::Violation>(v))}}, "");
        } else if (*c_closure) {
            json j = read_json(in_path);
            schur::AbelianGroup g = schur::group_from_json(j.at("group"));
            auto seeds = j.at("seeds").get<std::vector<std::vector<int>>>();
            emit(schur::to_json(schur::closure(g, seeds)), "");
        } else if (*c_build) {
            emit(schur::to_json(schur::eval_construction(read_json(in_path))), out_path);
        } else if (*c_aut) {
            schur::SRing a = schur::sring_from_json(read_json(in_path));
            schur::PermGroup aut = schur::scheme_aut(a, point_bound);
            emit(schur::to_json(aut), "");
        } else if (*c_schurian) {
            schur::SRing a = schur::sring_from_json(read_json(in_path));
            emit(schurian_report(a, point_bound), "");
        } else if (*c_normal) {
            schur::SRing a = schur::sring_from_json(read_json(in_path));
            auto [ok, cert] = schur::is_normal(a, point_bound);
            emit(json{{"normal", ok}, {"certificate", schur::to_json(cert)}}, "");
        } else if (*c_enum) {
            schur::AbelianGroup g(parse_factors(factors_str));
            std::vector<schur::SRing> rings;
            if (oracle) {
                rings = schur::brute_force_srings(g);
            } else {
                schur::EnumerateOptions opt;
                opt.order_bound = order_bound;
                opt.aut_pruning = !no_prune;
                rings = schur::all_srings(g, opt);
            }
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_path.empty() && out_path != "-") {
                file.open(out_path);
                if (!file) throw schur::usage_error("cannot open output file: " + out_path);
                os = &file;
            }
            for (const auto& a : rings) {
                json j = schur::to_json(a);
                if (annotate) {
                    auto [ok, cert] = schur::is_schurian(a, point_bound);
                    j["schurian"] = ok;
                    j["certificate"] = schur::to_json(cert);
                }
                *os << j.dump() << "\n";
            }
        } else if (*c_classify) {
            if (!range_str.empty()) {
                auto dots = range_str.find("..");
                if (dots == std::string::npos)
                    throw schur::usage_error("--range expects A..B");
                long long lo = std::stoll(range_str.substr(0, dots));
                long long hi = std::stoll(range_str.substr(dots + 2));
                if (!cyclic_table)
                    throw schur::usage_error("--range currently requires --cyclic");
                json rows = json::array();
                for (long long n = std::max(1LL, lo); n <= hi; ++n)
                    rows.push_back(json{{"n", n}, {"schur", schur::is_cyclic_schur_order(n)}});
                emit(json{{"cyclic_schur_orders", rows}}, "");
            } else if (!factors_str.empty()) {
                schur::AbelianGroup g(parse_factors(factors_str));
                emit(schur::to_json(schur::abelian_schur_verdict(g)), "");
            } else {
                throw schur::usage_error("classify needs --factors or --range A..B --cyclic");
            }
        } else if (*c_cx) {
            auto pick = [](int order, const std::string& fac) {
                if (!fac.empty()) return schur::AbelianGroup(parse_factors(fac));
                if (order < 2) throw schur::usage_error("counterexample: give --gN or --gN-factors");
                return schur::AbelianGroup({order});
            };
            schur::AbelianGroup g1 = pick(g1_order, g1_factors);
            schur::AbelianGroup g2 = pick(g2_order, g2_factors);
            schur::Theorem4Witness w = schur::build_theorem4(g1, g2);
            json j = schur::to_json(w);
            json sch = schurian_report(w.ring, point_bound);
            j["schurian"] = sch["schurian"];
            j["certificate"] = sch["certificate"];
            emit(j, out_path);
        } else if (*c_verify) {
            schur::SRing a = schur::sring_from_json(read_json(sring_path));
            schur::Certificate cert = schur::certificate_from_json(read_json(in_path));
            bool ok = schur::verify_certificate(a, cert);
            emit(json{{"valid", ok}, {"kind", cert.kind}}, "");
            return ok ? 0 : 1;
        }
    } catch (const schur::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const schur::resource_error& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return 2;
    } catch (const schur::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "JSON error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
