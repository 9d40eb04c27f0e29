// Command-line front end. Everything goes through the C API in bitree.h.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bitree.h"

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitFindings = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { bt_string_free(s); }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

struct GraphGuard {
    bt_graph* g = nullptr;
    ~GraphGuard() { bt_graph_destroy(g); }
};

struct FamilyGuard {
    bt_tree_family* f = nullptr;
    ~FamilyGuard() { bt_tree_family_destroy(f); }
};

int exit_for(int rc) {
    if (rc == BT_OK) return 0;
    if (rc == BT_ERR_IO) return kExitNoInput;
    return kExitError;
}

int fail(int rc) {
    std::cerr << "error: " << bt_last_error() << "\n";
    return exit_for(rc);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string default_cache_path() {
    if (const char* env = std::getenv("BITREE_CACHE")) return env;
    return "./bitree-cache.jsonl";
}

// Standard wrapper for commands with structured results.
void print_report(const std::string& command, const ordered_json& params,
                  const ordered_json& results, const std::vector<std::string>& warnings,
                  Clock::time_point start) {
    ordered_json report;
    report["command"] = command;
    report["parameters"] = params;
    report["results"] = results;
    report["warnings"] = warnings;
    report["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    report["version"] = bt_version();
    std::cout << report.dump(2) << "\n";
}

struct CommonFlags {
    bool json = false;
};

int load_graph_file(const std::string& path, GraphGuard& out) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    }
    if (int rc = bt_graph_from_bmat(text.c_str(), &out.g)) return fail(rc);
    return 0;
}

// ---------------------------------------------------------------------- trees

int run_trees_gen(int k, int l, int cap, const std::string& format, const std::string& out_dir,
                  bool dot, bool json, Clock::time_point start) {
    FamilyGuard fam;
    if (int rc = bt_trees_enumerate(k, l, cap, &fam.f)) return fail(rc);
    const size_t count = bt_tree_family_size(fam.f);

    ordered_json members = ordered_json::array();
    for (size_t i = 0; i < count; ++i) {
        GraphGuard g;
        StringGuard bmat, key;
        if (int rc = bt_tree_family_member(fam.f, i, &g.g)) return fail(rc);
        if (int rc = bt_graph_to_bmat(g.g, &bmat.s)) return fail(rc);
        if (int rc = bt_tree_family_key_hex(fam.f, i, &key.s)) return fail(rc);
        members.push_back(ordered_json{{"bmat", bmat.str()}, {"key", key.str()}});
        if (!out_dir.empty()) {
            std::string base = out_dir + "/tree_" + std::to_string(k) + "_" + std::to_string(l) +
                               "_" + std::to_string(i);
            write_file(base + ".bmat", bmat.str());
            if (dot) {
                StringGuard d;
                if (int rc = bt_graph_to_dot(g.g, &d.s)) return fail(rc);
                write_file(base + ".dot", d.str());
            }
        }
    }
    if (json || format == "json") {
        ordered_json results{{"k", k}, {"l", l}, {"count", count}, {"members", members}};
        print_report("trees gen", ordered_json{{"k", k}, {"l", l}}, results, {}, start);
    } else {
        for (size_t i = 0; i < members.size(); ++i) {
            std::cout << members[i]["bmat"].get<std::string>();
            if (i + 1 < members.size()) std::cout << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------ ex family

int run_ex_formula(int n, int m, int k, int l, bool json, Clock::time_point) {
    StringGuard out;
    if (int rc = bt_ex_formula(n, m, k, l, &out.s)) return fail(rc);
    if (json) {
        std::cout << out.str() << "\n";
        return 0;
    }
    ordered_json j = ordered_json::parse(out.str());
    std::cout << "ex(" << n << "," << m << "; T_{" << k << "," << l
              << "}) = " << j["value"].dump() << "  [" << j["status"].get<std::string>() << ", "
              << j["case_label"].get<std::string>() << "]\n";
    return 0;
}

int run_ex_brute(int n, int m, int k, int l, const std::string& single_tree, int workers,
                 uint64_t budget_graphs, double budget_seconds, bool no_prune,
                 const std::string& cache_path, const std::string& out_dir, bool dot, bool json,
                 Clock::time_point start) {
    std::string tree_text;
    if (!single_tree.empty()) {
        try {
            tree_text = read_file(single_tree);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitNoInput;
        }
    }
    StringGuard out;
    int rc = bt_ex_bruteforce(n, m, k, l, tree_text.empty() ? nullptr : tree_text.c_str(), workers,
                              budget_graphs, budget_seconds, no_prune ? 0 : 1,
                              cache_path.empty() ? nullptr : cache_path.c_str(), &out.s);
    if (rc) return fail(rc);
    ordered_json j = ordered_json::parse(out.str());

    if (!out_dir.empty()) {
        const auto& reps = j["reps"];
        const auto& keys = j["record"]["extremal_keys"];
        for (size_t i = 0; i < reps.size(); ++i) {
            std::string key = keys[i].get<std::string>();
            std::string base = out_dir + "/extremal_" + key.substr(0, 16);
            std::string bmat = reps[i].get<std::string>();
            write_file(base + ".bmat", bmat);
            if (dot) {
                GraphGuard g;
                StringGuard d;
                if (int rc = bt_graph_from_bmat(bmat.c_str(), &g.g)) return fail(rc);
                if (int rc = bt_graph_to_dot(g.g, &d.s)) return fail(rc);
                write_file(base + ".dot", d.str());
            }
        }
    }
    const std::string agreement = j["record"]["agreement"].get<std::string>();
    if (json) {
        print_report("ex brute",
                     ordered_json{{"n", n}, {"m", m}, {"k", k}, {"l", l},
                                  {"single_tree", single_tree}},
                     j, {}, start);
    } else {
        std::cout << "ex = " << j["record"]["ex"].dump() << "  classes "
                  << j["record"]["extremal_keys"].size() << "  agreement " << agreement
                  << (j["cached"].get<bool>() ? "  (cached)" : "") << "\n";
    }
    return agreement == "Mismatch" ? kExitFindings : 0;
}

// ------------------------------------------------------------------- construct

int run_construct(int n, int m, int k, int l, const std::string& out_dir, bool dot, bool json,
                  Clock::time_point start) {
    StringGuard out;
    if (int rc = bt_construct_extremal(n, m, k, l, &out.s)) return fail(rc);
    ordered_json j = ordered_json::parse(out.str());
    if (!j["supported"].get<bool>()) {
        std::cerr << "error: no characterized extremal family for these parameters\n";
        return kExitError;
    }
    if (!out_dir.empty()) {
        int idx = 0;
        for (const auto& entry : j["entries"]) {
            std::string base = out_dir + "/extremal_" + std::to_string(idx++);
            write_file(base + ".bmat", entry["bmat"].get<std::string>());
            if (dot) {
                GraphGuard g;
                StringGuard d;
                std::string bmat = entry["bmat"].get<std::string>();
                if (int rc = bt_graph_from_bmat(bmat.c_str(), &g.g)) return fail(rc);
                if (int rc = bt_graph_to_dot(g.g, &d.s)) return fail(rc);
                write_file(base + ".dot", d.str());
            }
        }
    }
    if (json) {
        print_report("construct", ordered_json{{"n", n}, {"m", m}, {"k", k}, {"l", l}}, j, {},
                     start);
    } else {
        std::cout << "value " << j["value"].dump() << ", " << j["entries"].size()
                  << " catalog entries (complete=" << (j["complete"].get<bool>() ? "yes" : "no")
                  << ")\n";
        for (const auto& entry : j["entries"]) {
            std::cout << "  - " << entry["family"].get<std::string>()
                      << (entry["symbolic"].get<bool>() ? " [family representative]" : "") << "\n";
        }
    }
    return 0;
}

// ----------------------------------------------------------------------- embed

int run_embed(const std::string& host_path, const std::string& tree_path,
              const std::string& orientation, bool constructive, bool json,
              Clock::time_point start) {
    GraphGuard host, tree;
    if (int rc = load_graph_file(host_path, host)) return rc;
    if (int rc = load_graph_file(tree_path, tree)) return rc;
    StringGuard out;
    if (int rc = bt_embed(host.g, tree.g, orientation.c_str(), constructive ? 1 : 0, &out.s)) {
        return fail(rc);
    }
    ordered_json j = ordered_json::parse(out.str());
    if (json) {
        print_report("embed",
                     ordered_json{{"host", host_path},
                                  {"tree", tree_path},
                                  {"orientation", orientation},
                                  {"constructive", constructive}},
                     j, {}, start);
    } else if (j["found"].get<bool>()) {
        std::cout << "orientation " << j["orientation"].get<std::string>() << "\n";
        std::cout << "map_u:";
        for (const auto& x : j["map_u"]) std::cout << " " << x.dump();
        std::cout << "\nmap_v:";
        for (const auto& x : j["map_v"]) std::cout << " " << x.dump();
        std::cout << "\n";
    } else {
        std::cout << "NONE\n";
    }
    return j["found"].get<bool>() ? 0 : kExitFindings;
}

// -------------------------------------------------------------------- hamilton

int run_hamilton_check(const std::string& path, bool json, Clock::time_point start) {
    GraphGuard g;
    if (int rc = load_graph_file(path, g)) return rc;
    StringGuard out;
    if (int rc = bt_hamilton_check(g.g, &out.s)) return fail(rc);
    ordered_json j = ordered_json::parse(out.str());
    if (json) {
        print_report("hamilton check", ordered_json{{"file", path}}, j, {}, start);
    } else {
        std::cout << (j["is_hamiltonian"].get<bool>() ? "hamiltonian" : "not hamiltonian")
                  << ", degree condition " << (j["condition_holds"].get<bool>() ? "holds" : "fails")
                  << "\n";
        if (!j["witness_cycle"].is_null()) {
            std::cout << "cycle:";
            for (const auto& x : j["witness_cycle"]) std::cout << " " << x.dump();
            std::cout << "\n";
        }
    }
    return 0;
}

int run_hamilton_verify(int n, bool json, Clock::time_point start) {
    StringGuard out;
    if (int rc = bt_hamilton_verify_c2n(n, &out.s)) return fail(rc);
    ordered_json j = ordered_json::parse(out.str());
    if (json) {
        print_report("hamilton verify-c2n", ordered_json{{"n", n}}, j, {}, start);
    } else {
        std::cout << "n=" << n << " ex=" << j["ex"].dump() << " extremal classes "
                  << j["extremal_keys"].size() << " violations " << j["violations"].size() << "\n";
        for (const auto& v : j["violations"]) std::cout << "violation: " << v.dump() << "\n";
    }
    return j["violations"].empty() ? 0 : kExitFindings;
}

// ---------------------------------------------------------------------- verify

int run_verify(const std::string& id, int workers, int nm_budget, int sum_budget, int kmax,
               int path_lmax, bool json, Clock::time_point start) {
    StringGuard out;
    if (int rc = bt_verify_theorem(id.c_str(), workers, nm_budget, sum_budget, kmax, path_lmax,
                                   &out.s)) {
        return fail(rc);
    }
    ordered_json j = ordered_json::parse(out.str());
    if (json) {
        print_report("verify", ordered_json{{"id", id}}, j, {}, start);
    } else {
        std::cout << j["id"].get<std::string>() << ": " << j["tuples"].size() << " tuples, "
                  << j["mismatch_count"].dump() << " mismatches\n";
        for (const auto& t : j["tuples"]) {
            if (t["mismatches"].empty()) continue;
            std::cout << "  (" << t["n"].dump() << "," << t["m"].dump() << "," << t["k"].dump()
                      << "," << t["l"].dump() << "):\n";
            for (const auto& msg : t["mismatches"]) {
                std::cout << "    " << msg.get<std::string>() << "\n";
            }
        }
    }
    return j["mismatch_count"].get<int>() > 0 ? kExitFindings : 0;
}

// ------------------------------------------------------------------ conjecture

int run_conjecture_scan(int nm_budget, int nmax, int mmax, int lmin, int lmax, int kmax,
                        int workers, bool json, Clock::time_point start) {
    StringGuard out;
    if (int rc = bt_conjecture_scan(nm_budget, nmax, mmax, lmin, lmax, kmax, workers, &out.s)) {
        return fail(rc);
    }
    ordered_json j = ordered_json::parse(out.str());
    if (json) {
        print_report("conjecture scan", ordered_json{{"nm_budget", nm_budget}}, j, {}, start);
    } else {
        for (const auto& r : j["rows"]) {
            std::cout << "(" << r["n"].dump() << "," << r["m"].dump() << "," << r["k"].dump()
                      << "," << r["l"].dump() << ") " << r["outcome"].get<std::string>();
            if (r["outcome"].get<std::string>() != "GuardNotMet") {
                std::cout << " conjectured " << r["conjectured"].dump() << " brute "
                          << r["brute"].dump();
            }
            std::cout << "\n";
        }
        std::cout << j["rows"].size() << " tuples, " << j["mismatch_count"].dump()
                  << " mismatches\n";
    }
    return j["mismatch_count"].get<int>() > 0 ? kExitFindings : 0;
}

// ---------------------------------------------------------------------- report

int run_report_render(const std::string& cache_path, const std::string& filter,
                      const std::string& csv_path, bool json, Clock::time_point start) {
    StringGuard table, csv;
    int rc = bt_report_render(cache_path.c_str(), filter.empty() ? nullptr : filter.c_str(),
                              &table.s, &csv.s);
    if (rc) return fail(rc);
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (json) {
        print_report("report render",
                     ordered_json{{"cache", cache_path}, {"filter", filter}},
                     ordered_json{{"table", table.str()}, {"csv", csv.str()}}, {}, start);
    } else {
        std::cout << table.str();
        if (csv_path.empty()) std::cout << "\n" << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const auto start = Clock::now();
    CLI::App app{"bitree: extremal sizes and containment for bipartite-tree families"};
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "emit JSON instead of text");

    // trees gen
    auto* trees = app.add_subcommand("trees", "tree family operations");
    auto* gen = trees->add_subcommand("gen", "enumerate T_{k,l} up to isomorphism");
    int gk = 0, gl = 0, gcap = 0;
    std::string gformat = "bmat", gout, gdummy;
    bool gdot = false;
    gen->add_option("k", gk, "U-side size")->required();
    gen->add_option("l", gl, "V-side size")->required();
    gen->add_option("--format", gformat, "bmat|json")->check(CLI::IsMember({"bmat", "json"}));
    gen->add_option("--cap", gcap, "vertex cap (default 12)");
    gen->add_option("--out", gout, "directory for bmat files");
    gen->add_flag("--dot", gdot, "also write DOT files with --out");

    // ex formula / ex brute
    auto* ex = app.add_subcommand("ex", "extremal numbers");
    auto* formula = ex->add_subcommand("formula", "closed-form value");
    int fn = 0, fm = 0, fk = 0, fl = 0;
    formula->add_option("n", fn)->required();
    formula->add_option("m", fm)->required();
    formula->add_option("k", fk)->required();
    formula->add_option("l", fl)->required();

    auto* brute = ex->add_subcommand("brute", "exhaustive value and extremal classes");
    int bn = 0, bm = 0, bk = 0, bl = 0, bworkers = 0;
    std::uint64_t bgraphs = 0;
    double bseconds = 0;
    std::string bsingle, bcache = default_cache_path(), bout;
    bool bnoprune = false, bnocache = false, bdot = false;
    brute->add_option("n", bn)->required();
    brute->add_option("m", bm)->required();
    brute->add_option("k", bk)->required();
    brute->add_option("l", bl)->required();
    brute->add_option("--single-tree", bsingle, "bmat file; overrides the (k,l) family");
    brute->add_option("--workers", bworkers, "worker threads (default: up to 4)");
    brute->add_option("--budget-graphs", bgraphs, "labeled-graph budget (default 2^30)");
    brute->add_option("--budget-seconds", bseconds, "time budget (default 900)");
    brute->add_flag("--no-prune", bnoprune, "disable the shared-neighbor acceptance filter");
    brute->add_option("--cache", bcache, "cache path (JSONL; BITREE_CACHE overrides default)");
    brute->add_flag("--no-cache", bnocache, "skip the result cache");
    brute->add_option("--out", bout, "directory for extremal bmat files");
    brute->add_flag("--dot", bdot, "also write DOT files with --out");

    // construct
    auto* construct = app.add_subcommand("construct", "characterized extremal graphs");
    int cn = 0, cm = 0, ck = 0, cl = 0;
    std::string cout_dir;
    bool cdot = false;
    construct->add_option("n", cn)->required();
    construct->add_option("m", cm)->required();
    construct->add_option("k", ck)->required();
    construct->add_option("l", cl)->required();
    construct->add_option("--out", cout_dir, "directory for bmat files");
    construct->add_flag("--dot", cdot, "also write DOT files with --out");

    // embed
    auto* embed = app.add_subcommand("embed", "find a tree embedding");
    std::string ehost, etree, eorientation = "any";
    bool econstructive = false;
    embed->add_option("--host", ehost, "host bmat file")->required();
    embed->add_option("--tree", etree, "tree bmat file")->required();
    embed->add_option("--orientation", eorientation, "preserved|swapped|any")
        ->check(CLI::IsMember({"preserved", "swapped", "any"}));
    embed->add_flag("--constructive", econstructive, "use the inductive construction");

    // hamilton
    auto* hamilton = app.add_subcommand("hamilton", "Hamiltonicity of balanced hosts");
    auto* hcheck = hamilton->add_subcommand("check", "check one graph");
    std::string hfile;
    hcheck->add_option("file", hfile, "bmat file")->required();
    auto* hverify = hamilton->add_subcommand("verify-c2n", "verify the cycle extremal bound");
    int hn = 0;
    hverify->add_option("n", hn)->required();

    // verify
    auto* verify = app.add_subcommand("verify", "sweep a theorem against brute force");
    std::string vid;
    int vworkers = 0, vnm = 0, vsum = 0, vkmax = 0, vplmax = 0;
    verify->add_option("id", vid, "Thm1.4|Thm1.5|Thm1.6|Thm1.7|Lem2.2|Lem3.5|Lem4.2")->required();
    verify->add_option("--nm-budget", vnm, "max n*m per tuple");
    verify->add_option("--sum-budget", vsum, "max n+m for the whole-family sweep");
    verify->add_option("--kmax", vkmax, "max k");
    verify->add_option("--path-lmax", vplmax, "max l for path sweeps");
    verify->add_option("--workers", vworkers, "worker threads");

    // conjecture scan
    auto* conjecture = app.add_subcommand("conjecture", "conjecture exploration");
    auto* scan = conjecture->add_subcommand("scan", "evidence sweep over guard tuples");
    int snm = 0, snmax = 0, smmax = 0, slmin = 0, slmax = 0, skmax = 0, sworkers = 0;
    scan->add_option("--nm-budget", snm, "max n*m (default 30)");
    scan->add_option("--nmax", snmax, "max n (default: bounded by --nm-budget)");
    scan->add_option("--mmax", smmax, "max m (default: bounded by --nm-budget)");
    scan->add_option("--lmin", slmin, "min l (default 2)");
    scan->add_option("--lmax", slmax, "max l (default 5)");
    scan->add_option("--kmax", skmax, "max k (default 6)");
    scan->add_option("--workers", sworkers, "worker threads");

    // report render
    auto* report = app.add_subcommand("report", "cache reporting");
    auto* render = report->add_subcommand("render", "summary table and CSV from the cache");
    std::string rcache = default_cache_path(), rfilter, rcsv;
    render->add_option("--cache", rcache, "cache path");
    render->add_option("--filter", rfilter, "key=value[,key=value] over n,m,k,l,agreement,method");
    render->add_option("--csv", rcsv, "write CSV to this file");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return run_trees_gen(gk, gl, gcap, gformat, gout, gdot, json, start);
        if (formula->parsed()) return run_ex_formula(fn, fm, fk, fl, json, start);
        if (brute->parsed()) {
            return run_ex_brute(bn, bm, bk, bl, bsingle, bworkers, bgraphs, bseconds, bnoprune,
                                bnocache ? std::string() : bcache, bout, bdot, json, start);
        }
        if (construct->parsed()) return run_construct(cn, cm, ck, cl, cout_dir, cdot, json, start);
        if (embed->parsed()) {
            return run_embed(ehost, etree, eorientation, econstructive, json, start);
        }
        if (hcheck->parsed()) return run_hamilton_check(hfile, json, start);
        if (hverify->parsed()) return run_hamilton_verify(hn, json, start);
        if (verify->parsed()) {
            return run_verify(vid, vworkers, vnm, vsum, vkmax, vplmax, json, start);
        }
        if (scan->parsed()) {
            return run_conjecture_scan(snm, snmax, smmax, slmin, slmax, skmax, sworkers, json, start);
        }
        if (render->parsed()) return run_report_render(rcache, rfilter, rcsv, json, start);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << app.help();
    return kExitUsage;
}
