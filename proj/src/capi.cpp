#include "bitree.h"

#include <cstring>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "bitree/bigraph.hpp"
#include "bitree/cache.hpp"
#include "bitree/embed.hpp"
#include "bitree/formulas.hpp"
#include "bitree/hamilton.hpp"
#include "bitree/search.hpp"
#include "bitree/treegen.hpp"

using nlohmann::ordered_json;

struct bt_graph {
    bitree::BipartiteGraph g;
};

struct bt_tree_family {
    bitree::TreeFamily fam;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string msg) { g_last_error = std::move(msg); }

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const bitree::contract_error& e) {
        set_error(e.what());
        return BT_ERR_INVALID;
    } catch (const bitree::parse_error& e) {
        set_error(e.what());
        return BT_ERR_PARSE;
    } catch (const bitree::size_error& e) {
        set_error(e.what());
        return BT_ERR_LIMIT;
    } catch (const bitree::budget_error& e) {
        set_error(e.what());
        return BT_ERR_LIMIT;
    } catch (const std::ios_base::failure& e) {
        set_error(e.what());
        return BT_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BT_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return BT_ERR_INTERNAL;
    }
}

int require(bool cond, const char* msg) {
    if (!cond) {
        set_error(msg);
        return BT_ERR_INVALID;
    }
    return BT_OK;
}

ordered_json formula_json(const bitree::ExValue& v) {
    const char* status = v.status == bitree::ExStatus::Proven        ? "Proven"
                         : v.status == bitree::ExStatus::Conjectured ? "Conjectured"
                                                                     : "Unknown";
    return ordered_json{{"value", v.value}, {"status", status}, {"case_label", v.case_label}};
}

ordered_json embedding_json(const bitree::Embedding& e) {
    return ordered_json{
        {"found", true},
        {"orientation",
         e.orientation == bitree::Orientation::SidesPreserved ? "preserved" : "swapped"},
        {"map_u", e.map_u},
        {"map_v", e.map_v}};
}

bitree::SearchBudget make_budget(int workers, uint64_t max_graphs, double max_seconds,
                                 int use_prop32) {
    bitree::SearchBudget b;
    if (workers > 0) b.workers = workers;
    if (max_graphs > 0) b.max_labeled_graphs = max_graphs;
    if (max_seconds > 0) b.max_seconds = max_seconds;
    b.prop32_prune = use_prop32 != 0;
    return b;
}

}  // namespace

extern "C" {

const char* bt_version(void) { return "1.0.0"; }

const char* bt_last_error(void) { return g_last_error.c_str(); }

void bt_string_free(char* s) { delete[] s; }

int bt_graph_create(int n, int m, const int32_t* edges_uv, size_t edge_count, bt_graph** out) {
    if (int rc = require(out != nullptr && (edges_uv != nullptr || edge_count == 0),
                         "null argument")) {
        return rc;
    }
    return guarded([&]() {
        std::vector<std::pair<int, int>> edges;
        edges.reserve(edge_count);
        for (size_t i = 0; i < edge_count; ++i) {
            edges.push_back({edges_uv[2 * i], edges_uv[2 * i + 1]});
        }
        *out = new bt_graph{bitree::BipartiteGraph(n, m, edges)};
        return BT_OK;
    });
}

int bt_graph_from_bmat(const char* text, bt_graph** out) {
    if (int rc = require(text != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = new bt_graph{bitree::parse_bmat(text)};
        return BT_OK;
    });
}

int bt_graph_to_bmat(const bt_graph* g, char** out) {
    if (int rc = require(g != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = dup_string(bitree::serialize_bmat(g->g));
        return BT_OK;
    });
}

int bt_graph_to_dot(const bt_graph* g, char** out) {
    if (int rc = require(g != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = dup_string(bitree::to_dot(g->g));
        return BT_OK;
    });
}

int bt_graph_canonical_hex(const bt_graph* g, int allow_side_swap, char** out) {
    if (int rc = require(g != nullptr && out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = dup_string(bitree::canonical_key(g->g, allow_side_swap != 0).hex());
        return BT_OK;
    });
}

int bt_graph_counts(const bt_graph* g, int* n, int* m, int* edges) {
    if (int rc = require(g != nullptr, "null argument")) return rc;
    if (n) *n = g->g.n();
    if (m) *m = g->g.m();
    if (edges) *edges = g->g.edge_count();
    return BT_OK;
}

int bt_graph_degree_sequence(const bt_graph* g, int side, int32_t* buf, size_t buflen,
                             size_t* written) {
    if (int rc = require(g != nullptr && buf != nullptr && written != nullptr, "null argument")) {
        return rc;
    }
    return guarded([&]() {
        auto seq =
            bitree::degree_sequence(g->g, side == 0 ? bitree::Side::U : bitree::Side::V).degrees;
        if (seq.size() > buflen) {
            set_error("buffer too small");
            return static_cast<int>(BT_ERR_INVALID);
        }
        for (size_t i = 0; i < seq.size(); ++i) buf[i] = seq[i];
        *written = seq.size();
        return static_cast<int>(BT_OK);
    });
}

void bt_graph_destroy(bt_graph* g) { delete g; }

int bt_make_regular(int size, int degree, bt_graph** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = new bt_graph{bitree::make_regular_bipartite(size, degree)};
        return BT_OK;
    });
}

int bt_trees_enumerate(int k, int l, int cap, bt_tree_family** out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out = new bt_tree_family{
            bitree::enumerate_trees(k, l, cap > 0 ? cap : bitree::kDefaultTreeCap)};
        return BT_OK;
    });
}

size_t bt_tree_family_size(const bt_tree_family* fam) {
    return fam ? fam->fam.members.size() : 0;
}

int bt_tree_family_member(const bt_tree_family* fam, size_t index, bt_graph** out) {
    if (int rc = require(fam != nullptr && out != nullptr, "null argument")) return rc;
    if (int rc = require(index < fam->fam.members.size(), "index out of range")) return rc;
    *out = new bt_graph{fam->fam.members[index].graph()};
    return BT_OK;
}

int bt_tree_family_key_hex(const bt_tree_family* fam, size_t index, char** out) {
    if (int rc = require(fam != nullptr && out != nullptr, "null argument")) return rc;
    if (int rc = require(index < fam->fam.keys.size(), "index out of range")) return rc;
    *out = dup_string(fam->fam.keys[index].hex());
    return BT_OK;
}

void bt_tree_family_destroy(bt_tree_family* fam) { delete fam; }

int bt_tree_count_l2(int k) {
    int result = -1;
    guarded([&]() {
        result = bitree::count_trees_l2(k);
        return BT_OK;
    });
    return result;
}

int bt_embed(const bt_graph* host, const bt_graph* tree, const char* orientation, int constructive,
             char** out_json) {
    if (int rc = require(host != nullptr && tree != nullptr && out_json != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&]() {
        bitree::BipartiteTree t(tree->g);
        const std::string ori = orientation ? orientation : "any";
        if (ori != "preserved" && ori != "swapped" && ori != "any") {
            set_error("orientation must be preserved, swapped or any");
            return static_cast<int>(BT_ERR_INVALID);
        }
        ordered_json j{{"found", false}};
        if (constructive) {
            // The construction produces sides-preserved embeddings; "swapped"
            // runs it against the transposed host.
            const bool swapped = ori == "swapped";
            bitree::BipartiteGraph eff = swapped ? host->g.transposed() : host->g;
            bitree::Embedding e;
            if (eff.n() == eff.m()) {
                e = bitree::constructive_embed_balanced(eff, t);
            } else if (eff.n() > eff.m()) {
                e = bitree::constructive_embed_unbalanced(eff, t);
            } else {
                // Work on the transpose and flip the maps back.
                bitree::BipartiteTree tt(t.graph().transposed());
                bitree::Embedding et = bitree::constructive_embed_unbalanced(eff.transposed(), tt);
                e.map_u = std::move(et.map_v);
                e.map_v = std::move(et.map_u);
            }
            e.orientation = swapped ? bitree::Orientation::SidesSwapped
                                    : bitree::Orientation::SidesPreserved;
            j = embedding_json(e);
        } else {
            std::optional<bitree::Embedding> e;
            if (ori == "preserved" || ori == "any") {
                e = bitree::find_embedding(host->g, t, bitree::Orientation::SidesPreserved);
            }
            if (!e && (ori == "swapped" || ori == "any")) {
                e = bitree::find_embedding(host->g, t, bitree::Orientation::SidesSwapped);
            }
            if (e) j = embedding_json(*e);
        }
        *out_json = dup_string(j.dump());
        return static_cast<int>(BT_OK);
    });
}

int bt_contains_all(const bt_graph* host, int k, int l, char** out_json) {
    if (int rc = require(host != nullptr && out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        bitree::TreeFamily fam = bitree::enumerate_trees(k, l);
        bitree::ContainsAllResult r = bitree::contains_all(host->g, fam);
        ordered_json j;
        j["all"] = r.all;
        if (r.all) {
            j["first_missing_index"] = nullptr;
            j["first_missing_bmat"] = nullptr;
        } else {
            j["first_missing_index"] = r.first_missing;
            j["first_missing_bmat"] =
                bitree::serialize_bmat(fam.members[static_cast<size_t>(r.first_missing)].graph());
        }
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_hamilton_check(const bt_graph* g, char** out_json) {
    if (int rc = require(g != nullptr && out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        bitree::HamiltonicityVerdict v = bitree::is_hamiltonian(g->g);
        ordered_json j;
        j["n"] = g->g.n();
        j["is_hamiltonian"] = v.is_hamiltonian;
        j["condition_holds"] = v.condition_holds;
        if (v.witness_cycle) {
            j["witness_cycle"] = *v.witness_cycle;
        } else {
            j["witness_cycle"] = nullptr;
        }
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_hamilton_verify_c2n(int n, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        bitree::C2nReport rep = bitree::verify_c2n_extremal(n);
        ordered_json j;
        j["n"] = rep.n;
        j["ex"] = rep.ex;
        j["extremal_keys"] = rep.extremal_keys;
        j["violations"] = rep.violations;
        j["full_space"] = rep.full_space;
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_ex_formula(int n, int m, int k, int l, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out_json = dup_string(formula_json(bitree::ex_formula(n, m, k, l)).dump());
        return BT_OK;
    });
}

int bt_ex_path(int n, int m, int path_len, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        *out_json = dup_string(formula_json(bitree::ex_path(n, m, path_len)).dump());
        return BT_OK;
    });
}

int bt_conjecture_value(int n, int m, int k, int l, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        auto v = bitree::conjecture_value(n, m, k, l);
        ordered_json j = v ? formula_json(*v) : ordered_json{{"applicable", false}};
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_construct_extremal(int n, int m, int k, int l, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        bitree::ExtremalCatalog cat = bitree::construct_extremal(n, m, k, l);
        ordered_json j;
        j["supported"] = cat.supported;
        j["complete"] = cat.complete;
        j["value"] = cat.value;
        j["entries"] = ordered_json::array();
        for (const auto& entry : cat.entries) {
            j["entries"].push_back(ordered_json{{"family", entry.family},
                                                {"symbolic", entry.symbolic},
                                                {"bmat", bitree::serialize_bmat(entry.graph)},
                                                {"key", bitree::canonical_key(entry.graph).hex()}});
        }
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_ex_bruteforce(int n, int m, int k, int l, const char* single_tree_bmat, int workers,
                     uint64_t max_graphs, double max_seconds, int use_prop32_prune,
                     const char* cache_path, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        const bitree::SearchBudget budget =
            make_budget(workers, max_graphs, max_seconds, use_prop32_prune);

        std::optional<bitree::BipartiteTree> single;
        if (single_tree_bmat) single.emplace(bitree::parse_bmat(single_tree_bmat));

        int rec_k = single ? single->k() : k;
        int rec_l = single ? single->l() : l;
        std::string tree_key =
            single ? bitree::canonical_key(single->graph(), single->k() == single->l()).hex() : "";

        std::optional<bitree::ResultCache> cache;
        if (cache_path) cache.emplace(cache_path);

        ordered_json j;
        if (cache) {
            if (auto hit = cache->get(n, m, rec_k, rec_l, tree_key, bitree::kMethodVersion)) {
                j["cached"] = true;
                j["record"] = ordered_json::parse(bitree::record_to_json(*hit));
                j["reps"] = ordered_json::array();
                *out_json = dup_string(j.dump());
                return BT_OK;
            }
        }

        bitree::BruteResult result =
            single ? bitree::ex_bruteforce_single(n, m, *single, budget)
                   : bitree::ex_bruteforce(n, m, bitree::enumerate_trees(k, l), budget);
        if (cache) cache->put(result.record);

        j["cached"] = false;
        j["record"] = ordered_json::parse(bitree::record_to_json(result.record));
        j["reps"] = ordered_json::array();
        for (const auto& rep : result.extremal_reps) j["reps"].push_back(bitree::serialize_bmat(rep));
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_verify_theorem(const char* id, int workers, int nm_budget, int sum_budget, int kmax,
                      int path_lmax, char** out_json) {
    if (int rc = require(id != nullptr && out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        auto theorem = bitree::theorem_from_name(id);
        if (!theorem) {
            set_error(std::string("unknown theorem id: ") + id);
            return static_cast<int>(BT_ERR_INVALID);
        }
        bitree::VerifyOptions opt;
        if (workers > 0) opt.budget.workers = workers;
        if (nm_budget > 0) opt.nm_budget = nm_budget;
        if (sum_budget > 0) opt.sum_budget = sum_budget;
        if (kmax > 0) opt.kmax = kmax;
        if (path_lmax > 0) opt.path_lmax = path_lmax;
        bitree::TheoremReport rep = bitree::verify_theorem(*theorem, opt);
        ordered_json j;
        j["id"] = rep.id;
        j["mismatch_count"] = rep.mismatch_count;
        j["tuples"] = ordered_json::array();
        for (const auto& t : rep.tuples) {
            j["tuples"].push_back(ordered_json{{"n", t.n},
                                               {"m", t.m},
                                               {"k", t.k},
                                               {"l", t.l},
                                               {"brute", t.brute},
                                               {"formula", t.formula},
                                               {"class_count", t.class_count},
                                               {"mismatches", t.mismatches}});
        }
        *out_json = dup_string(j.dump());
        return static_cast<int>(BT_OK);
    });
}

int bt_conjecture_scan(int nm_budget, int nmax, int mmax, int lmin, int lmax, int kmax,
                       int workers, char** out_json) {
    if (int rc = require(out_json != nullptr, "null argument")) return rc;
    return guarded([&]() {
        bitree::ConjectureOptions opt;
        if (nm_budget > 0) opt.nm_budget = nm_budget;
        if (nmax > 0) opt.nmax = nmax;
        if (mmax > 0) opt.mmax = mmax;
        if (lmin > 0) opt.lmin = lmin;
        if (lmax > 0) opt.lmax = lmax;
        if (kmax > 0) opt.kmax = kmax;
        if (workers > 0) opt.budget.workers = workers;
        bitree::ConjectureReport rep = bitree::explore_conjecture(opt);
        ordered_json j;
        j["mismatch_count"] = rep.mismatch_count;
        j["rows"] = ordered_json::array();
        for (const auto& r : rep.rows) {
            j["rows"].push_back(ordered_json{{"n", r.n},
                                             {"m", r.m},
                                             {"k", r.k},
                                             {"l", r.l},
                                             {"guard_case", r.guard_case},
                                             {"conjectured", r.conjectured},
                                             {"brute", r.brute},
                                             {"outcome", r.outcome}});
        }
        *out_json = dup_string(j.dump());
        return BT_OK;
    });
}

int bt_report_render(const char* cache_path, const char* filter, char** out_table,
                     char** out_csv) {
    if (int rc = require(cache_path != nullptr && out_table != nullptr && out_csv != nullptr,
                         "null argument")) {
        return rc;
    }
    return guarded([&]() {
        if (!std::filesystem::exists(cache_path)) {
            set_error(std::string("cache file not found: ") + cache_path);
            return static_cast<int>(BT_ERR_IO);
        }
        bitree::ResultCache cache(cache_path);
        auto records = cache.load_all();

        // filter: comma-separated key=value over n,m,k,l,agreement,method
        std::vector<std::pair<std::string, std::string>> clauses;
        if (filter && *filter) {
            std::istringstream in(filter);
            std::string clause;
            while (std::getline(in, clause, ',')) {
                auto eq = clause.find('=');
                if (eq == std::string::npos) {
                    set_error("filter clause needs key=value: " + clause);
                    return static_cast<int>(BT_ERR_INVALID);
                }
                clauses.push_back({clause.substr(0, eq), clause.substr(eq + 1)});
            }
        }
        auto agreement_str = [](bitree::Agreement a) {
            return a == bitree::Agreement::Match      ? "Match"
                   : a == bitree::Agreement::Mismatch ? "Mismatch"
                                                      : "NoFormula";
        };
        auto matches = [&](const bitree::ExtremalRecord& r) {
            for (const auto& [key, value] : clauses) {
                if (key == "n" && std::to_string(r.n) != value) return false;
                if (key == "m" && std::to_string(r.m) != value) return false;
                if (key == "k" && std::to_string(r.k) != value) return false;
                if (key == "l" && std::to_string(r.l) != value) return false;
                if (key == "agreement" && agreement_str(r.agreement) != value) return false;
                if (key == "method" && r.method_version != value) return false;
            }
            return true;
        };

        std::ostringstream table, csv;
        csv << "n,m,k,l,tree_key,ex,formula_value,formula_status,agreement,class_count,"
               "elapsed_ms,method_version\n";
        table << "n  m  k  l  ex  formula  agreement  classes  tree\n";
        for (const auto& r : records) {
            if (!matches(r)) continue;
            std::string fv = r.formula ? std::to_string(r.formula->value) : "-";
            std::string fs = !r.formula                                          ? "-"
                             : r.formula->status == bitree::ExStatus::Proven      ? "Proven"
                             : r.formula->status == bitree::ExStatus::Conjectured ? "Conjectured"
                                                                                  : "Unknown";
            table << r.n << "  " << r.m << "  " << r.k << "  " << r.l << "  " << r.ex << "  " << fv
                  << "  " << agreement_str(r.agreement) << "  " << r.extremal_keys.size() << "  "
                  << (r.tree_key.empty() ? "-" : r.tree_key.substr(0, 12)) << "\n";
            csv << r.n << ',' << r.m << ',' << r.k << ',' << r.l << ',' << r.tree_key << ','
                << r.ex << ',' << fv << ',' << fs << ',' << agreement_str(r.agreement) << ','
                << r.extremal_keys.size() << ',' << r.elapsed_ms << ',' << r.method_version
                << "\n";
        }
        for (const auto& w : cache.warnings()) table << "warning: " << w << "\n";
        *out_table = dup_string(table.str());
        *out_csv = dup_string(csv.str());
        return static_cast<int>(BT_OK);
    });
}

}  // extern "C"
