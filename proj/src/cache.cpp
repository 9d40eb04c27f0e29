#include "bitree/cache.hpp"

#include <fstream>

#include <json.hpp>

namespace bitree {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* status_name(ExStatus s) {
    switch (s) {
        case ExStatus::Proven: return "Proven";
        case ExStatus::Conjectured: return "Conjectured";
        case ExStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

const char* agreement_name(Agreement a) {
    switch (a) {
        case Agreement::Match: return "Match";
        case Agreement::Mismatch: return "Mismatch";
        case Agreement::NoFormula: return "NoFormula";
    }
    return "NoFormula";
}

}  // namespace

std::string record_to_json(const ExtremalRecord& rec) {
    ordered_json j;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["k"] = rec.k;
    j["l"] = rec.l;
    j["tree_key"] = rec.tree_key;
    j["ex"] = rec.ex;
    j["extremal_keys"] = rec.extremal_keys;
    j["extremal_keys_merged"] = rec.extremal_keys_merged;
    if (rec.formula) {
        j["formula"] = ordered_json{{"value", rec.formula->value},
                                    {"status", status_name(rec.formula->status)},
                                    {"case_label", rec.formula->case_label}};
    } else {
        j["formula"] = nullptr;
    }
    j["agreement"] = agreement_name(rec.agreement);
    j["elapsed_ms"] = rec.elapsed_ms;
    j["method_version"] = rec.method_version;
    return j.dump();
}

std::optional<ExtremalRecord> record_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    try {
        ExtremalRecord rec;
        rec.n = j.at("n").get<int>();
        rec.m = j.at("m").get<int>();
        rec.k = j.at("k").get<int>();
        rec.l = j.at("l").get<int>();
        rec.tree_key = j.at("tree_key").get<std::string>();
        rec.ex = j.at("ex").get<long long>();
        rec.extremal_keys = j.at("extremal_keys").get<std::vector<std::string>>();
        rec.extremal_keys_merged = j.at("extremal_keys_merged").get<std::vector<std::string>>();
        if (!j.at("formula").is_null()) {
            ExValue v;
            v.value = j["formula"].at("value").get<long long>();
            std::string s = j["formula"].at("status").get<std::string>();
            v.status = s == "Proven"        ? ExStatus::Proven
                       : s == "Conjectured" ? ExStatus::Conjectured
                                            : ExStatus::Unknown;
            v.case_label = j["formula"].at("case_label").get<std::string>();
            rec.formula = std::move(v);
        }
        std::string a = j.at("agreement").get<std::string>();
        rec.agreement = a == "Match"      ? Agreement::Match
                        : a == "Mismatch" ? Agreement::Mismatch
                                          : Agreement::NoFormula;
        rec.elapsed_ms = j.at("elapsed_ms").get<double>();
        rec.method_version = j.at("method_version").get<std::string>();
        return rec;
    } catch (const ordered_json::exception&) {
        return std::nullopt;
    }
}

void ResultCache::put(const ExtremalRecord& rec) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file for append: " + path_);
    out << record_to_json(rec) << "\n";
}

std::vector<ExtremalRecord> ResultCache::load_all() {
    std::lock_guard<std::mutex> lock(mu_);
    warnings_.clear();
    std::vector<ExtremalRecord> out;
    std::ifstream in(path_);
    if (!in) return out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto rec = record_from_json(line);
        if (rec) {
            out.push_back(std::move(*rec));
        } else {
            warnings_.push_back("cache line " + std::to_string(lineno) + " skipped (corrupt)");
        }
    }
    return out;
}

std::optional<ExtremalRecord> ResultCache::get(int n, int m, int k, int l,
                                               const std::string& tree_key,
                                               const std::string& method_version) {
    std::optional<ExtremalRecord> hit;
    for (auto& rec : load_all()) {
        if (rec.n == n && rec.m == m && rec.k == k && rec.l == l && rec.tree_key == tree_key &&
            rec.method_version == method_version) {
            hit = std::move(rec);  // newest wins
        }
    }
    return hit;
}

}  // namespace bitree
