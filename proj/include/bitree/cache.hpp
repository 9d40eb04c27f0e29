#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bitree/search.hpp"

namespace bitree {

std::string record_to_json(const ExtremalRecord& rec);
std::optional<ExtremalRecord> record_from_json(const std::string& line);

/**
 * Append-only JSON-lines journal of ExtremalRecords. Lookups return the
 * newest record with identical parameters and method version; corrupt lines
 * are skipped with a warning, never fatal.
 */
class ResultCache {
public:
    explicit ResultCache(std::string path) : path_(std::move(path)) {}

    const std::string& path() const { return path_; }

    void put(const ExtremalRecord& rec);
    std::optional<ExtremalRecord> get(int n, int m, int k, int l, const std::string& tree_key,
                                      const std::string& method_version);
    /// All parseable records, oldest first.
    std::vector<ExtremalRecord> load_all();
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::string path_;
    std::vector<std::string> warnings_;
    std::mutex mu_;
};

}  // namespace bitree
