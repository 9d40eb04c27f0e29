#pragma once

#include <stdexcept>
#include <string>

namespace bitree {

// Precondition / contract violation. The message names the failed condition.
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed textual input. `line` is 1-based, 0 when not applicable.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Requested size exceeds a configured cap.
class size_error : public std::runtime_error {
public:
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// Search budget exhausted. Carries the progress made so far: the scan had
// established ex < `stratum_reached` when it gave up.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, int stratum_reached, long long best_upper_bound)
        : std::runtime_error(what),
          stratum_reached_(stratum_reached),
          best_upper_bound_(best_upper_bound) {}
    int stratum_reached() const { return stratum_reached_; }
    long long best_upper_bound() const { return best_upper_bound_; }

private:
    int stratum_reached_;
    long long best_upper_bound_;
};

}  // namespace bitree
