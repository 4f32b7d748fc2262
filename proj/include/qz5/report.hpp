#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qz5 {

// One named verification with its outcome; reports are kept in insertion
// order so emitted output is deterministic for a given configuration.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
    void merge(const Report& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks)
            if (!c.pass) ++n;
        return n;
    }
    void print(std::ostream& os) const;
    std::string to_json() const;
};

}  // namespace qz5
