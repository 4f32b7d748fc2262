#include "qz5/report.hpp"

#include "json.hpp"

namespace qz5 {

void Report::print(std::ostream& os) const {
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
    }
}

std::string Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["residual_zero"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(e);
    }
    return arr.dump(2);
}

}  // namespace qz5
