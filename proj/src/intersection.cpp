#include "qz5/intersection.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qz5 {

namespace {
constexpr const char* kSchema = "psi-dvv-v1";
}

std::string PsiKey::to_string() const {
    std::string s = std::to_string(genus) + ";";
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exps[i]);
    }
    return s;
}

Rat PsiCache::integral(int genus, std::vector<int> exps) {
    long n = static_cast<long>(exps.size());
    if (2 * genus - 2 + n <= 0)
        throw std::domain_error("psi integral: unstable (g,n) = (" + std::to_string(genus) +
                                "," + std::to_string(n) + ")");
    for (int a : exps)
        if (a < 0) throw std::domain_error("psi integral: negative exponent");
    return value(genus, exps);
}

std::size_t PsiCache::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return memo_.size();
}

Rat PsiCache::value_or_zero(int genus, std::vector<int> exps) {
    if (genus < 0) return Rat(0);
    if (2 * genus - 2 + static_cast<long>(exps.size()) <= 0) return Rat(0);
    return value(genus, exps);
}

Rat PsiCache::value(int genus, std::vector<int>& exps) {
    const long n = static_cast<long>(exps.size());
    long total = std::accumulate(exps.begin(), exps.end(), 0L);
    if (total != 3L * genus - 3 + n) return Rat(0);

    std::sort(exps.begin(), exps.end());
    PsiKey key{genus, exps};
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }

    Rat result(0);
    if (genus == 0) {
        // <tau_{a1}...tau_{an}>_0 = (n-3)! / prod a_i!
        Rat r(factorial(static_cast<unsigned long>(n - 3)));
        for (int a : exps) r /= Rat(factorial(static_cast<unsigned long>(a)));
        result = r;
    } else if (genus == 1 && n == 1) {
        result = rat(1, 24);  // <tau_1>_1
    } else if (exps.front() == 0) {
        // String equation.
        std::vector<int> rest(exps.begin() + 1, exps.end());
        for (std::size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            std::vector<int> next = rest;
            --next[j];
            result += value_or_zero(genus, std::move(next));
        }
    } else if (exps.front() == 1) {
        // Dilaton equation.
        std::vector<int> rest(exps.begin() + 1, exps.end());
        result = Rat(2 * genus - 2 + (n - 1)) * value_or_zero(genus, std::move(rest));
    } else {
        // DVV recursion on the largest exponent k+1 (all entries >= 2 here).
        int k = exps.back() - 1;
        std::vector<int> rest(exps.begin(), exps.end() - 1);
        const std::size_t m = rest.size();

        Rat acc(0);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<int> next = rest;
            next[j] += k;
            acc += Rat(dfact_odd(k + rest[j])) / Rat(dfact_odd(rest[j] - 1)) *
                   value_or_zero(genus, std::move(next));
        }
        for (int a = 0; a <= k - 1; ++a) {
            int b = k - 1 - a;
            Rat w = Rat(dfact_odd(a)) * Rat(dfact_odd(b));

            std::vector<int> joined = rest;
            joined.push_back(a);
            joined.push_back(b);
            Rat inner = value_or_zero(genus - 1, std::move(joined));

            for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
                for (int g1 = 0; g1 <= genus; ++g1) {
                    std::vector<int> left{a}, right{b};
                    for (std::size_t j = 0; j < m; ++j)
                        ((mask >> j) & 1 ? left : right).push_back(rest[j]);
                    Rat lv = value_or_zero(g1, std::move(left));
                    if (lv == 0) continue;
                    Rat rv = value_or_zero(genus - g1, std::move(right));
                    if (rv == 0) continue;
                    inner += lv * rv;
                }
            }
            acc += w * inner * rat(1, 2);
        }
        result = acc / Rat(dfact_odd(k + 1));
    }

    std::lock_guard<std::mutex> lk(mu_);
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

void PsiCache::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        return;
    }
    if (!j.is_object() || j.value("schema", "") != kSchema) return;
    std::lock_guard<std::mutex> lk(mu_);
    for (const auto& [k, v] : j.at("values").items()) {
        auto semi = k.find(';');
        if (semi == std::string::npos) continue;
        PsiKey key;
        key.genus = std::stoi(k.substr(0, semi));
        std::string rest = k.substr(semi + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            key.exps.push_back(std::stoi(rest.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        memo_[key] = rat_from_string(v.get<std::string>());
    }
}

void PsiCache::save(const std::string& path) const {
    nlohmann::json values = nlohmann::json::object();
    {
        std::lock_guard<std::mutex> lk(mu_);
        for (const auto& [k, v] : memo_) values[k.to_string()] = rat_to_string(v);
    }
    nlohmann::json j;
    j["schema"] = kSchema;
    j["values"] = std::move(values);
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

}  // namespace qz5
