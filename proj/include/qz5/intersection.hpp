#pragma once

// Exact psi-class intersection numbers <tau_{a1} ... tau_{an}>_g on the
// moduli of stable curves, evaluated by the DVV (Virasoro) recursion with
// string/dilaton shortcuts and a persistent memo table.

#include "qz5/rational.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace qz5 {

struct PsiKey {
    int genus = 0;
    std::vector<int> exps;  // sorted ascending

    auto operator<=>(const PsiKey&) const = default;
    std::string to_string() const;
};

class PsiCache {
  public:
    // <tau_{a1}...tau_{an}>_g; throws std::domain_error when 2g-2+n <= 0.
    // Returns 0 whenever sum(a_i) != 3g-3+n.
    Rat integral(int genus, std::vector<int> exps);

    std::size_t size() const;

    // Versioned JSON persistence; silently starts fresh on schema mismatch.
    void load(const std::string& path);
    void save(const std::string& path) const;

  private:
    Rat value(int genus, std::vector<int>& exps);      // stability-checked
    Rat value_or_zero(int genus, std::vector<int> exps);  // unstable -> 0

    mutable std::mutex mu_;
    std::map<PsiKey, Rat> memo_;
};

}  // namespace qz5
