// Acceptance suite: one pass/fail line per criterion, every threshold
// pinned in code, exact zero residuals throughout (no tolerances).
// Exits nonzero if any criterion fails.  Criterion runtimes are checked
// against their stated budgets.
//
// Set QZ5_ACCEPT_G3=1 to include the genus-3 anomaly-equation run.

#include "qz5/cohft.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace qz5;

namespace {

struct Criterion {
    int number;
    std::string name;
    bool pass = true;
    std::string detail;
};

std::vector<Criterion> results;

void record(int number, const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({number, name, pass, detail});
    std::cout << "criterion " << number << " [" << name << "]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_pass(const Report& rep, std::string* why = nullptr) {
    for (const auto& c : rep.checks)
        if (!c.pass) {
            if (why) *why = c.name + (c.detail.empty() ? "" : " [" + c.detail + "]");
            return false;
        }
    return true;
}

}  // namespace

int main() {
    const int kOrder = 40;
    const int kMaxK = 8;
    const int kSlack = 34;
    const bool run_g3 = std::getenv("QZ5_ACCEPT_G3") != nullptr;

    // --- Criterion 1: mirror identities through x^40, < 5 s -----------------
    {
        auto t0 = std::chrono::steady_clock::now();
        MirrorData m = build_mirror(kOrder, 8);
        Report rep = check_mirror_identities(m);
        double dt = seconds_since(t0);
        std::string why;
        bool ok = all_pass(rep, &why);
        bool in_time = dt < 5.0;
        record(1, "mirror identities, order 40", ok && in_time,
               ok ? (std::to_string(dt) + " s") : why);
    }

    // Shared engine for everything downstream.
    auto t_engine = std::chrono::steady_clock::now();
    MirrorData mirror = build_mirror(kOrder, kSlack);
    EvalBasis basis(mirror);
    RMatrixData rt = solve_rmatrix(mirror, basis, kMaxK, {});
    PsiCache psi;
    CohftContext ctx(mirror, basis, rt, psi);
    double solve_time = seconds_since(t_engine);

    // --- Criterion 2: R-matrix battery at K = 8, < 60 s ---------------------
    {
        auto t0 = std::chrono::steady_clock::now();
        Report rep = check_rmatrix(rt, basis);
        double dt = solve_time + seconds_since(t0);
        std::string why;
        bool ok = all_pass(rep, &why);
        record(2, "R-matrix: base, flatness, polynomiality, symplectic, K = 8",
               ok && dt < 60.0, ok ? (std::to_string(dt) + " s incl. solve") : why);
    }

    // --- Criterion 3: derivative lemmas, k <= 8, exact ----------------------
    {
        Report rep = check_derivative_lemmas(rt);
        std::string why;
        bool ok = all_pass(rep, &why);
        record(3, "derivative lemmas dP~/dA2 and dP~/d(D2A1), k <= 8", ok, why);
    }

    // --- Criterion 4: edge-derivative lemmas, b1+b2 <= 4, exact -------------
    {
        Report rep = check_edge_symmetry(ctx, 4);
        rep.merge(check_edge_derivative_lemmas(ctx, 4));
        std::string why;
        bool ok = all_pass(rep, &why);
        record(4, "edge symmetry and telescoped edge derivatives, b1+b2 <= 4", ok, why);
    }

    // --- Criterion 5: finite generation and C1^-1 degrees -------------------
    Potential f2, f3;
    std::vector<Potential> phi1_potentials;
    {
        bool ok = true;
        std::string why;
        f2 = compute_potential(ctx, 2, {}, 2);
        if (!f2.value.in_f()) ok = false, why = "F_2 not in F";
        f3 = compute_potential(ctx, 3, {}, 2);
        if (!f3.value.in_f()) ok = false, why = "F_3 not in F";
        for (int n = 1; n <= 3 && ok; ++n) {
            std::vector<int> ins(static_cast<std::size_t>(n), 1);
            phi1_potentials.push_back(compute_potential(ctx, 2, ins, 2));
            int deg = phi1_potentials.back().value.c1_inverse_degree();
            if (deg != n) {
                ok = false;
                why = "C1^-1 degree of the " + std::to_string(n) + "-leg potential is " +
                      std::to_string(deg);
            }
        }
        record(5, "finite generation (F_2, F_3) and C1^-1 degree = n, n <= 3", ok, why);
    }

    // --- Criterion 6: anomaly equations, genus 2 (< 5 min), genus 3 optional
    {
        auto t0 = std::chrono::steady_clock::now();
        Report rep = check_hae(ctx, 2, {rat(1, 2), 2});
        double dt = seconds_since(t0);
        std::string why;
        bool ok = all_pass(rep, &why);
        record(6, "anomaly equations, genus 2, exact + series through x^40",
               ok && dt < 300.0, ok ? (std::to_string(dt) + " s") : why);
        if (run_g3) {
            auto t1 = std::chrono::steady_clock::now();
            Report rep3 = check_hae(ctx, 3, {rat(1, 2), 2});
            double dt3 = seconds_since(t1);
            std::string why3;
            bool ok3 = all_pass(rep3, &why3);
            record(6, "anomaly equations, genus 3 (optional)", ok3 && dt3 < 7200.0,
                   ok3 ? (std::to_string(dt3) + " s") : why3);
        }
    }

    // --- Criterion 7: two-pipeline equivalence for criteria 5-6 potentials --
    {
        bool ok = true;
        std::string why;
        auto check_pot = [&](const Potential& p, const std::string& name) {
            try {
                CycSeries lifted = p.value.eval(basis);
                if (!(lifted - p.series).vanishes_through(kOrder)) {
                    ok = false;
                    if (why.empty()) why = name;
                }
            } catch (const order_error& e) {
                ok = false;
                if (why.empty()) why = name + std::string(": ") + e.what();
            }
        };
        check_pot(f2, "F_2");
        check_pot(f3, "F_3");
        for (std::size_t n = 0; n < phi1_potentials.size(); ++n)
            check_pot(phi1_potentials[n], "F_{2," + std::to_string(n + 1) + "}(phi_1...)");
        record(7, "symbolic-then-evaluate equals all-series graph sum, through x^40", ok, why);
    }

    // --- Criterion 8: Witten-Kontsevich suite, < 5 s -------------------------
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        std::string why;
        PsiCache cache;
        if (cache.integral(0, {0, 0, 0}) != 1) ok = false, why = "<tau_0^3>_0";
        if (cache.integral(1, {1}) != rat(1, 24)) ok = false, why = "<tau_1>_1";
        if (cache.integral(2, {4}) != rat(1, 1152)) ok = false, why = "<tau_4>_2";
        std::mt19937 rng(20260808);
        std::uniform_int_distribution<int> gdist(0, 3), ndist(1, 5), adist(0, 6);
        int tested = 0;
        while (tested < 100 && ok) {
            int g = gdist(rng), n = ndist(rng);
            if (2 * g - 2 + n <= 0) continue;
            std::vector<int> exps;
            for (int i = 0; i < n; ++i) exps.push_back(adist(rng));
            std::vector<int> with0 = exps;
            with0.push_back(0);
            Rat lhs = cache.integral(g, with0);
            Rat rhs(0);
            for (std::size_t j = 0; j < exps.size(); ++j) {
                if (exps[j] == 0) continue;
                std::vector<int> low = exps;
                --low[j];
                rhs += cache.integral(g, low);
            }
            if (lhs != rhs) ok = false, why = "string equation";
            std::vector<int> with1 = exps;
            with1.push_back(1);
            if (cache.integral(g, with1) != Rat(2 * g - 2 + n) * cache.integral(g, exps))
                ok = false, why = "dilaton equation";
            ++tested;
        }
        double dt = seconds_since(t0);
        record(8, "Witten-Kontsevich values and 100 string/dilaton keys", ok && dt < 5.0,
               ok ? (std::to_string(dt) + " s") : why);
    }

    // --- Criterion 9: negative controls --------------------------------------
    {
        bool ok = true;
        std::string why;

        // (a) poisoned integration constant -> symplectic check fails
        {
            MirrorData m = build_mirror(16, 20);
            EvalBasis b(m);
            SolveOptions sopts;
            sopts.poison_level = 2;
            sopts.poison_j = 0;
            sopts.poison_delta = Rat(1);
            RMatrixData prt = solve_rmatrix(m, b, 4, sopts);
            Report rep = check_rmatrix(prt, b);
            bool saw_failure = false;
            for (const auto& c : rep.checks)
                if (!c.pass && c.name.find("symplectic") != std::string::npos) saw_failure = true;
            if (!saw_failure) ok = false, why = "poisoned constant went unnoticed";
        }

        // (b) dropping the 1/2 factors -> first anomaly equation fails
        {
            Report rep = check_hae(ctx, 2, {Rat(1), 2});
            bool failed = false;
            for (const auto& c : rep.checks)
                if (!c.pass && c.name.find("HAE 1") != std::string::npos) failed = true;
            if (!failed) ok = false, why = "wrong half factor went unnoticed";
        }

        // (c) t-insertion denominator != 5 -> potentials change and at least
        //     one check fails
        {
            MirrorData m = build_mirror(16, 22);
            EvalBasis b(m);
            RMatrixData rt4 = solve_rmatrix(m, b, 5, {});
            PsiCache psi4;
            CohftContext ctx4(m, b, rt4, psi4, /*t_denom=*/4);
            CohftContext ctx5(m, b, rt4, psi4, /*t_denom=*/5);
            Potential w = compute_potential(ctx4, 1, {1});
            Potential r = compute_potential(ctx5, 1, {1});
            if (w.value == r.value) ok = false, why = "t-denominator knob inert";
            Report rep = check_hae(ctx4, 2);
            bool failed = false;
            for (const auto& c : rep.checks)
                if (!c.pass) failed = true;
            if (!failed) ok = false, why = "t-denominator 4 run reports no failure";
        }
        record(9, "negative controls (poison constant, half factors, t-denominator)", ok, why);
    }

    bool all_ok = true;
    for (const auto& c : results)
        if (!c.pass) all_ok = false;
    std::cout << (all_ok ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: failures present")
              << std::endl;
    return all_ok ? 0 : 1;
}
