#pragma once

// Frobenius-structure constants at the semisimple point and the modified
// R-matrix table P~^k_{i,j}, solved level by level in two independent
// pipelines:
//
//  (a) symbolically in F: the five modified flatness equations express
//      rows 4..1 of level k through row 0, whose own equation
//      D P~^k_{0,j} = (level-k data) is solved in C[L^±1] by the
//      triangular inverse of D (this is where row-0 polynomiality is
//      checked, not assumed);
//
//  (b) as truncated series, with the same recursion driven by series
//      arithmetic and its own symplectic normalization.
//
// The kernel constant of each level is fixed by the symplectic condition
//   sum_{a+b=k} (-1)^b R_a R_b^T = 0,   R_k = Psi P_k,
// which pins every constant at even levels and is constant-free at odd
// levels (there the zero constant is the canonical gauge; any other
// choice is absorbed by the residual exp(odd z-degree) diagonal group).

#include "qz5/freering.hpp"
#include "qz5/mirror.hpp"
#include "qz5/report.hpp"

#include <array>
#include <map>
#include <optional>
#include <vector>

namespace qz5 {

struct FrobeniusData {
    std::array<std::array<Cyc, 5>, 5> pairing;      // G
    std::array<std::array<Cyc, 5>, 5> pairing_inv;  // G^-1
    std::array<std::array<ExtElem, 5>, 5> psi;      // Psi_{ij} = (1/5) zeta^{ij} M_j
    std::array<std::array<ExtElem, 5>, 5> psi_inv;  // (Psi^-1)_{ij} = zeta^{-ij} / M_i
    std::array<ExtElem, 5> du;                      // diag(L, L zeta, ..., L zeta^4)
    Rat idempotent_norm;                            // g(e_p, e_p) = 1/25
};

FrobeniusData build_frobenius();

// Structural identities: Psi G^-1 Psi^T = Id, Psi Psi^-1 = Id, the
// subdiagonal pattern of Psi^-1 (DU) Psi, and the base case
// P~^0_{i,j} = 1 recovered from Psi^-1.
Report check_frobenius(const FrobeniusData& fd, const EvalBasis& basis);

struct SolveOptions {
    // Negative-control hook: adds delta to the integration constant of
    // column j at the given level, in both pipelines.
    std::optional<int> poison_level;
    int poison_j = 0;
    Rat poison_delta = Rat(1);

    // Odd-level integration constants (uniform across columns).  Odd
    // levels are unconstrained by the symplectic condition; these are
    // pinned by the T-derivative compatibility (see solve_odd_constants).
    std::map<int, Rat> odd_constants;
    // Fully general per-column odd-level constants (overrides the above
    // when a level appears in both).
    std::map<int, std::array<Cyc, 5>> odd_constants_cyc;
};

class RMatrixData {
  public:
    int max_k() const { return static_cast<int>(sym_.size()) - 1; }

    // P~^k_{i,j}; k beyond the solved depth raises order_error naming the
    // minimal required depth.
    const FElem& at(int k, int i, int j) const;
    const CycSeries& at_series(int k, int i, int j) const;
    // Zero for k < 0 (P~^k = 0 below level 0 by convention).
    FElem at_or_zero(int k, int i, int j) const;
    CycSeries at_series_or_zero(int k, int i, int j) const;

    const std::array<Cyc, 5>& kappa(int k) const { return kappa_[static_cast<std::size_t>(k)]; }
    const Report& solve_log() const { return log_; }

    // Reassembles a table from persisted parts (cache loads).
    static RMatrixData assemble(std::vector<std::array<std::array<FElem, 5>, 5>> sym,
                                std::vector<std::array<std::array<CycSeries, 5>, 5>> ser,
                                std::vector<std::array<Cyc, 5>> kappa, int series_order,
                                Report log);

    friend RMatrixData solve_rmatrix(const MirrorData& m, const EvalBasis& basis, int max_k,
                                     const SolveOptions& opts);

  private:
    std::vector<std::array<std::array<FElem, 5>, 5>> sym_;
    std::vector<std::array<std::array<CycSeries, 5>, 5>> ser_;
    std::vector<std::array<Cyc, 5>> kappa_;
    Report log_;
    int series_order_ = 0;
};

RMatrixData solve_rmatrix(const MirrorData& m, const EvalBasis& basis, int max_k,
                          const SolveOptions& opts = {});

// Recomputes every stated property from the stored table: base case,
// all five flatness equations per level (symbolic and series), row-0
// polynomiality, symplectic residuals, and symbolic/series agreement.
Report check_rmatrix(const RMatrixData& rt, const EvalBasis& basis);

// The two derivative lemmas on the lifted table:
//   d P~^k_{i,j} / d A2      = delta_{i,2} P~^{k-1}_{3,j}
//   d P~^k_{i,j} / d (D2A1)  = delta_{i,1} L^-2 P~^{k-3}_{4,j}
Report check_derivative_lemmas(const RMatrixData& rt);

}  // namespace qz5
