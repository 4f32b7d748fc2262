#pragma once

// The Givental-Teleman graph sum for the potentials
// F_{g,n}(phi_{c1},...,phi_{cn}): vertex, edge and leg contributions
// assembled over decorated stable graphs, in two value systems at once:
// C3-eliminated ring elements (the finite-generation statement) and
// truncated series (the analytic pipeline).  The holomorphic anomaly
// equations are verified as exact normal-form identities between these
// potentials.

#include "qz5/freering.hpp"
#include "qz5/graphs.hpp"
#include "qz5/intersection.hpp"
#include "qz5/mirror.hpp"
#include "qz5/report.hpp"
#include "qz5/rmatrix.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace qz5 {

inline int inv_class(int c) {
    int r = ((c % 5) + 5) % 5;
    return r == 0 ? 0 : 5 - r;
}

class CohftContext {
  public:
    CohftContext(const MirrorData& m, const EvalBasis& b, const RMatrixData& r, PsiCache& psi,
                 long t_denominator = 5)
        : mirror(m), basis(b), rt(r), psi(psi), t_denom(t_denominator) {}

    const MirrorData& mirror;
    const EvalBasis& basis;
    const RMatrixData& rt;
    PsiCache& psi;
    long t_denom;  // the normalization 1/n in the t-insertion; 5 is the order of the group

    // K_{Inv(c)}/L^{Inv(c)} leg factors.
    ExtElem leg_k_factor(int inv_c) const;
    CycSeries leg_k_factor_series(int inv_c) const;

  private:
    friend LaurentL vertex_contribution(const CohftContext&, int, int, const std::vector<int>&);
    friend CycSeries vertex_contribution_series(const CohftContext&, int, int,
                                                const std::vector<int>&);
    friend FElem edge_contribution(const CohftContext&, int, int, int, int);
    friend CycSeries edge_contribution_series(const CohftContext&, int, int, int, int);

    mutable std::mutex memo_mu_;
    mutable std::map<std::tuple<int, int, std::vector<int>>, LaurentL> vertex_memo_;
    mutable std::map<std::tuple<int, int, std::vector<int>>, CycSeries> vertex_memo_ser_;
    mutable std::map<std::tuple<int, int, int, int>, FElem> edge_memo_;
    mutable std::map<std::tuple<int, int, int, int>, CycSeries> edge_memo_ser_;
};

// Contribution of one vertex with given genus, decoration p and incident
// flag values (psi-exponents), summed over t-insertions:
//   sum_k 5^(2g-2+n+k)/k! * <psi-flags, t-insertions>_g * prod T_{p,m_i},
//   T_{p,m} = ((-1)^m / t_denom) P~^m_{0,p} zeta^{-mp}.
LaurentL vertex_contribution(const CohftContext& ctx, int gv, int p,
                             const std::vector<int>& flags);
CycSeries vertex_contribution_series(const CohftContext& ctx, int gv, int p,
                                     const std::vector<int>& flags);

// Contribution of one edge with half-edge values (b1 at a p1-vertex, b2
// at a p2-vertex).
FElem edge_contribution(const CohftContext& ctx, int b1, int b2, int p1, int p2);
CycSeries edge_contribution_series(const CohftContext& ctx, int b1, int b2, int p1, int p2);

// Contribution of one leg with insertion class c, flag value a, attached
// to a p-decorated vertex.
ExtElem leg_contribution(const CohftContext& ctx, int c, int a, int p);
CycSeries leg_contribution_series(const CohftContext& ctx, int c, int a, int p);

struct Potential {
    int genus = 0;
    std::vector<int> insertions;
    ExtElem value;      // graph sum in the C3-eliminated ring
    CycSeries series;   // all-series graph sum (independent of `value`)
    long graph_count = 0;
    long decorated_count = 0;
    long assignment_count = 0;
};

// The full decorated-graph sum; jobs > 1 parallelizes over decorated
// graphs with a deterministic combine.
Potential compute_potential(const CohftContext& ctx, int genus, const std::vector<int>& insertions,
                            int jobs = 1);

// d^k/dT^k of a vacuum potential, computed both as the graph sum with k
// extra phi_1 legs and by the series-side chain rule (D/C1)^k; returns
// the graph-side potential after asserting the two agree.
struct TDerivativeResult {
    Potential graph_side;
    CycSeries series_side;
    bool pipelines_agree = false;
};
TDerivativeResult t_derivative(const CohftContext& ctx, const Potential& base, int k,
                               int jobs = 1);

// Edge symmetry under half-edge swap for all decorations, b1+b2 <= cap.
Report check_edge_symmetry(const CohftContext& ctx, int cap);

// Telescoped closed forms of dCont(e)/dA2 and dCont(e)/d(D2A1) against
// the direct partials, b1+b2 <= cap, all decorations.
Report check_edge_derivative_lemmas(const CohftContext& ctx, int cap);

struct HaeOptions {
    Rat half_factor = rat(1, 2);  // negative-control knob for the RHS weights
    int jobs = 1;
};

// Both holomorphic anomaly equations at genus g, as exact identities in
// the C3-eliminated ring and as series identities through mirror order.
Report check_hae(const CohftContext& ctx, int genus, const HaeOptions& opts = {});

// Theta-expansion of a potential's series form through degree d_max:
// substitutes x = T^{-1}(Theta) and returns d! times the Theta^d
// coefficients.  `all_rational` reports whether every coefficient lies
// in Q (observed, not assumed).
std::vector<Cyc> gw_expansion(const CohftContext& ctx, const CycSeries& f, int d_max,
                              bool* all_rational = nullptr);

}  // namespace qz5
