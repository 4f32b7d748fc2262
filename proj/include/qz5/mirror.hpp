#pragma once

// Hypergeometric-type series attached to the small I-function of the
// quotient [C^5/Z_5]: the mirror map T, the distinguished series L, the
// normalizations C1, C2, C3 and the derived generators X1, X2, A1, A2,
// B1..B4, K0..K4, together with the identity battery relating them.
//
// All series are exact rational truncations; identities are certified
// coefficient-by-coefficient through a requested order.

#include "qz5/report.hpp"
#include "qz5/series.hpp"

#include <array>
#include <vector>

namespace qz5 {

struct MirrorData {
    int order;        // identities certified through x^order
    int build_order;  // internal truncation (order + slack for window erosion)

    std::vector<RatSeries> I;  // I[k] for 0 <= k <= build_order
    RatSeries T;               // mirror map, = I[1]
    RatSeries L;
    RatSeries C1, C2, C3;
    RatSeries X1, X2;
    RatSeries A1, A2;
    RatSeries M;                  // 1 - L^5/5^5 = DL/L
    std::array<RatSeries, 5> B;   // B[i] = 5^-i (D+X1)^(i-1) X1, i = 1..4
    std::array<RatSeries, 5> K;   // K[0]=1, K1=C1, K2=C1C2, K3=C1C2C3, K4=C1C2^2C3
};

// Builds every series through x^(order + slack).  Throws if a defining
// division hits a vanishing leading coefficient.
MirrorData build_mirror(int order, int slack = 40);

// Residuals of all stated identities among the mirror series; each entry
// passes iff the residual vanishes identically through x^order.
Report check_mirror_identities(const MirrorData& m);

// Independent construction of I_j (j=1..4) coefficients from the closed
// Gamma-ratio product; used as a cross-check oracle against the z-graded
// expansion that build_mirror performs.
Rat i_series_gamma_route(int j, int q);

}  // namespace qz5
