#include "qz5/mirror.hpp"

#include <stdexcept>

namespace qz5 {

namespace {

// Expand the k-th I-function term's b-product as a polynomial in z^5 and
// bin each z-degree into the I_t it belongs to (t = k - 5s >= 0 always;
// asserted).  The b-range is { (5m + k mod 5)/5 : 0 <= m < floor(k/5) },
// i.e. the rationals below k/5 with the same fractional part.
void accumulate_i_terms(int k, std::vector<std::vector<Rat>>& coeffs) {
    int q = k / 5;
    int j = k % 5;
    std::vector<Rat> pz{Rat(1)};  // polynomial in w = z^5
    pz.reserve(static_cast<std::size_t>(q) + 1);
    for (int m = 0; m < q; ++m) {
        Rat b = rat(5 * m + j, 5);
        Rat b5 = rat_pow(b, 5);
        std::vector<Rat> next(pz.size() + 1, Rat(0));
        for (std::size_t s = 0; s < pz.size(); ++s) {
            next[s] += pz[s];
            next[s + 1] -= pz[s] * b5;
        }
        pz = std::move(next);
    }
    Rat inv_fact = Rat(1) / Rat(factorial(static_cast<unsigned long>(k)));
    for (std::size_t s = 0; s < pz.size(); ++s) {
        if (pz[s] == 0) continue;
        long t = k - 5 * static_cast<long>(s);
        if (t < 0)
            throw std::logic_error("I-function expansion produced a positive power of z");
        if (t < static_cast<long>(coeffs.size()))
            coeffs[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = pz[s] * inv_fact;
    }
}

RatSeries from_coeffs(std::vector<Rat> c, int hi) {
    c.resize(static_cast<std::size_t>(hi) + 1, Rat(0));
    return RatSeries(0, hi, std::move(c));
}

}  // namespace

Rat i_series_gamma_route(int j, int q) {
    // Coefficient of x^(5q+j) in I_j: (-1)^q / (5q+j)! * (Gamma(q+j/5)/Gamma(j/5))^5,
    // the Gamma ratio evaluated as the exact product prod_{b=0}^{q-1} (b + j/5).
    Rat prod(1);
    for (int b = 0; b < q; ++b) prod *= Rat(b) + Rat(j, 5);
    Rat val = rat_pow(prod, 5) / Rat(factorial(static_cast<unsigned long>(5 * q + j)));
    return (q % 2 == 0) ? val : -val;
}

MirrorData build_mirror(int order, int slack) {
    if (order < 10) throw std::invalid_argument("build_mirror: order must be >= 10");
    MirrorData m;
    m.order = order;
    m.build_order = order + slack;
    const int nb = m.build_order;

    std::vector<std::vector<Rat>> icoeffs(
        static_cast<std::size_t>(nb) + 1,
        std::vector<Rat>(static_cast<std::size_t>(nb) + 1, Rat(0)));
    for (int k = 0; k <= nb; ++k) accumulate_i_terms(k, icoeffs);
    m.I.reserve(static_cast<std::size_t>(nb) + 1);
    for (int t = 0; t <= nb; ++t) m.I.push_back(from_coeffs(std::move(icoeffs[static_cast<std::size_t>(t)]), nb));

    m.T = m.I[1];

    // L = x (1 + (x/5)^5)^(-1/5)
    RatSeries one_plus = RatSeries::constant(Rat(1), nb) +
                         RatSeries::monomial(Rat(1, 3125), 5, nb);
    m.L = one_plus.frac_pow(Rat(-1, 5)).shifted(1);

    m.C1 = m.I[1].d_op();
    if (m.C1.val() != 1) throw std::runtime_error("mirror: C1 must have a simple zero at x=0");
    m.C2 = (m.I[2].d_op() / m.C1).d_op();
    if (m.C2.val() != 1) throw std::runtime_error("mirror: C2 must have a simple zero at x=0");
    m.C3 = ((m.I[3].d_op() / m.C1).d_op() / m.C2).d_op();
    if (m.C3.val() != 1) throw std::runtime_error("mirror: C3 must have a simple zero at x=0");

    m.M = RatSeries::constant(Rat(1), nb) - m.L.pow_int(5).scaled(Rat(1, 3125));
    m.X1 = m.C1.d_op() / m.C1;
    m.X2 = m.C2.d_op() / m.C2;
    RatSeries Linv = m.L.mul_inv();
    m.A1 = (m.M - m.X1) * Linv;
    m.A2 = (m.M.scaled(Rat(2)) - m.X1 - m.X2) * Linv;

    m.B[0] = RatSeries::zero(nb);  // unused slot
    RatSeries acc = m.X1;          // (D+X1)^(i-1) X1
    for (int i = 1; i <= 4; ++i) {
        m.B[static_cast<std::size_t>(i)] = acc.scaled(rat_pow(Rat(1, 5), i));
        if (i < 4) acc = acc.d_op() + m.X1 * acc;
    }

    m.K[0] = RatSeries::constant(Rat(1), nb);
    m.K[1] = m.C1;
    m.K[2] = m.C1 * m.C2;
    m.K[3] = m.K[2] * m.C3;
    m.K[4] = m.K[2] * m.C2 * m.C3;
    return m;
}

Report check_mirror_identities(const MirrorData& m) {
    Report rep;
    const int N = m.order;
    auto zero_check = [&](const std::string& name, const RatSeries& resid) {
        bool ok = false;
        std::string detail;
        try {
            ok = resid.vanishes_through(N);
            detail = "through x^" + std::to_string(N);
        } catch (const order_error& e) {
            detail = e.what();
        }
        rep.add(name, ok, detail);
    };

    zero_check("DL/L = 1 - L^5/5^5", m.L.d_op() / m.L - m.M);
    zero_check("C1^2 C2^2 C3 = L^5",
               m.C1.pow_int(2) * m.C2.pow_int(2) * m.C3 - m.L.pow_int(5));

    // B4 = (1 - L^5/5^5)(2 B3 - 7/5 B2 + 2/5 B1 - 24/625)
    {
        RatSeries rhs = m.B[3].scaled(Rat(2)) - m.B[2].scaled(Rat(7, 5)) +
                        m.B[1].scaled(Rat(2, 5)) -
                        RatSeries::constant(Rat(24, 625), m.build_order);
        zero_check("B4 relation", m.B[4] - m.M * rhs);
    }

    // DX2 = -10M + 10M X1 + 5M X2 - 2X1^2 - 4DX1 - 2X1X2 - X2^2
    {
        RatSeries rhs = m.M.scaled(Rat(-10)) + (m.M * m.X1).scaled(Rat(10)) +
                        (m.M * m.X2).scaled(Rat(5)) - (m.X1 * m.X1).scaled(Rat(2)) -
                        m.X1.d_op().scaled(Rat(4)) - (m.X1 * m.X2).scaled(Rat(2)) -
                        m.X2 * m.X2;
        zero_check("DX2 relation", m.X2.d_op() - rhs);
    }

    // DA2 = L A1^2 + L A2^2 - 3 DA1 - 15 M (1-M) / L, the A-variable form
    // of the DX2 relation under the linear change below.
    {
        RatSeries one_minus_M = RatSeries::constant(Rat(1), m.build_order) - m.M;
        RatSeries rhs = m.L * m.A1 * m.A1 + m.L * m.A2 * m.A2 -
                        m.A1.d_op().scaled(Rat(3)) -
                        (m.M * one_minus_M * m.L.mul_inv()).scaled(Rat(15));
        zero_check("DA2 in A-variables", m.A2.d_op() - rhs);
    }

    zero_check("X1 = (1 - L^5/5^5) - L A1", m.X1 - (m.M - m.L * m.A1));
    zero_check("X2 = (1 - L^5/5^5) + L A1 - L A2",
               m.X2 - (m.M + m.L * m.A1 - m.L * m.A2));

    // B_i against independently expanded closed forms of (D+X1)^(i-1) X1.
    {
        RatSeries dx1 = m.X1.d_op();
        RatSeries d2x1 = dx1.d_op();
        RatSeries d3x1 = d2x1.d_op();
        zero_check("B1 closed form", m.B[1] - m.X1.scaled(Rat(1, 5)));
        zero_check("B2 closed form",
                   m.B[2] - (dx1 + m.X1 * m.X1).scaled(Rat(1, 25)));
        zero_check("B3 closed form",
                   m.B[3] - (d2x1 + (m.X1 * dx1).scaled(Rat(3)) + m.X1.pow_int(3))
                                .scaled(Rat(1, 125)));
        zero_check("B4 closed form",
                   m.B[4] - (d3x1 + (dx1 * dx1).scaled(Rat(3)) +
                             (m.X1 * d2x1).scaled(Rat(4)) +
                             (m.X1 * m.X1 * dx1).scaled(Rat(6)) + m.X1.pow_int(4))
                                .scaled(Rat(1, 625)));
    }

    rep.add("T(0) = 0", m.T.coeff(0) == 0);
    rep.add("T'(0) = 1", m.T.coeff(1) == 1);
    rep.add("I_0 = 1", (m.I[0] - RatSeries::constant(Rat(1), m.build_order))
                           .vanishes_through(N));

    // K-series consistency with the L^5 identity: K_i K_{5-i} = L^i L^(5-i)/... ,
    // equivalently (L^i/K_i)(L^(5-i)/K_(5-i)) = 1 for i = 1..4.
    for (int i = 1; i <= 2; ++i) {
        RatSeries lhs = m.K[static_cast<std::size_t>(i)] *
                        m.K[static_cast<std::size_t>(5 - i)];
        zero_check("K" + std::to_string(i) + " K" + std::to_string(5 - i) + " = L^5",
                   lhs - m.L.pow_int(5));
    }
    return rep;
}

}  // namespace qz5
