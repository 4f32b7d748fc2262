#include "doctest.h"

#include "qz5/mirror.hpp"

using namespace qz5;

namespace {

const MirrorData& mirror30() {
    static MirrorData m = build_mirror(30, 20);
    return m;
}

}  // namespace

TEST_SUITE("mirror") {

TEST_CASE("I-series: direct expansion matches stated coefficients") {
    const MirrorData& m = mirror30();
    // I_0 = 1 exactly.
    CHECK((m.I[0] - RatSeries::constant(Rat(1), m.build_order)).vanishes_through(m.order));
    // I_1 = x - x^6/2250000 + ...
    CHECK(m.I[1].coeff(1) == 1);
    CHECK(m.I[1].coeff(6) == Rat(-1, 2250000));
    // I_2 = x^2/2 + O(x^7)
    CHECK(m.I[2].coeff(2) == Rat(1, 2));
    for (int e = 0; e <= 6; ++e)
        if (e != 2) CHECK(m.I[2].coeff(e) == 0);
}

TEST_CASE("I-series: Gamma-ratio product route agrees") {
    const MirrorData& m = mirror30();
    for (int j = 1; j <= 4; ++j) {
        for (int q = 0; 5 * q + j <= m.order; ++q) {
            CHECK(m.I[static_cast<std::size_t>(j)].coeff(5 * q + j) ==
                  i_series_gamma_route(j, q));
        }
    }
}

TEST_CASE("frozen leading coefficients of L, C1, C2") {
    const MirrorData& m = mirror30();
    CHECK(m.L.coeff(1) == 1);
    CHECK(m.L.coeff(6) == Rat(-1, 15625));
    CHECK(m.L.coeff(11) == Rat(3) / (Rat(25) * rat_pow(Rat(5), 10)));
    CHECK(m.C1.coeff(1) == 1);
    CHECK(m.C1.coeff(6) == Rat(-1, 375000));
    // X1 = DC1/C1 has constant coefficient 1.
    CHECK(m.X1.coeff(0) == 1);
    CHECK(m.X1.val() == 0);
}

TEST_CASE("identity battery passes through the requested order") {
    const MirrorData& m = mirror30();
    Report rep = check_mirror_identities(m);
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("mirror map is a formal coordinate change") {
    const MirrorData& m = mirror30();
    CHECK(m.T.coeff(0) == 0);
    CHECK(m.T.coeff(1) == 1);
    RatSeries back = m.T.compose(m.T.revert());
    CHECK((back - RatSeries::x(back.known_to())).vanishes_through(back.known_to()));
}

TEST_CASE("C2 inverse really inverts: mul_inv(C1) * C1 = 1") {
    const MirrorData& m = mirror30();
    RatSeries r = m.C1.mul_inv() * m.C1;
    CHECK((r - RatSeries::constant(Rat(1), r.known_to())).vanishes_through(m.order - 2));
}

}  // TEST_SUITE
