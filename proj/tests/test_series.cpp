#include "doctest.h"

#include "qz5/series.hpp"

#include <random>

using namespace qz5;

namespace {

RatSeries random_series(std::mt19937& rng, int lo, int hi, bool unit_lead = false) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    std::vector<Rat> c;
    for (int e = lo; e <= hi; ++e) c.push_back(rat(num(rng), den(rng)));
    if (unit_lead && !c.empty() && c[0] == 0) c[0] = Rat(1);
    return RatSeries(lo, hi, std::move(c));
}

// Lagrange inversion: [x^n] g = (1/n) [w^(n-1)] (w / f(w))^n, an oracle
// independent of the coefficient-solving path used by revert().
Rat lagrange_coeff(const RatSeries& f, int n) {
    RatSeries base = RatSeries::x(f.known_to()) / f;  // w / f(w)
    RatSeries p = base.pow_int(n);
    return p.coeff(n - 1) / Rat(n);
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("d_op basics") {
    RatSeries one = RatSeries::constant(Rat(1), 10);
    CHECK(one.d_op().vanishes_through(10));
    RatSeries x3 = RatSeries::monomial(Rat(1), 3, 10);
    CHECK((x3.d_op() - x3.scaled(Rat(3))).vanishes_through(10));
    RatSeries f = RatSeries::monomial(Rat(1), 1, 10) + RatSeries::monomial(Rat(2), 2, 10);
    RatSeries expect = RatSeries::monomial(Rat(1), 1, 10) + RatSeries::monomial(Rat(4), 2, 10);
    CHECK((f.d_op() - expect).vanishes_through(10));
}

TEST_CASE("D is a derivation") {
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        RatSeries f = random_series(rng, 0, 14);
        RatSeries g = random_series(rng, 1, 14);
        RatSeries lhs = (f * g).d_op();
        RatSeries rhs = f.d_op() * g + f * g.d_op();
        CHECK((lhs - rhs).vanishes_through(std::min(lhs.known_to(), rhs.known_to())));
    }
}

TEST_CASE("mul_inv round trips") {
    RatSeries one = RatSeries::constant(Rat(1), 12);
    CHECK((one.mul_inv() - one).vanishes_through(12));
    RatSeries f = one - RatSeries::x(12);
    RatSeries inv = f.mul_inv();
    for (int e = 0; e <= 12; ++e) CHECK(inv.coeff(e) == 1);  // geometric series
    CHECK((f * inv - one).vanishes_through(11));

    std::mt19937 rng(29);
    for (int t = 0; t < 20; ++t) {
        RatSeries g = random_series(rng, 0, 15, /*unit_lead=*/true);
        RatSeries r = g * g.mul_inv();
        CHECK((r - RatSeries::constant(Rat(1), r.known_to())).vanishes_through(r.known_to()));
    }
    CHECK_THROWS_AS(RatSeries::zero(8).mul_inv(), std::domain_error);
}

TEST_CASE("revert: identity, frozen example, Lagrange oracle, round trip") {
    RatSeries x = RatSeries::x(10);
    CHECK((x.revert() - x).vanishes_through(10));

    RatSeries f = RatSeries::x(8) + RatSeries::monomial(Rat(1), 2, 8);
    RatSeries g = f.revert();
    // x - x^2 + 2x^3 - 5x^4 + 14x^5 ... (signed Catalan numbers)
    CHECK(g.coeff(1) == 1);
    CHECK(g.coeff(2) == -1);
    CHECK(g.coeff(3) == 2);
    CHECK(g.coeff(4) == -5);
    CHECK(g.coeff(5) == 14);
    for (int n = 1; n <= 8; ++n) CHECK(g.coeff(n) == lagrange_coeff(f, n));

    std::mt19937 rng(31);
    for (int t = 0; t < 10; ++t) {
        RatSeries h = random_series(rng, 1, 12, /*unit_lead=*/true);
        RatSeries hinv = h.revert();
        RatSeries comp = h.compose(hinv);
        CHECK((comp - RatSeries::x(comp.known_to())).vanishes_through(comp.known_to()));
        for (int n = 1; n <= 6; ++n) CHECK(hinv.coeff(n) == lagrange_coeff(h, n));
    }

    CHECK_THROWS_AS(RatSeries::constant(Rat(1), 5).revert(), std::domain_error);
}

TEST_CASE("frac_pow: trivial, square, binomial oracle") {
    RatSeries one = RatSeries::constant(Rat(1), 9);
    CHECK((one.frac_pow(Rat(-1, 5)) - one).vanishes_through(9));

    RatSeries f = one + RatSeries::x(9);
    RatSeries sq = f.frac_pow(Rat(2));
    CHECK(sq.coeff(0) == 1);
    CHECK(sq.coeff(1) == 2);
    CHECK(sq.coeff(2) == 1);
    for (int e = 3; e <= 9; ++e) CHECK(sq.coeff(e) == 0);

    // (1 + (x/5)^5)^(-1/5) = 1 - x^5/5^6 + 3 x^10/(25*5^10) - ...
    RatSeries g = RatSeries::constant(Rat(1), 15) + RatSeries::monomial(Rat(1, 3125), 5, 15);
    RatSeries h = g.frac_pow(Rat(-1, 5));
    CHECK(h.coeff(0) == 1);
    CHECK(h.coeff(5) == Rat(-1) / Rat(15625));
    CHECK(h.coeff(10) == Rat(3) / (Rat(25) * rat_pow(Rat(5), 10)));

    // Generic binomial-series oracle: (1+x)^p coefficient k is binom(p, k).
    Rat p(3, 7);
    RatSeries bp = f.frac_pow(p);
    Rat binom(1);
    for (int k = 0; k <= 9; ++k) {
        CHECK(bp.coeff(k) == binom);
        binom *= (p - k) / Rat(k + 1);
    }

    // frac_pow undoes pow_int: (f^3)^(1/3) = f for unit constant term.
    std::mt19937 rng(37);
    for (int t = 0; t < 8; ++t) {
        RatSeries u = random_series(rng, 1, 10);
        RatSeries base = RatSeries::constant(Rat(1), 10) + u;
        RatSeries back = base.pow_int(3).frac_pow(Rat(1, 3));
        CHECK((back - base).vanishes_through(back.known_to()));
    }
}

TEST_CASE("operations commute with truncation") {
    std::mt19937 rng(41);
    for (int t = 0; t < 12; ++t) {
        RatSeries f = random_series(rng, 0, 16, true);
        RatSeries g = random_series(rng, 1, 16);
        int M = 9;
        CHECK(((f * g).truncated(M) - f.truncated(M) * g.truncated(M))
                  .vanishes_through(std::min((f.truncated(M) * g.truncated(M)).known_to(), M)));
        CHECK((f.mul_inv().truncated(M) - f.truncated(M).mul_inv()).vanishes_through(M));
        CHECK((f.d_op().truncated(M) - f.truncated(M).d_op()).vanishes_through(M));
    }
}

TEST_CASE("Laurent windows: negative exponents and valuation tracking") {
    RatSeries f = RatSeries::x(10);               // x, window [1,10]
    RatSeries finv = f.mul_inv();                 // 1/x, window [-1, 8]
    CHECK(finv.lo() == -1);
    CHECK(finv.coeff(-1) == 1);
    RatSeries prod = f * finv;
    CHECK((prod - RatSeries::constant(Rat(1), prod.known_to())).vanishes_through(prod.known_to()));

    // Requesting a coefficient beyond the certified window must throw.
    CHECK_THROWS_AS(finv.coeff(9), order_error);
}

TEST_CASE("d_inv inverts d_op up to the integration constant") {
    std::mt19937 rng(43);
    for (int t = 0; t < 10; ++t) {
        RatSeries f = random_series(rng, -3, 12);
        RatSeries df = f.d_op();
        RatSeries back = df.d_inv(f.coeff(0));
        CHECK((back - f).vanishes_through(12));
    }
    CHECK_THROWS_AS(RatSeries::constant(Rat(1), 5).d_inv(Rat(0)), std::domain_error);
}

}  // TEST_SUITE
