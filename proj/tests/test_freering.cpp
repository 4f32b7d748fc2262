#include "doctest.h"

#include "qz5/freering.hpp"

#include <random>

using namespace qz5;

namespace {

const MirrorData& mirror() {
    static MirrorData m = build_mirror(24, 20);
    return m;
}

const EvalBasis& basis() {
    static EvalBasis b(mirror());
    return b;
}

LaurentL random_laurent(std::mt19937& rng, int span = 6) {
    std::uniform_int_distribution<int> exp(-span, span);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    LaurentL l;
    for (int t = 0; t < 4; ++t)
        l += LaurentL::monomial(Cyc(rat(num(rng), den(rng))), exp(rng));
    return l;
}

FElem random_felem(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(0, 2);
    FElem f;
    for (int t = 0; t < 3; ++t) {
        Mono m{};
        m[GA1] = deg(rng);
        m[GDA1] = deg(rng) / 2;
        m[GD2A1] = deg(rng) / 2;
        m[GA2] = deg(rng);
        f += FElem::term(m, random_laurent(rng, 3));
    }
    return f;
}

bool eval_commutes_with_d(const FElem& f, int through) {
    CycSeries lhs = f.d().eval(basis());
    CycSeries rhs = f.eval(basis()).d_op();
    return (lhs - rhs).vanishes_through(through);
}

}  // namespace

TEST_SUITE("freering") {

TEST_CASE("LaurentL: D and its triangular inverse") {
    std::mt19937 rng(101);
    for (int t = 0; t < 30; ++t) {
        LaurentL s = random_laurent(rng);
        LaurentL c = s.d();
        LaurentL back = c.d_inv();
        // d_inv picks the kernel representative with zero L^0 term.
        LaurentL expect = s - LaurentL(s.coeff(0));
        CHECK(back == expect);
    }
    // D L = L - L^6/5^5.
    LaurentL dl = LaurentL::monomial(Cyc(1), 1).d();
    CHECK(dl.coeff(1) == Cyc(1));
    CHECK(dl.coeff(6) == Cyc(rat(-1, 3125)));
    // A bare constant is not integrable in C[L^±1].
    CHECK_THROWS_AS(LaurentL(Cyc(1)).d_inv(), std::domain_error);
    // Nor is L^10 alone (the descent forces a nonzero L^5 term whose own
    // equation then fails).
    CHECK_THROWS_AS(LaurentL::monomial(Cyc(1), 10).d_inv(), std::domain_error);
    // But D of anything is integrable, including the L^5-chain crossings.
    LaurentL probe = LaurentL::monomial(Cyc(2), -5) + LaurentL::monomial(Cyc(3), 5);
    CHECK(probe.d().d_inv() == probe);
}

TEST_CASE("derived DA2 rule matches the closed form and the series oracle") {
    const DRules& r = drules();
    FElem expect = FElem::generator(GA1).pow_int(2).mul_laurent(LaurentL::monomial(Cyc(1), 1)) +
                   FElem::generator(GA2).pow_int(2).mul_laurent(LaurentL::monomial(Cyc(1), 1)) -
                   FElem::generator(GDA1).scaled(Rat(3)) -
                   FElem(LaurentL::monomial(Cyc(rat(3, 625)), 4) -
                         LaurentL::monomial(Cyc(rat(3, 1953125)), 9));
    CHECK(r.da2 == expect);

    CycSeries lhs = r.da2.eval(basis());
    CycSeries rhs = basis().A2.d_op();
    CHECK((lhs - rhs).vanishes_through(mirror().order));
}

TEST_CASE("derived D3A1 rule against the series oracle") {
    const DRules& r = drules();
    CHECK(r.d3a1.degree_in(GA2) == 0);  // closure stays inside C[L^±1][A1,DA1,D2A1]
    CycSeries lhs = r.d3a1.eval(basis());
    CycSeries rhs = basis().D2A1.d_op();
    CHECK((lhs - rhs).vanishes_through(mirror().order - 1));
}

TEST_CASE("generator images of D") {
    CHECK(FElem::generator(GA1).d() == FElem::generator(GDA1));
    CHECK(FElem::generator(GDA1).d() == FElem::generator(GD2A1));
    FElem dl = FElem::l_monomial(Cyc(1), 1).d();
    CHECK(dl == FElem(LaurentL::monomial(Cyc(1), 1) + LaurentL::monomial(Cyc(rat(-1, 3125)), 6)));
}

TEST_CASE("D is a derivation on F") {
    std::mt19937 rng(103);
    for (int t = 0; t < 10; ++t) {
        FElem f = random_felem(rng), g = random_felem(rng);
        CHECK((f * g).d() == f.d() * g + f * g.d());
    }
}

TEST_CASE("evaluation commutes with D on the spec's probe set") {
    FElem a2 = FElem::generator(GA2);
    FElem d2a1 = FElem::generator(GD2A1);
    FElem a1a2 = FElem::generator(GA1) * FElem::generator(GA2);
    FElem linv_da1 = FElem::generator(GDA1).mul_laurent(LaurentL::monomial(Cyc(1), -1));
    int thr = mirror().order - 2;
    CHECK(eval_commutes_with_d(a2, thr));
    CHECK(eval_commutes_with_d(d2a1, thr));
    CHECK(eval_commutes_with_d(a1a2, thr));
    CHECK(eval_commutes_with_d(linv_da1, thr));
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(107);
    for (int t = 0; t < 6; ++t) {
        FElem f = random_felem(rng), g = random_felem(rng);
        CycSeries lhs = (f * g).eval(basis());
        CycSeries rhs = f.eval(basis()) * g.eval(basis());
        CHECK((lhs - rhs).vanishes_through(std::min(lhs.known_to(), rhs.known_to())));
    }
}

TEST_CASE("partial derivatives") {
    FElem a2sq = FElem::generator(GA2).pow_int(2);
    CHECK(a2sq.partial(GA2) == FElem::generator(GA2).scaled(Rat(2)));
    FElem l3da1 = FElem::generator(GDA1).mul_laurent(LaurentL::monomial(Cyc(1), 3));
    CHECK(l3da1.partial(GA2).is_zero());
    CHECK(FElem::generator(GD2A1).partial(GD2A1) == FElem(Cyc(1)));
    CHECK((FElem::generator(GA1) * FElem::generator(GDA1)).partial(GD2A1).is_zero());

    std::mt19937 rng(109);
    for (int t = 0; t < 10; ++t) {
        FElem f = random_felem(rng);
        CHECK(f.partial(GA2).partial(GD2A1) == f.partial(GD2A1).partial(GA2));
    }
    CHECK(FElem(random_laurent(rng)).partial(GA2).is_zero());
    CHECK(FElem(random_laurent(rng)).partial(GD2A1).is_zero());
}

TEST_CASE("ExtElem: C3-elimination is series-exact") {
    // C3 as stored: L^5 C1^-2 C2^-2; its evaluation must equal the C3 series.
    ExtElem c3 = ExtElem::c3_power(1);
    CycSeries lhs = c3.eval(basis());
    CycSeries rhs = to_cyc(mirror().C3);
    CHECK((lhs - rhs).vanishes_through(mirror().order - 2));

    // C1^2 C2^2 * (eliminated C3) evaluates to the L^5 series.
    ExtElem lhs2 = ExtElem::term(2, 2, FElem(Cyc(1))) * c3;
    CHECK(lhs2 == ExtElem(FElem::l_monomial(Cyc(1), 5)));
}

TEST_CASE("ExtElem: derivation and evaluation agree") {
    ExtElem c1 = ExtElem::term(1, 0, FElem(Cyc(1)));
    CycSeries lhs = c1.d().eval(basis());
    CycSeries rhs = basis().C1.d_op();
    CHECK((lhs - rhs).vanishes_through(mirror().order - 2));

    ExtElem mixed = ExtElem::term(-1, 1, FElem::generator(GA1));
    CycSeries lhs2 = mixed.d().eval(basis());
    CycSeries rhs2 = mixed.eval(basis()).d_op();
    CHECK((lhs2 - rhs2).vanishes_through(mirror().order - 4));
}

TEST_CASE("normal-form equality is syntactic") {
    ExtElem a = ExtElem::term(1, -1, FElem::generator(GA1));
    ExtElem b = ExtElem::term(1, -1, FElem::generator(GA1));
    CHECK(a == b);
    CHECK((a - b).is_zero());
    CHECK(a.c1_inverse_degree() == 0);
    CHECK(ExtElem::term(-3, 0, FElem(Cyc(1))).c1_inverse_degree() == 3);
}

}  // TEST_SUITE
