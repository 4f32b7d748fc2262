#include "doctest.h"

#include "qz5/cyclotomic.hpp"

#include <complex>
#include <random>

using namespace qz5;

namespace {

Cyc random_cyc(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    std::array<Rat, 4> c;
    for (auto& x : c) x = rat(num(rng), den(rng));
    return Cyc(c);
}

}  // namespace

TEST_SUITE("cyclotomic") {

TEST_CASE("zeta powers and the minimal polynomial") {
    Cyc z = Cyc::zeta();
    CHECK(Cyc::zeta_pow(0) == Cyc(1));
    CHECK(Cyc::zeta_pow(7) == Cyc::zeta_pow(2));
    CHECK(Cyc::zeta_pow(-1) == Cyc::zeta_pow(4));
    CHECK(z * Cyc::zeta_pow(4) == Cyc(1));
    CHECK(Cyc::zeta_pow(2) * Cyc::zeta_pow(2) == Cyc::zeta_pow(4));

    // 1 + z + z^2 + z^3 + z^4 annihilates everything.
    Cyc s;
    for (int i = 0; i < 5; ++i) s += Cyc::zeta_pow(i);
    CHECK(s.is_zero());
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) CHECK((s * random_cyc(rng)).is_zero());

    // z^4 in coordinates is -(1 + z + z^2 + z^3).
    Cyc z4 = Cyc::zeta_pow(4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(z4.coord(i) == Rat(-1));
}

TEST_CASE("inverses") {
    CHECK(Cyc::zeta().inv() == Cyc::zeta_pow(4));
    CHECK(Cyc(2).inv() == Cyc(Rat(1, 2)));
    Cyc a = Cyc(1) + Cyc::zeta();
    Cyc b = a.inv();
    CHECK(a * b == Cyc(1));
    // Frozen from the extended-Euclid computation in Q[t]/(1+t+t^2+t^3+t^4).
    CHECK(b == Cyc(std::array<Rat, 4>{Rat(0), Rat(-1), Rat(0), Rat(-1)}));
    CHECK_THROWS_AS(Cyc(0).inv(), std::domain_error);

    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        Cyc x = random_cyc(rng);
        if (x.is_zero()) continue;
        CHECK(x * x.inv() == Cyc(1));
        CHECK(x.inv().inv() == x);
    }
}

TEST_CASE("field laws on random elements") {
    std::mt19937 rng(11);
    for (int t = 0; t < 60; ++t) {
        Cyc a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (b + c) == (a + b) + c);
    }
}

TEST_CASE("zeta -> zeta^2 is a field automorphism") {
    std::mt19937 rng(13);
    for (int t = 0; t < 40; ++t) {
        Cyc a = random_cyc(rng), b = random_cyc(rng);
        CHECK((a * b).galois(2) == a.galois(2) * b.galois(2));
        CHECK((a + b).galois(2) == a.galois(2) + b.galois(2));
    }
    CHECK(Cyc::zeta().galois(2) == Cyc::zeta_pow(2));
}

TEST_CASE("numeric embedding maps exact identities to tiny residuals") {
    std::mt19937 rng(17);
    for (int t = 0; t < 25; ++t) {
        Cyc a = random_cyc(rng), b = random_cyc(rng);
        std::complex<double> lhs = (a * b).embed();
        std::complex<double> rhs = a.embed() * b.embed();
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
    CHECK(std::abs(Cyc::zeta().embed() -
                   std::polar(1.0, 2.0 * 3.14159265358979323846 / 5.0)) < 1e-9);
}

}  // TEST_SUITE
