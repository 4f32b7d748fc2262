#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_5).
//
// Elements are stored in the power basis {1, z, z^2, z^3} of
// Q[z]/(1 + z + z^2 + z^3 + z^4), with z^4 eagerly reduced to
// -(1 + z + z^2 + z^3).  The representation is a normal form, so
// equality and zero tests are coordinate-wise.

#include "qz5/rational.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <string>

namespace qz5 {

class Cyc {
  public:
    Cyc() = default;
    Cyc(const Rat& r) : c_{r, Rat(0), Rat(0), Rat(0)} {}
    Cyc(long n) : Cyc(Rat(n)) {}
    explicit Cyc(std::array<Rat, 4> c) : c_(std::move(c)) {}

    // zeta^n for any integer n (reduced mod 5).
    static Cyc zeta_pow(long n);
    static Cyc zeta() { return zeta_pow(1); }

    const Rat& coord(std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational(); returns the Q-part.
    const Rat& rational_part() const;

    Cyc operator-() const;
    Cyc& operator+=(const Cyc& o);
    Cyc& operator-=(const Cyc& o);
    Cyc& operator*=(const Cyc& o);

    friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
    friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
    friend Cyc operator*(Cyc a, const Cyc& b) { return a *= b; }

    // Multiplicative inverse; throws std::domain_error on zero.
    Cyc inv() const;
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }

    bool operator==(const Cyc& o) const { return c_ == o.c_; }
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    // Field automorphism z -> z^k, gcd(k,5)=1.
    Cyc galois(long k) const;

    // Norm to Q (product of the four Galois conjugates).
    Rat norm() const;

    // Numeric embedding z -> exp(2*pi*i/5); smoke tests only, never truth.
    std::complex<double> embed() const;

    std::string to_string() const;

  private:
    std::array<Rat, 4> c_{Rat(0), Rat(0), Rat(0), Rat(0)};
};

inline Cyc operator*(const Rat& r, Cyc a) { return a *= Cyc(r); }

}  // namespace qz5
