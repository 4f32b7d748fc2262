#pragma once

// Exact arbitrary-precision integers and rationals, backed by GMP.
// Everything downstream (cyclotomic numbers, series, ring elements)
// is built on Rat; no floating point enters any computation path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qz5 {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// p^e for integer e (e < 0 allowed when p != 0).
inline Rat rat_pow(const Rat& p, long e) {
    if (e == 0) return Rat(1);
    if (p == 0) {
        if (e < 0) throw std::domain_error("rat_pow: 0^negative");
        return Rat(0);
    }
    Rat base = e > 0 ? p : Rat(1) / p;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// (2k+1)!!; k = -1 gives the empty product 1.
inline Int dfact_odd(long k) {
    if (k < 0) return Int(1);
    Int f;
    mpz_2fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * k + 1));
    return f;
}

// "num/den" in lowest terms; integers render as "n/1" for a uniform schema.
inline std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

}  // namespace qz5
