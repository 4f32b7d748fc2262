#include "qz5/cyclotomic.hpp"

#include <cmath>
#include <numbers>

namespace qz5 {

Cyc Cyc::zeta_pow(long n) {
    long r = n % 5;
    if (r < 0) r += 5;
    std::array<Rat, 4> c{Rat(0), Rat(0), Rat(0), Rat(0)};
    if (r < 4) {
        c[static_cast<std::size_t>(r)] = Rat(1);
    } else {
        // z^4 = -(1 + z + z^2 + z^3)
        for (auto& x : c) x = Rat(-1);
    }
    return Cyc(c);
}

bool Cyc::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyc::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

const Rat& Cyc::rational_part() const {
    if (!is_rational()) throw std::domain_error("Cyc: not rational");
    return c_[0];
}

Cyc Cyc::operator-() const {
    Cyc r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyc& Cyc::operator+=(const Cyc& o) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyc& Cyc::operator*=(const Cyc& o) {
    // Raw convolution up to z^6, then reduce z^4 = -(1+z+z^2+z^3),
    // z^5 = 1, z^6 = z.
    std::array<Rat, 7> raw;
    raw.fill(Rat(0));
    for (std::size_t i = 0; i < 4; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) {
            if (o.c_[j] == 0) continue;
            raw[i + j] += c_[i] * o.c_[j];
        }
    }
    std::array<Rat, 4> res;
    for (std::size_t i = 0; i < 4; ++i) res[i] = raw[i] - raw[4];
    res[0] += raw[5];
    res[1] += raw[6];
    c_ = res;
    return *this;
}

Cyc Cyc::galois(long k) const {
    long r = ((k % 5) + 5) % 5;
    if (r == 0) throw std::domain_error("Cyc::galois: exponent divisible by 5");
    Cyc out;
    for (long i = 0; i < 4; ++i) {
        if (c_[static_cast<std::size_t>(i)] == 0) continue;
        out += Cyc(c_[static_cast<std::size_t>(i)]) * zeta_pow(i * r);
    }
    return out;
}

Rat Cyc::norm() const {
    Cyc n = *this * galois(2) * galois(3) * galois(4);
    return n.rational_part();
}

Cyc Cyc::inv() const {
    if (is_zero()) throw std::domain_error("Cyc::inv: division by zero");
    Cyc conj = galois(2) * galois(3) * galois(4);
    Rat n = (*this * conj).rational_part();
    Cyc r = conj;
    Rat s = Rat(1) / n;
    return Cyc(s) * r;
}

std::complex<double> Cyc::embed() const {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < 4; ++i) {
        double arg = 2.0 * std::numbers::pi * static_cast<double>(i) / 5.0;
        acc += c_[i].get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

std::string Cyc::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) s += ", ";
        s += rat_to_string(c_[i]);
    }
    return s + ")";
}

}  // namespace qz5
