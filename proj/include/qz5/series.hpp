#pragma once

// Truncated formal Laurent series in x over an exact coefficient field
// (Rat or Cyc).  A series stores the exact coefficients of x^lo .. x^hi
// and guarantees nothing above x^hi.  Every operation tracks the window
// of exponents it can still certify, so "this identity holds through
// order N" is a checked statement, never an assumption.
//
// D = x d/dx is the derivation used throughout; it preserves windows.

#include "qz5/cyclotomic.hpp"
#include "qz5/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace qz5 {

struct order_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool ring_is_zero(const Rat& x) { return x == 0; }
inline bool ring_is_zero(const Cyc& x) { return x.is_zero(); }
inline Rat ring_inv(const Rat& x) {
    if (x == 0) throw std::domain_error("ring_inv: zero");
    return Rat(1) / x;
}
inline Cyc ring_inv(const Cyc& x) { return x.inv(); }
inline std::string ring_to_string(const Rat& x) { return rat_to_string(x); }
inline std::string ring_to_string(const Cyc& x) { return x.to_string(); }

template <class K>
class BasicSeries {
  public:
    // Zero series known through x^hi.
    static BasicSeries zero(int hi) { return BasicSeries(hi + 1, hi, {}); }

    static BasicSeries constant(K v, int hi) {
        if (hi < 0) return zero(hi);
        BasicSeries s(0, hi, std::vector<K>(static_cast<std::size_t>(hi) + 1, K(0)));
        s.c_[0] = std::move(v);
        return s;
    }

    static BasicSeries monomial(K v, int e, int hi) {
        if (e > hi) return zero(hi);
        BasicSeries s(e, hi, std::vector<K>(static_cast<std::size_t>(hi - e) + 1, K(0)));
        s.c_[0] = std::move(v);
        return s;
    }

    static BasicSeries x(int hi) { return monomial(K(1), 1, hi); }

    BasicSeries() : lo_(1), hi_(0) {}
    BasicSeries(int lo, int hi, std::vector<K> c) : lo_(lo), hi_(hi), c_(std::move(c)) {
        if (static_cast<long>(c_.size()) != static_cast<long>(hi_) - lo_ + 1)
            throw std::logic_error("BasicSeries: window/storage mismatch");
    }

    int lo() const { return lo_; }
    int known_to() const { return hi_; }

    // Exact coefficient of x^e; e must lie at or below the known window.
    K coeff(int e) const {
        if (e > hi_)
            throw order_error("series coefficient x^" + std::to_string(e) +
                              " requested, known only through x^" + std::to_string(hi_));
        if (e < lo_) return K(0);
        return c_[static_cast<std::size_t>(e - lo_)];
    }

    // Smallest exponent with nonzero known coefficient; hi+1 if all known
    // coefficients vanish (a certified lower bound on the true valuation).
    int val() const {
        for (int e = lo_; e <= hi_; ++e)
            if (!ring_is_zero(c_[static_cast<std::size_t>(e - lo_)])) return e;
        return hi_ + 1;
    }

    bool known_zero() const { return val() == hi_ + 1; }

    BasicSeries truncated(int new_hi) const {
        if (new_hi >= hi_) return *this;
        if (new_hi < lo_) return zero(new_hi);
        return BasicSeries(lo_, new_hi,
                           std::vector<K>(c_.begin(), c_.begin() + (new_hi - lo_ + 1)));
    }

    BasicSeries operator-() const {
        BasicSeries r(*this);
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
        int hi = std::min(a.hi_, b.hi_);
        int lo = std::min(a.lo_, b.lo_);
        if (lo > hi) return zero(hi);
        std::vector<K> c(static_cast<std::size_t>(hi - lo) + 1, K(0));
        for (int e = lo; e <= hi; ++e) c[static_cast<std::size_t>(e - lo)] = a.at(e) + b.at(e);
        return BasicSeries(lo, hi, std::move(c));
    }

    friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) { return a + (-b); }

    friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
        int va = a.val(), vb = b.val();
        int hi = std::min(a.hi_ + vb, b.hi_ + va);
        int lo = va + vb;
        if (lo > hi) return zero(hi);
        std::vector<K> c(static_cast<std::size_t>(hi - lo) + 1, K(0));
        for (int i = va; i <= a.hi_; ++i) {
            const K& ai = a.at(i);
            if (ring_is_zero(ai)) continue;
            int jmax = std::min(b.hi_, hi - i);
            for (int j = vb; j <= jmax; ++j) {
                const K& bj = b.at(j);
                if (ring_is_zero(bj)) continue;
                c[static_cast<std::size_t>(i + j - lo)] += ai * bj;
            }
        }
        return BasicSeries(lo, hi, std::move(c));
    }

    BasicSeries& operator+=(const BasicSeries& o) { return *this = *this + o; }
    BasicSeries& operator-=(const BasicSeries& o) { return *this = *this - o; }
    BasicSeries& operator*=(const BasicSeries& o) { return *this = *this * o; }

    BasicSeries scaled(const K& k) const {
        BasicSeries r(*this);
        for (auto& v : r.c_) v = v * k;
        return r;
    }

    // Multiply by x^s.
    BasicSeries shifted(int s) const { return BasicSeries(lo_ + s, hi_ + s, c_); }

    // D = x d/dx.
    BasicSeries d_op() const {
        BasicSeries r(*this);
        for (int e = lo_; e <= hi_; ++e) r.c_[static_cast<std::size_t>(e - lo_)] = r.at(e) * K(e);
        return r;
    }

    // Right inverse of D: requires zero x^0 coefficient; the x^0
    // coefficient of the result is the supplied integration constant.
    BasicSeries d_inv(const K& constant_term) const {
        if (0 >= lo_ && 0 <= hi_ && !ring_is_zero(at(0)))
            throw std::domain_error("d_inv: nonzero x^0 coefficient");
        int lo = std::min(lo_, 0);
        std::vector<K> c(static_cast<std::size_t>(hi_ - lo) + 1, K(0));
        for (int e = lo; e <= hi_; ++e)
            c[static_cast<std::size_t>(e - lo)] = e == 0 ? constant_term : at(e) * ring_inv(K(e));
        return BasicSeries(lo, hi_, std::move(c));
    }

    // Reciprocal; requires a nonzero known leading coefficient.
    BasicSeries mul_inv() const {
        int v = val();
        if (v > hi_) throw std::domain_error("mul_inv: series is zero through its known window");
        int m = hi_ - v;  // relative order of the unit part
        std::vector<K> u(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) u[static_cast<std::size_t>(i)] = at(v + i);
        std::vector<K> w(static_cast<std::size_t>(m) + 1, K(0));
        K inv0 = ring_inv(u[0]);
        w[0] = inv0;
        for (int n = 1; n <= m; ++n) {
            K acc(0);
            for (int k = 1; k <= n; ++k)
                acc += u[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(n - k)];
            w[static_cast<std::size_t>(n)] = -(inv0 * acc);
        }
        return BasicSeries(-v, hi_ - 2 * v, std::move(w));
    }

    friend BasicSeries operator/(const BasicSeries& a, const BasicSeries& b) {
        return a * b.mul_inv();
    }

    // f^p for rational p; requires constant term exactly 1.
    BasicSeries frac_pow(const Rat& p) const;

    // Integer power (negative allowed through mul_inv).
    BasicSeries pow_int(long n) const {
        if (n < 0) return mul_inv().pow_int(-n);
        BasicSeries acc = constant(K(1), hi_ + /*slack for val>0 bases*/ 0);
        // exponentiation by squaring would juggle windows; the bases here
        // are few and powers small, so iterate plainly
        BasicSeries r = acc;
        for (long i = 0; i < n; ++i) r = r * (*this);
        if (n == 0) r = constant(K(1), hi_);
        return r;
    }

    // Substitute g into this (this has lo >= 0, g has val >= 1).
    BasicSeries compose(const BasicSeries& g) const {
        if (lo_ < 0) throw std::domain_error("compose: Laurent principal part present");
        if (g.val() < 1) throw std::domain_error("compose: inner series must vanish at 0");
        int cap = std::min(hi_, g.hi_);
        BasicSeries res = zero(cap);
        for (int e = hi_; e >= 0; --e) {
            res = res * g;
            res += constant(at(e), res.known_to());
        }
        return res;
    }

    // Compositional inverse: f(revert(f)) = x.  Requires val == 1.
    BasicSeries revert() const {
        if (val() != 1) throw std::domain_error("revert: valuation must be exactly 1");
        K f1inv = ring_inv(at(1));
        int n_max = hi_;
        BasicSeries g = monomial(f1inv, 1, n_max);
        for (int n = 2; n <= n_max; ++n) {
            BasicSeries h = truncated(n).compose(g.truncated(n - 1).extended(n));
            g.c_[static_cast<std::size_t>(n - g.lo_)] = -(f1inv * h.coeff(n));
        }
        return g;
    }

    // Widen the known window with explicit zeros (caller asserts the
    // series really has no terms there; used when building exact data).
    BasicSeries extended(int new_hi) const {
        if (new_hi <= hi_) return truncated(new_hi);
        BasicSeries r(*this);
        r.c_.resize(static_cast<std::size_t>(new_hi - lo_ + 1), K(0));
        r.hi_ = new_hi;
        return r;
    }

    // All known coefficients through x^through vanish; throws order_error
    // if the window does not reach that far.
    bool vanishes_through(int through) const {
        if (hi_ < through)
            throw order_error("residual known only through x^" + std::to_string(hi_) +
                              ", x^" + std::to_string(through) + " required");
        for (int e = lo_; e <= std::min(hi_, through); ++e)
            if (!ring_is_zero(at(e))) return false;
        return true;
    }

    bool agrees_with(const BasicSeries& o, int through) const {
        return (*this - o).vanishes_through(through);
    }

    std::string to_string(int max_terms = 12) const;

  private:
    const K& at(int e) const {
        static const K kzero = K(0);
        if (e < lo_ || e > hi_) return kzero;
        return c_[static_cast<std::size_t>(e - lo_)];
    }

    int lo_;
    int hi_;
    std::vector<K> c_;
};

template <class K>
BasicSeries<K> BasicSeries<K>::frac_pow(const Rat& p) const {
    if (val() != 0 || !(at(0) == K(1)))
        throw std::domain_error("frac_pow: constant term must be 1");
    int m = hi_;
    // h = f^p from f h' = p f' h, coefficient by coefficient.
    std::vector<K> h(static_cast<std::size_t>(m) + 1, K(0));
    h[0] = K(1);
    for (int n = 1; n <= m; ++n) {
        K acc(0);
        for (int k = 1; k <= n; ++k) {
            const K& fk = at(k);
            if (ring_is_zero(fk)) continue;
            K weight = K(Rat(p * k - Rat(n - k)));
            acc += weight * fk * h[static_cast<std::size_t>(n - k)];
        }
        h[static_cast<std::size_t>(n)] = acc * ring_inv(K(Rat(n)));
    }
    return BasicSeries(0, m, std::move(h));
}

template <class K>
std::string BasicSeries<K>::to_string(int max_terms) const {
    std::string s;
    int shown = 0;
    for (int e = lo_; e <= hi_ && shown < max_terms; ++e) {
        const K& v = at(e);
        if (ring_is_zero(v)) continue;
        if (!s.empty()) s += " + ";
        s += ring_to_string(v) + "*x^" + std::to_string(e);
        ++shown;
    }
    if (s.empty()) s = "0";
    s += " (+ O(x^" + std::to_string(hi_ + 1) + "))";
    return s;
}

using RatSeries = BasicSeries<Rat>;
using CycSeries = BasicSeries<Cyc>;

inline CycSeries to_cyc(const RatSeries& s) {
    std::vector<Cyc> c;
    c.reserve(static_cast<std::size_t>(s.known_to() - s.lo() + 1));
    for (int e = s.lo(); e <= s.known_to(); ++e) c.emplace_back(s.coeff(e));
    return CycSeries(s.lo(), s.known_to(), std::move(c));
}

}  // namespace qz5
