#pragma once

// The finite-generation ring tower:
//
//   LaurentL  =  Q(zeta_5)[L^{+-1}]
//   FElem     =  LaurentL[A1, DA1, D2A1, A2]          (free as a polynomial ring)
//   ExtElem   =  FElem[C1^{+-1}, C2^{+-1}]            (C3 eliminated via C3 = L^5 C1^-2 C2^-2)
//
// D acts as a derivation: D L = L - L^6/5^5 and the images of D2A1 and A2
// close inside FElem via two rewrite rules.  Neither rule is an input:
// both are derived here, once, by formally differentiating the DX2 and
// B4 relations in a scratch ring with extra slots for D3A1 and DA2 and
// solving the (linear, unit-coefficient) occurrence of the new symbol.
// Tests regression-check the derived rules against the series oracle.

#include "qz5/mirror.hpp"
#include "qz5/series.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace qz5 {

// ---------------------------------------------------------------------------
// Laurent polynomials in L over Q(zeta_5)

class LaurentL {
  public:
    LaurentL() = default;
    explicit LaurentL(Cyc c) {
        if (!c.is_zero()) terms_[0] = std::move(c);
    }
    static LaurentL monomial(Cyc c, int e) {
        LaurentL r;
        if (!c.is_zero()) r.terms_[e] = std::move(c);
        return r;
    }

    const std::map<int, Cyc>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    Cyc constant_value() const;  // requires is_constant()

    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
    Cyc coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Cyc(0) : it->second;
    }

    LaurentL operator-() const;
    LaurentL& operator+=(const LaurentL& o);
    LaurentL& operator-=(const LaurentL& o);
    friend LaurentL operator+(LaurentL a, const LaurentL& b) { return a += b; }
    friend LaurentL operator-(LaurentL a, const LaurentL& b) { return a -= b; }
    friend LaurentL operator*(const LaurentL& a, const LaurentL& b);
    LaurentL scaled(const Cyc& c) const;

    // D with DL = L(1 - L^5/5^5):  D L^m = m L^m - (m/5^5) L^(m+5).
    LaurentL d() const;

    // Solves D s = *this in LaurentL with zero L^0 coefficient; throws
    // std::domain_error if no Laurent-polynomial solution exists (which
    // would falsify the row-0 polynomiality statement upstream).
    LaurentL d_inv() const;

    CycSeries eval(const CycSeries& Lser) const;

    bool operator==(const LaurentL& o) const { return terms_ == o.terms_; }
    std::string to_string() const;

  private:
    void insert(int e, const Cyc& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<int, Cyc> terms_;  // exponent of L -> coefficient, no zeros stored
};

// ---------------------------------------------------------------------------
// The free polynomial ring F (plus two scratch slots used only while the
// rewrite rules are being derived).

enum Gen : int { GA1 = 0, GDA1 = 1, GD2A1 = 2, GD3A1 = 3, GA2 = 4, GDA2 = 5 };
constexpr int kNumGens = 6;
using Mono = std::array<int, kNumGens>;

class FElem {
  public:
    FElem() = default;
    explicit FElem(const LaurentL& l) {
        if (!l.is_zero()) terms_[Mono{}] = l;
    }
    explicit FElem(const Cyc& c) : FElem(LaurentL(c)) {}
    explicit FElem(const Rat& r) : FElem(Cyc(r)) {}

    static FElem generator(Gen g) {
        Mono m{};
        m[static_cast<std::size_t>(g)] = 1;
        return term(m, LaurentL(Cyc(1)));
    }
    static FElem l_monomial(Cyc c, int e) { return FElem(LaurentL::monomial(std::move(c), e)); }
    static FElem term(const Mono& m, const LaurentL& l) {
        FElem r;
        if (!l.is_zero()) r.terms_[m] = l;
        return r;
    }

    const std::map<Mono, LaurentL>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // True when no generator appears (element of Q(zeta_5)[L^{+-1}]).
    bool is_laurent() const;
    LaurentL laurent_part() const;  // requires is_laurent()
    bool is_constant() const;
    Cyc constant_value() const;
    // Coefficient of the L^0 generator-free monomial (0 if absent).
    Cyc constant_coefficient() const;

    int degree_in(Gen g) const;

    FElem operator-() const;
    FElem& operator+=(const FElem& o);
    FElem& operator-=(const FElem& o);
    friend FElem operator+(FElem a, const FElem& b) { return a += b; }
    friend FElem operator-(FElem a, const FElem& b) { return a -= b; }
    friend FElem operator*(const FElem& a, const FElem& b);
    FElem scaled(const Cyc& c) const;
    FElem scaled(const Rat& r) const { return scaled(Cyc(r)); }
    FElem mul_laurent(const LaurentL& l) const;
    FElem pow_int(int n) const;

    // Formal partial derivative with respect to a generator slot.
    FElem partial(Gen g) const;

    // Closed derivation on F (uses the derived rewrite rules).
    FElem d() const;

    CycSeries eval(const struct EvalBasis& basis) const;

    bool operator==(const FElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const FElem& o) const { return !(*this == o); }
    std::string to_string() const;

    // Derivation with the scratch slots treated as free symbols (D2A1 ->
    // D3A1, A2 -> DA2); only used to derive the rewrite rules.
    FElem d_formal() const;

    // For rel == 0 linear in slot g with invertible monomial coefficient,
    // returns the solved expression for g.  Throws if rel is not of that
    // shape.
    static FElem solve_linear(const FElem& rel, Gen g);

  private:
    void insert(const Mono& m, const LaurentL& l);
    FElem derive(bool formal) const;

    std::map<Mono, LaurentL> terms_;
};

// The derived rewrite-rule table (immutable after first use).
struct DRules {
    FElem d3a1;  // image of D2A1 under D, an element of LaurentL[A1, DA1, D2A1]
    FElem da2;   // image of A2 under D, an element of LaurentL[A1, DA1, A2]
    FElem x1;    // X1 = (1 - L^5/5^5) - L A1
    FElem x2;    // X2 = (1 - L^5/5^5) + L A1 - L A2
    FElem m;     // 1 - L^5/5^5
};
const DRules& drules();

// ---------------------------------------------------------------------------
// ExtElem: F with Laurent exponents of C1, C2; C3 never stored.

class ExtElem {
  public:
    ExtElem() = default;
    explicit ExtElem(const FElem& f) {
        if (!f.is_zero()) terms_[{0, 0}] = f;
    }
    explicit ExtElem(const Cyc& c) : ExtElem(FElem(c)) {}

    static ExtElem term(int c1, int c2, const FElem& f) {
        ExtElem r;
        if (!f.is_zero()) r.terms_[{c1, c2}] = f;
        return r;
    }
    // C3^p = L^(5p) C1^(-2p) C2^(-2p)
    static ExtElem c3_power(int p);

    const std::map<std::pair<int, int>, FElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool in_f() const {  // no C1/C2 exponents survive the normal form
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == std::make_pair(0, 0));
    }
    FElem f_part() const;  // requires in_f()

    // Largest power of C1^-1 present (0 if none).
    int c1_inverse_degree() const;

    ExtElem operator-() const;
    ExtElem& operator+=(const ExtElem& o);
    ExtElem& operator-=(const ExtElem& o);
    friend ExtElem operator+(ExtElem a, const ExtElem& b) { return a += b; }
    friend ExtElem operator-(ExtElem a, const ExtElem& b) { return a -= b; }
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
    ExtElem scaled(const Cyc& c) const;
    ExtElem mul_f(const FElem& f) const;

    ExtElem partial(Gen g) const;

    // Derivation extended by D C1 = X1 C1, D C2 = X2 C2.
    ExtElem d() const;

    CycSeries eval(const struct EvalBasis& basis) const;

    bool operator==(const ExtElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const ExtElem& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    void insert(const std::pair<int, int>& key, const FElem& f);
    std::map<std::pair<int, int>, FElem> terms_;
};

// ---------------------------------------------------------------------------
// Evaluation of ring elements to series through the mirror data.

struct EvalBasis {
    explicit EvalBasis(const MirrorData& m);

    CycSeries L, A1, DA1, D2A1, A2, C1, C2;
    int order;  // checks downstream certify through this order

    const CycSeries& l_pow(int e) const;
    const CycSeries& gen_pow(Gen g, int e) const;
    const CycSeries& c1_pow(int e) const;
    const CycSeries& c2_pow(int e) const;

  private:
    const CycSeries& cached_pow(std::map<int, CycSeries>& cache, const CycSeries& base,
                                int e) const;
    mutable std::map<int, CycSeries> lpow_, c1pow_, c2pow_;
    mutable std::map<std::pair<int, int>, CycSeries> genpow_;
};

}  // namespace qz5
