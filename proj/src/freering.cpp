#include "qz5/freering.hpp"

#include <stdexcept>

namespace qz5 {

// ---------------------------------------------------------------------------
// LaurentL

Cyc LaurentL::constant_value() const {
    if (!is_constant()) throw std::domain_error("LaurentL: not a constant");
    return terms_.empty() ? Cyc(0) : terms_.begin()->second;
}

LaurentL LaurentL::operator-() const {
    LaurentL r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentL& LaurentL::operator+=(const LaurentL& o) {
    for (const auto& [e, c] : o.terms_) insert(e, c);
    return *this;
}

LaurentL& LaurentL::operator-=(const LaurentL& o) {
    for (const auto& [e, c] : o.terms_) insert(e, -c);
    return *this;
}

LaurentL operator*(const LaurentL& a, const LaurentL& b) {
    LaurentL r;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) r.insert(ea + eb, ca * cb);
    return r;
}

LaurentL LaurentL::scaled(const Cyc& c) const {
    LaurentL r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

LaurentL LaurentL::d() const {
    LaurentL r;
    for (const auto& [e, c] : terms_) {
        if (e == 0) continue;
        r.insert(e, c * Cyc(static_cast<long>(e)));
        r.insert(e + 5, c * Cyc(rat(-e, 3125)));
    }
    return r;
}

LaurentL LaurentL::d_inv() const {
    // Solve m s_m - ((m-5)/5^5) s_{m-5} = c_m per residue class of m mod 5,
    // descending from the top.  Finite support forces max(s) = max(c) - 5,
    // so the descent is exact; the class-0 chain has the kernel L^0 (left
    // at zero here, callers add their own constant) and one genuine
    // consistency equation at m = 5.
    LaurentL sol;
    for (int r = 0; r < 5; ++r) {
        int cmax = 0, cmin = 0;
        bool seen = false;
        for (const auto& [e, c] : terms_) {
            if (((e % 5) + 5) % 5 != r) continue;
            if (!seen || e > cmax) cmax = e;
            if (!seen || e < cmin) cmin = e;
            seen = true;
        }
        if (!seen) continue;
        int m = cmax + 5;
        Cyc sm(0);
        while (true) {
            int t = m - 5;
            if (t == 0) {
                if (!(Cyc(5) * sm == coeff(5)))
                    throw std::domain_error(
                        "LaurentL::d_inv: right-hand side is not in the image of D");
                m = 0;
                sm = Cyc(0);
                continue;
            }
            Cyc st = (Cyc(static_cast<long>(m)) * sm - coeff(m)) * Cyc(rat(3125, m - 5));
            if (t < cmin) {
                if (!st.is_zero())
                    throw std::domain_error(
                        "LaurentL::d_inv: right-hand side is not in the image of D");
                break;
            }
            if (!st.is_zero()) sol.terms_[t] = st;
            m = t;
            sm = st;
        }
    }
    return sol;
}

CycSeries LaurentL::eval(const CycSeries& Lser) const {
    CycSeries acc = CycSeries::zero(Lser.known_to());
    for (const auto& [e, c] : terms_) acc += Lser.pow_int(e).scaled(c);
    return acc;
}

std::string LaurentL::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.to_string();
        if (e != 0) s += "*L^" + std::to_string(e);
    }
    return s;
}

// ---------------------------------------------------------------------------
// FElem

namespace {

const char* gen_name(int g) {
    switch (g) {
        case GA1: return "A1";
        case GDA1: return "DA1";
        case GD2A1: return "D2A1";
        case GD3A1: return "D3A1";
        case GA2: return "A2";
        case GDA2: return "DA2";
    }
    return "?";
}

}  // namespace

void FElem::insert(const Mono& m, const LaurentL& l) {
    if (l.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, l);
    if (!fresh) {
        it->second += l;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool FElem::is_laurent() const {
    for (const auto& [m, l] : terms_)
        if (m != Mono{}) return false;
    return true;
}

LaurentL FElem::laurent_part() const {
    if (!is_laurent()) throw std::domain_error("FElem: generators present");
    return terms_.empty() ? LaurentL() : terms_.begin()->second;
}

bool FElem::is_constant() const { return is_laurent() && laurent_part().is_constant(); }

Cyc FElem::constant_value() const { return laurent_part().constant_value(); }

Cyc FElem::constant_coefficient() const {
    auto it = terms_.find(Mono{});
    return it == terms_.end() ? Cyc(0) : it->second.coeff(0);
}

int FElem::degree_in(Gen g) const {
    int d = 0;
    for (const auto& [m, l] : terms_) d = std::max(d, m[static_cast<std::size_t>(g)]);
    return d;
}

FElem FElem::operator-() const {
    FElem r;
    for (const auto& [m, l] : terms_) r.terms_[m] = -l;
    return r;
}

FElem& FElem::operator+=(const FElem& o) {
    for (const auto& [m, l] : o.terms_) insert(m, l);
    return *this;
}

FElem& FElem::operator-=(const FElem& o) {
    for (const auto& [m, l] : o.terms_) insert(m, -l);
    return *this;
}

FElem operator*(const FElem& a, const FElem& b) {
    FElem r;
    for (const auto& [ma, la] : a.terms())
        for (const auto& [mb, lb] : b.terms()) {
            Mono m;
            for (std::size_t i = 0; i < kNumGens; ++i) m[i] = ma[i] + mb[i];
            r.insert(m, la * lb);
        }
    return r;
}

FElem FElem::scaled(const Cyc& c) const {
    FElem r;
    if (c.is_zero()) return r;
    for (const auto& [m, l] : terms_) r.terms_[m] = l.scaled(c);
    return r;
}

FElem FElem::mul_laurent(const LaurentL& l) const {
    FElem r;
    for (const auto& [m, v] : terms_) r.insert(m, v * l);
    return r;
}

FElem FElem::pow_int(int n) const {
    if (n < 0) throw std::domain_error("FElem::pow_int: negative power");
    FElem r(Cyc(1));
    for (int i = 0; i < n; ++i) r = r * (*this);
    return r;
}

FElem FElem::partial(Gen g) const {
    FElem r;
    const std::size_t gi = static_cast<std::size_t>(g);
    for (const auto& [m, l] : terms_) {
        if (m[gi] == 0) continue;
        Mono m2 = m;
        --m2[gi];
        r.insert(m2, l.scaled(Cyc(static_cast<long>(m[gi]))));
    }
    return r;
}

FElem FElem::derive(bool formal) const {
    const DRules* rules = formal ? nullptr : &drules();
    FElem out;
    for (const auto& [m, l] : terms_) {
        out.insert(m, l.d());
        for (std::size_t s = 0; s < kNumGens; ++s) {
            if (m[s] == 0) continue;
            Mono m2 = m;
            --m2[s];
            FElem piece = FElem::term(m2, l.scaled(Cyc(static_cast<long>(m[s]))));
            FElem dg;
            switch (s) {
                case GA1: dg = generator(GDA1); break;
                case GDA1: dg = generator(GD2A1); break;
                case GD2A1: dg = formal ? generator(GD3A1) : rules->d3a1; break;
                case GA2: dg = formal ? generator(GDA2) : rules->da2; break;
                default:
                    throw std::logic_error(std::string("derive: D applied to scratch slot ") +
                                           gen_name(static_cast<int>(s)));
            }
            out += piece * dg;
        }
    }
    return out;
}

FElem FElem::d() const { return derive(false); }
FElem FElem::d_formal() const { return derive(true); }

FElem FElem::solve_linear(const FElem& rel, Gen g) {
    const std::size_t gi = static_cast<std::size_t>(g);
    FElem rest, coeff;
    for (const auto& [m, l] : rel.terms()) {
        if (m[gi] == 0) {
            rest.insert(m, l);
        } else if (m[gi] == 1) {
            Mono m2 = m;
            m2[gi] = 0;
            coeff.insert(m2, l);
        } else {
            throw std::domain_error("solve_linear: relation not linear in the target symbol");
        }
    }
    if (coeff.terms().size() != 1 || coeff.terms().begin()->first != Mono{} ||
        coeff.terms().begin()->second.terms().size() != 1)
        throw std::domain_error("solve_linear: coefficient is not an invertible monomial");
    auto [lexp, lcoef] = *coeff.terms().begin()->second.terms().begin();
    return rest.mul_laurent(LaurentL::monomial(-(lcoef.inv()), -lexp));
}

std::string FElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, l] : terms_) {
        if (!s.empty()) s += "  +  ";
        s += "(" + l.to_string() + ")";
        for (std::size_t i = 0; i < kNumGens; ++i) {
            if (m[i] == 0) continue;
            s += std::string("*") + gen_name(static_cast<int>(i));
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Rewrite-rule derivation

namespace {

DRules derive_rules() {
    DRules r;
    FElem one(Cyc(1));
    r.m = one - FElem::l_monomial(Cyc(rat(1, 3125)), 5);
    FElem la1 = FElem::generator(GA1).mul_laurent(LaurentL::monomial(Cyc(1), 1));
    FElem la2 = FElem::generator(GA2).mul_laurent(LaurentL::monomial(Cyc(1), 1));
    r.x1 = r.m - la1;
    r.x2 = r.m + la1 - la2;

    // DA2 rule: formally differentiating X2 brings in the DA2 slot
    // linearly; equate with the DX2 relation's right-hand side and solve.
    {
        FElem dx1 = r.x1.d_formal();
        FElem rhs = r.m.scaled(Rat(-10)) + (r.m * r.x1).scaled(Rat(10)) +
                    (r.m * r.x2).scaled(Rat(5)) - (r.x1 * r.x1).scaled(Rat(2)) -
                    dx1.scaled(Rat(4)) - (r.x1 * r.x2).scaled(Rat(2)) - r.x2 * r.x2;
        r.da2 = FElem::solve_linear(r.x2.d_formal() - rhs, GDA2);
        if (r.da2.degree_in(GDA2) != 0 || r.da2.degree_in(GD3A1) != 0)
            throw std::logic_error("derive_rules: DA2 rule not closed");
    }

    // D3A1 rule: expand B_i = 5^-i (D+X1)^(i-1) X1 formally (B4 contains
    // D3A1 linearly through D^3 X1) and solve the B4 relation.
    {
        std::array<FElem, 5> B;
        FElem acc = r.x1;
        for (int i = 1; i <= 4; ++i) {
            B[static_cast<std::size_t>(i)] = acc.scaled(rat_pow(Rat(1, 5), i));
            if (i < 4) acc = acc.d_formal() + r.x1 * acc;
        }
        FElem rhs = B[3].scaled(Rat(2)) - B[2].scaled(Rat(7, 5)) + B[1].scaled(Rat(2, 5)) -
                    FElem(Cyc(rat(24, 625)));
        FElem rel = B[4] - r.m * rhs;
        r.d3a1 = FElem::solve_linear(rel, GD3A1);
        if (r.d3a1.degree_in(GD3A1) != 0 || r.d3a1.degree_in(GDA2) != 0 ||
            r.d3a1.degree_in(GA2) != 0)
            throw std::logic_error("derive_rules: D3A1 rule not closed");
    }
    return r;
}

}  // namespace

const DRules& drules() {
    static const DRules rules = derive_rules();
    return rules;
}

// ---------------------------------------------------------------------------
// ExtElem

void ExtElem::insert(const std::pair<int, int>& key, const FElem& f) {
    if (f.is_zero()) return;
    auto [it, fresh] = terms_.emplace(key, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ExtElem ExtElem::c3_power(int p) {
    return term(-2 * p, -2 * p, FElem::l_monomial(Cyc(1), 5 * p));
}

FElem ExtElem::f_part() const {
    if (!in_f()) throw std::domain_error("ExtElem: C1/C2 exponents present");
    return terms_.empty() ? FElem() : terms_.begin()->second;
}

int ExtElem::c1_inverse_degree() const {
    int d = 0;
    for (const auto& [k, f] : terms_) d = std::max(d, -k.first);
    return d;
}

ExtElem ExtElem::operator-() const {
    ExtElem r;
    for (const auto& [k, f] : terms_) r.terms_[k] = -f;
    return r;
}

ExtElem& ExtElem::operator+=(const ExtElem& o) {
    for (const auto& [k, f] : o.terms_) insert(k, f);
    return *this;
}

ExtElem& ExtElem::operator-=(const ExtElem& o) {
    for (const auto& [k, f] : o.terms_) insert(k, -f);
    return *this;
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    ExtElem r;
    for (const auto& [ka, fa] : a.terms())
        for (const auto& [kb, fb] : b.terms())
            r.insert({ka.first + kb.first, ka.second + kb.second}, fa * fb);
    return r;
}

ExtElem ExtElem::scaled(const Cyc& c) const {
    ExtElem r;
    if (c.is_zero()) return r;
    for (const auto& [k, f] : terms_) r.terms_[k] = f.scaled(c);
    return r;
}

ExtElem ExtElem::mul_f(const FElem& f) const {
    ExtElem r;
    for (const auto& [k, v] : terms_) r.insert(k, v * f);
    return r;
}

ExtElem ExtElem::partial(Gen g) const {
    ExtElem r;
    for (const auto& [k, f] : terms_) r.insert(k, f.partial(g));
    return r;
}

ExtElem ExtElem::d() const {
    const DRules& rules = drules();
    ExtElem r;
    for (const auto& [k, f] : terms_) {
        FElem df = f.d();
        if (k.first != 0) df += f * rules.x1.scaled(Rat(k.first));
        if (k.second != 0) df += f * rules.x2.scaled(Rat(k.second));
        r.insert(k, df);
    }
    return r;
}

std::string ExtElem::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, f] : terms_) {
        if (!s.empty()) s += "\n + ";
        s += "C1^" + std::to_string(k.first) + " C2^" + std::to_string(k.second) + " * [" +
             f.to_string() + "]";
    }
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation

EvalBasis::EvalBasis(const MirrorData& m)
    : L(to_cyc(m.L)),
      A1(to_cyc(m.A1)),
      DA1(to_cyc(m.A1.d_op())),
      D2A1(to_cyc(m.A1.d_op().d_op())),
      A2(to_cyc(m.A2)),
      C1(to_cyc(m.C1)),
      C2(to_cyc(m.C2)),
      order(m.order) {}

const CycSeries& EvalBasis::cached_pow(std::map<int, CycSeries>& cache, const CycSeries& base,
                                       int e) const {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    CycSeries v = CycSeries::zero(0);
    if (e == 0) {
        v = CycSeries::constant(Cyc(1), base.known_to());
    } else if (e > 0) {
        v = cached_pow(cache, base, e - 1) * base;
    } else if (e == -1) {
        v = base.mul_inv();
    } else {
        v = cached_pow(cache, base, e + 1) * cached_pow(cache, base, -1);
    }
    return cache.emplace(e, std::move(v)).first->second;
}

const CycSeries& EvalBasis::l_pow(int e) const { return cached_pow(lpow_, L, e); }
const CycSeries& EvalBasis::c1_pow(int e) const { return cached_pow(c1pow_, C1, e); }
const CycSeries& EvalBasis::c2_pow(int e) const { return cached_pow(c2pow_, C2, e); }

const CycSeries& EvalBasis::gen_pow(Gen g, int e) const {
    auto key = std::make_pair(static_cast<int>(g), e);
    auto it = genpow_.find(key);
    if (it != genpow_.end()) return it->second;
    const CycSeries* base = nullptr;
    switch (g) {
        case GA1: base = &A1; break;
        case GDA1: base = &DA1; break;
        case GD2A1: base = &D2A1; break;
        case GA2: base = &A2; break;
        default: throw std::logic_error("EvalBasis: scratch slot has no series value");
    }
    CycSeries v = e == 0 ? CycSeries::constant(Cyc(1), base->known_to())
                         : gen_pow(g, e - 1) * (*base);
    return genpow_.emplace(key, std::move(v)).first->second;
}

CycSeries FElem::eval(const EvalBasis& basis) const {
    CycSeries acc = CycSeries::zero(basis.L.known_to());
    for (const auto& [m, l] : terms_) {
        CycSeries t = CycSeries::zero(basis.L.known_to());
        for (const auto& [e, c] : l.terms()) t += basis.l_pow(e).scaled(c);
        for (std::size_t s = 0; s < kNumGens; ++s)
            if (m[s] != 0) t *= basis.gen_pow(static_cast<Gen>(s), m[s]);
        acc += t;
    }
    return acc;
}

CycSeries ExtElem::eval(const EvalBasis& basis) const {
    CycSeries acc = CycSeries::zero(basis.L.known_to());
    for (const auto& [k, f] : terms_) {
        CycSeries t = f.eval(basis);
        if (k.first != 0) t *= basis.c1_pow(k.first);
        if (k.second != 0) t *= basis.c2_pow(k.second);
        acc += t;
    }
    return acc;
}

}  // namespace qz5
