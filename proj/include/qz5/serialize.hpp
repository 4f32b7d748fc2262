#pragma once

// JSON encodings for the exact types: Cyc as a 4-tuple of "num/den"
// strings, series as coefficient arrays with their windows, ring
// elements as ordered monomial lists.  Used by the CLI reports and the
// on-disk caches; decoding must round-trip bit-exactly.

#include "qz5/freering.hpp"
#include "qz5/series.hpp"

#include "json.hpp"

namespace qz5 {

inline nlohmann::json to_json(const Cyc& c) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) a.push_back(rat_to_string(c.coord(i)));
    return a;
}

inline Cyc cyc_from_json(const nlohmann::json& j) {
    std::array<Rat, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = rat_from_string(j.at(i).get<std::string>());
    return Cyc(c);
}

inline nlohmann::json to_json(const RatSeries& s, int through) {
    nlohmann::json j;
    j["lo"] = s.lo();
    j["hi"] = std::min(s.known_to(), through);
    nlohmann::json coeffs = nlohmann::json::array();
    for (int e = s.lo(); e <= std::min(s.known_to(), through); ++e)
        coeffs.push_back(rat_to_string(s.coeff(e)));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline nlohmann::json to_json(const CycSeries& s, int through) {
    nlohmann::json j;
    j["lo"] = s.lo();
    j["hi"] = std::min(s.known_to(), through);
    nlohmann::json coeffs = nlohmann::json::array();
    for (int e = s.lo(); e <= std::min(s.known_to(), through); ++e)
        coeffs.push_back(to_json(s.coeff(e)));
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline CycSeries cyc_series_from_json(const nlohmann::json& j) {
    int lo = j.at("lo").get<int>();
    int hi = j.at("hi").get<int>();
    std::vector<Cyc> c;
    for (const auto& e : j.at("coeffs")) c.push_back(cyc_from_json(e));
    return CycSeries(lo, hi, std::move(c));
}

inline nlohmann::json to_json(const LaurentL& l) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [e, c] : l.terms()) {
        nlohmann::json t;
        t["L"] = e;
        t["c"] = to_json(c);
        a.push_back(std::move(t));
    }
    return a;
}

inline LaurentL laurent_from_json(const nlohmann::json& j) {
    LaurentL l;
    for (const auto& t : j)
        l += LaurentL::monomial(cyc_from_json(t.at("c")), t.at("L").get<int>());
    return l;
}

inline nlohmann::json to_json(const FElem& f) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [m, l] : f.terms()) {
        nlohmann::json t;
        t["A"] = {m[GA1], m[GDA1], m[GD2A1], m[GA2]};
        t["coeff"] = to_json(l);
        a.push_back(std::move(t));
    }
    return a;
}

inline FElem felem_from_json(const nlohmann::json& j) {
    FElem f;
    for (const auto& t : j) {
        Mono m{};
        m[GA1] = t.at("A").at(0).get<int>();
        m[GDA1] = t.at("A").at(1).get<int>();
        m[GD2A1] = t.at("A").at(2).get<int>();
        m[GA2] = t.at("A").at(3).get<int>();
        f += FElem::term(m, laurent_from_json(t.at("coeff")));
    }
    return f;
}

// Monomials ordered by (C1 exponent, C2 exponent, A-multidegree, L
// exponent): the map orders give exactly that.
inline nlohmann::json to_json(const ExtElem& x) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [k, f] : x.terms()) {
        nlohmann::json t;
        t["c1"] = k.first;
        t["c2"] = k.second;
        t["f"] = to_json(f);
        a.push_back(std::move(t));
    }
    return a;
}

}  // namespace qz5
