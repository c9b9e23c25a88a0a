#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weilres/testfn.hpp"

namespace weilres {

using Json = nlohmann::ordered_json;

// Exact scalars: integers that fit in int64 are JSON integers, everything else an exact string.
inline Json scalar_to_json(const Cyclotomic& c) {
    if (c.is_integer() && c.rational_part().get_num().fits_slong_p()) return static_cast<int64_t>(c.rational_part().get_num().get_si());
    return c.to_string();
}

inline Cyclotomic scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Cyclotomic(static_cast<Int>(j.get<int64_t>()));
    if (j.is_string()) return Cyclotomic::parse(j.get<std::string>());
    throw ValidationError("json: expected an integer or exact scalar string, got " + j.dump());
}

inline Json laurent_to_json(const CycLaurent& p) {
    Json a = Json::array();
    for (const auto& [k, c] : p.terms()) a.push_back(Json::array({k, scalar_to_json(c)}));
    return a;
}

inline CycLaurent laurent_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("json: coeffs must be an array of [exponent, coefficient] pairs");
    CycLaurent p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            throw ValidationError("json: malformed coefficient entry " + t.dump());
        p += CycLaurent::monomial(t[0].get<int>(), scalar_from_json(t[1]));
    }
    return p;
}

inline Json vec_to_json(const IntVec& v) {
    Json a = Json::array();
    for (Int x : v) a.push_back(x);
    return a;
}

inline IntVec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("json: expected an integer array, got " + j.dump());
    IntVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw ValidationError("json: expected an integer, got " + x.dump());
        v.push_back(x.get<Int>());
    }
    return v;
}

/// {reduced_word, omega_label} of an element; omega_label is its Kottwitz class.
inline Json element_to_json(const IwahoriWeylGroup& W, const WElement& x) {
    auto d = W.reduced_decomposition(x);
    Json j;
    j["reduced_word"] = d.word;
    j["omega_label"] = vec_to_json(W.kottwitz(d.omega));
    return j;
}

inline WElement element_from_json(const IwahoriWeylGroup& W, const Json& j) {
    if (!j.is_object() || !j.contains("reduced_word") || !j.contains("omega_label"))
        throw ValidationError("json: element needs reduced_word and omega_label");
    std::vector<int> word;
    for (const auto& s : j["reduced_word"]) {
        if (!s.is_number_integer()) throw ValidationError("json: reduced_word entries must be node indices");
        int k = s.get<int>();
        if (k < 0 || k >= W.num_nodes()) throw ValidationError("json: node index " + std::to_string(k) + " out of range");
        word.push_back(k);
    }
    IntVec label = vec_from_json(j["omega_label"]);
    if (static_cast<int>(label.size()) != W.pi1().dim()) throw ValidationError("json: omega_label has wrong length");
    WElement x = W.from_word(word, W.omega_from_kottwitz(label));
    if (W.length(x) != static_cast<Int>(word.size())) throw ValidationError("json: reduced_word is not reduced");
    return x;
}

/// Sort key making element lists deterministic: length, then word, then omega label.
inline std::vector<WElement> sorted_elements(const IwahoriWeylGroup& W, std::vector<WElement> xs) {
    std::vector<std::pair<std::pair<std::vector<int>, IntVec>, WElement>> keyed;
    for (auto& x : xs) {
        auto d = W.reduced_decomposition(x);
        keyed.push_back({{d.word, W.kottwitz(d.omega)}, x});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.first.size() != b.first.first.size()) return a.first.first.size() < b.first.first.size();
        return a.first < b.first;
    });
    std::vector<WElement> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

inline Json elements_to_json(const IwahoriWeylGroup& W, const std::vector<WElement>& xs) {
    Json a = Json::array();
    for (const auto& x : sorted_elements(W, xs)) a.push_back(element_to_json(W, x));
    return a;
}

/// Hecke element as a list of {reduced_word, omega_label, coeffs}.
inline Json hecke_to_json(const CycHecke& h) {
    const auto& W = *h.group();
    std::vector<WElement> xs;
    for (const auto& [x, c] : h.terms()) xs.push_back(x);
    Json a = Json::array();
    for (const auto& x : sorted_elements(W, xs)) {
        Json j = element_to_json(W, x);
        j["coeffs"] = laurent_to_json(h.coeff(x));
        a.push_back(std::move(j));
    }
    return a;
}

inline CycHecke hecke_from_json(const IWGroupPtr& W, const Json& j) {
    if (!j.is_array()) throw ValidationError("json: Hecke element must be an array of terms");
    CycHecke h(W);
    for (const auto& t : j) {
        if (!t.contains("coeffs")) throw ValidationError("json: term without coeffs");
        h.add_term(element_from_json(*W, t), laurent_from_json(t["coeffs"]));
    }
    return h;
}

inline Json bernstein_to_json(const IwahoriWeylGroup& W, const BernsteinExpansion<Cyclotomic>& e) {
    std::vector<IntVec> keys;
    for (const auto& [lam, c] : e) keys.push_back(lam);
    std::sort(keys.begin(), keys.end(), [&](const IntVec& a, const IntVec& b) {
        Int ha = W.height(a), hb = W.height(b);
        return ha != hb ? ha < hb : a < b;
    });
    Json a = Json::array();
    for (const auto& lam : keys) a.push_back(Json{{"lambda", vec_to_json(lam)}, {"coeffs", laurent_to_json(e.at(lam))}});
    return a;
}

inline BernsteinExpansion<Cyclotomic> bernstein_from_json(const IwahoriWeylGroup& W, const Json& j) {
    if (!j.is_array()) throw ValidationError("json: Bernstein coefficients must be an array");
    BernsteinExpansion<Cyclotomic> e;
    for (const auto& t : j) {
        IntVec lam = vec_from_json(t.at("lambda"));
        if (static_cast<int>(lam.size()) != W.lattice_dim() || !W.is_dominant(lam))
            throw ValidationError("json: lambda must be a dominant element of Lambda_M");
        e[W.lattice().reduce(lam)] += laurent_from_json(t.at("coeffs"));
    }
    return e;
}

inline Json integrality_to_json(const IwahoriWeylGroup& W, const IntegralityReport& r) {
    Json j;
    j["status"] = r.integral ? "pass" : "fail";
    j["d"] = r.d;
    std::vector<WElement> xs;
    for (const auto& [x, p] : r.q_coefficients) xs.push_back(x);
    Json rows = Json::array();
    for (const auto& x : sorted_elements(W, xs)) {
        Json e = element_to_json(W, x);
        Json poly = Json::array();
        for (const auto& [k, c] : r.q_coefficients.at(x)) poly.push_back(Json::array({k, scalar_to_json(c)}));
        e["q_poly"] = std::move(poly);
        rows.push_back(std::move(e));
    }
    j["scaled_unit_coefficients"] = std::move(rows);
    j["offending"] = r.offending;
    return j;
}

inline Json support_to_json(const IwahoriWeylGroup& W, const SupportReport& r) {
    Json j;
    j["status"] = r.contained ? "pass" : "fail";
    j["support_size"] = r.support_size;
    j["admissible_size"] = r.admissible_size;
    j["outside"] = elements_to_json(W, r.outside);
    return j;
}

enum class BasisChoice { bernstein, iwahori_matsumoto };

inline Json testfn_to_json(const TestFunction& t, BasisChoice basis) {
    const auto& W = *t.W;
    Json j;
    j["group"] = W.datum().name;
    j["lift"] = t.lift;
    j["facet"] = t.facet.nodes;
    j["mu_lambda"] = vec_to_json(t.mu_lambda);
    j["d"] = t.d;
    j["parity"] = t.parity;
    j["omega_label"] = vec_to_json(t.omega);
    if (basis == BasisChoice::bernstein) {
        j["basis"] = "bernstein";
        j["coefficients"] = bernstein_to_json(W, t.bernstein);
    } else {
        j["basis"] = "iwahori_matsumoto";
        j["coefficients"] = hecke_to_json(t.element);
    }
    std::set<WElement> supp;
    for (const auto& [x, c] : t.element.terms()) supp.insert(t.facet.is_iwahori() ? x : W.max_in_double_coset(x, t.facet));
    j["support"] = elements_to_json(W, {supp.begin(), supp.end()});
    j["admissible_check"] = support_to_json(W, support_in_admissible(t, t.mu_lambda));
    j["integrality_report"] = integrality_to_json(W, check_integrality(t));
    return j;
}

/// The test-function element recovered from testfn JSON (either basis).
inline CycHecke testfn_element_from_json(const IWGroupPtr& W, const Json& j) {
    std::string basis = j.at("basis").get<std::string>();
    if (basis == "iwahori_matsumoto") return hecke_from_json(W, j.at("coefficients"));
    if (basis != "bernstein") throw ValidationError("json: unknown basis '" + basis + "'");
    CycHecke h(W);
    for (const auto& [lam, c] : bernstein_from_json(*W, j.at("coefficients"))) h += cyc_bernstein_z(W, lam).scaled(c);
    std::vector<int> nodes = j.at("facet").get<std::vector<int>>();
    if (!nodes.empty()) h = h * parahoric_unit<Cyclotomic>(W, W->make_facet(nodes));
    return h;
}

} // namespace weilres
