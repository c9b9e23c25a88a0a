#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weilres/dualside.hpp"
#include "weilres/hecke.hpp"

namespace weilres {

using CycHecke = HeckeElement<Cyclotomic>;
using CycLaurent = Laurent<Cyclotomic>;

struct TestFunction {
    IWGroupPtr W;
    std::string lift;                         // lift index or "ss"
    Facet facet;
    TraceFunction trace;                      // lam -> coefficient on Lambda_M
    BernsteinExpansion<Cyclotomic> bernstein; // dominant lam -> c_lam
    CycHecke central;                         // sum c_lam z_lam at Iwahori level
    CycHecke element;                         // central * 1_J at the facet
    Int d = 0;                                // <2 rho, mu>
    int parity = 0;
    IntVec omega;                             // Kottwitz class of the support
    IntVec mu_lambda;                         // image of mu in Lambda_M (dominant)
};

/// Orders dominant representatives by height, then lexicographically.
inline std::vector<IntVec> ordered_orbit_representatives(const IwahoriWeylGroup& W, const TraceFunction& f) {
    std::set<IntVec> reps;
    for (const auto& [lam, c] : f) reps.insert(W.dominant(lam).first);
    std::vector<IntVec> out(reps.begin(), reps.end());
    std::sort(out.begin(), out.end(), [&](const IntVec& a, const IntVec& b) {
        Int ha = W.height(a), hb = W.height(b);
        return ha != hb ? ha < hb : a < b;
    });
    return out;
}

/// z_lam with cyclotomic coefficients; the orbit sum itself is computed over Z.
inline CycHecke cyc_bernstein_z(const IWGroupPtr& W, const IntVec& lam) {
    return bernstein_z<ZZ>(W, lam).map_coefficients<Cyclotomic>([](const ZZ& a) { return Cyclotomic(a.value()); });
}

/// Central element with the given W_0-invariant trace function.
inline std::pair<BernsteinExpansion<Cyclotomic>, CycHecke> solve_bernstein(const IWGroupPtr& W, const TraceFunction& f) {
    for (const auto& [lam, c] : f)
        for (int w = 0; w < W->w0_size(); ++w) {
            auto it = f.find(W->w0_apply(w, lam));
            if (it == f.end() || !(it->second == c)) throw ComputeError("test function: trace function is not W_0-invariant");
        }
    BernsteinExpansion<Cyclotomic> e;
    CycHecke h(W);
    for (const auto& lam : ordered_orbit_representatives(*W, f)) {
        const Cyclotomic& c = f.at(lam);
        e[lam] = CycLaurent(c);
        h += cyc_bernstein_z(W, lam).scaled(CycLaurent(c));
    }
    return {e, h};
}

namespace detail {

inline IntVec mu_in_lambda(const IwahoriWeylGroup& W, const LGroupRep& r) {
    const auto& rs = W.relative();
    if (r.highest_weights.empty()) return W.lattice().zero();
    auto lam = rs.lambda_of_cocharacter(r.highest_weights.front());
    if (!lam) throw UnsupportedCase("test function: the class of mu is not Frobenius-stable");
    return W.dominant(*lam).first;
}

/// The highest weights must be inertia-conjugate.
inline void check_star(const LGroupRep& r) {
    if (r.highest_weights.size() <= 1) return;
    auto inert = r.group.galois.inertia_elements();
    const IntVec& h0 = r.highest_weights.front();
    for (const auto& h : r.highest_weights) {
        bool found = false;
        for (const auto& g : inert) found = found || g.apply(h0) == h;
        if (!found)
            throw UnsupportedCase("test function: highest weights are not inertia-conjugate; decompose V first");
    }
}

inline Int absolute_d(const LGroupRep& r) {
    if (r.highest_weights.empty()) return 0;
    return dot(r.group.root_datum.two_rho(), r.highest_weights.front());
}

inline TestFunction assemble(const IWGroupPtr& W, const LGroupRep& r, const Facet& f, TraceFunction tr, std::string lift) {
    TestFunction t;
    t.W = W;
    t.lift = std::move(lift);
    t.facet = f;
    t.trace = std::move(tr);
    auto [e, h] = solve_bernstein(W, t.trace);
    t.bernstein = std::move(e);
    t.central = std::move(h);
    t.element = f.is_iwahori() ? t.central : t.central * parahoric_unit<Cyclotomic>(W, f);
    t.d = absolute_d(r);
    t.parity = parity(r);
    t.mu_lambda = mu_in_lambda(*W, r);
    std::optional<IntVec> om;
    for (const auto& [lam, c] : t.trace) {
        IntVec k = W->relative().kottwitz(lam);
        if (om && *om != k) throw ComputeError("test function: support meets several Kottwitz components");
        om = k;
    }
    t.omega = om ? *om : W->relative().kottwitz(t.mu_lambda);
    return t;
}

} // namespace detail

/// z^{Phi gamma_k}: the central element whose Bernstein evaluation is tr(chi Phi gamma_k | V).
inline TestFunction z_phi(const IWGroupPtr& W, const LGroupRep& r, const Facet& f, int lift) {
    detail::check_star(r);
    return detail::assemble(W, r, f, trace_function(r, W->relative(), lift), std::to_string(lift));
}

/// z^{ss} via the inertia invariants, cross-checked against the average over all lifts.
inline TestFunction z_ss(const IWGroupPtr& W, const LGroupRep& r, const Facet& f) {
    detail::check_star(r);
    const auto& rs = W->relative();
    TraceFunction inv = invariant_trace_function(r, rs);
    const int n = num_lifts(r);
    std::vector<TraceFunction> fam;
    for (int k = 0; k < n; ++k) fam.push_back(trace_function(r, rs, k));
    if (average_over_inertia(fam, static_cast<size_t>(n)) != inv)
        throw ComputeError("z_ss: average over lifts differs from the invariants-first computation");
    return detail::assemble(W, r, f, std::move(inv), "ss");
}

/// Average of Hecke elements indexed by all inertia lifts.
inline CycHecke average_over_inertia(const std::vector<CycHecke>& family, size_t quotient_order) {
    if (family.size() != quotient_order || quotient_order == 0)
        throw ValidationError("average: family does not cover every inertia lift");
    CycHecke s(family.front().group());
    for (const auto& h : family) s += h;
    return s.scaled(CycLaurent(Cyclotomic(Rational(1, static_cast<long>(quotient_order)))));
}

// ---------------------------------------------------------------- integrality

struct IntegralityReport {
    bool integral = true;
    Int d = 0;
    /// Coefficients of q^{d/2} z in the basis 1_w = v^{L(w)} T_w, as polynomials in q.
    std::map<WElement, std::vector<std::pair<int, Cyclotomic>>> q_coefficients;
    std::vector<std::string> offending;
};

inline IntegralityReport check_integrality(const TestFunction& t) {
    IntegralityReport rep;
    rep.d = t.d;
    for (const auto& [x, c] : to_unit_basis(t.element)) {
        CycLaurent p = c.shifted(static_cast<int>(t.d));
        std::vector<std::pair<int, Cyclotomic>> qpoly;
        bool ok = true;
        for (const auto& [k, a] : p.terms()) {
            if (k < 0 || k % 2 != 0 || !a.is_integer()) ok = false;
            qpoly.emplace_back(k / 2, a);
        }
        if (!ok) {
            rep.integral = false;
            rep.offending.push_back(t.W->element_string(x) + ": " + p.to_string());
        }
        rep.q_coefficients[x] = std::move(qpoly);
    }
    return rep;
}

// ---------------------------------------------------------------- support

struct SupportReport {
    bool contained = true;
    size_t support_size = 0;
    size_t admissible_size = 0;
    std::vector<WElement> outside;
};

inline SupportReport support_in_admissible(const TestFunction& t, const IntVec& mu_lambda) {
    SupportReport rep;
    auto adm = t.W->admissible_set(mu_lambda, t.facet);
    std::set<WElement> aset(adm.begin(), adm.end());
    rep.admissible_size = aset.size();
    std::set<WElement> supp;
    for (const auto& [x, c] : t.element.terms()) supp.insert(t.facet.is_iwahori() ? x : t.W->max_in_double_coset(x, t.facet));
    rep.support_size = supp.size();
    for (const auto& x : supp)
        if (!aset.count(x)) {
            rep.contained = false;
            rep.outside.push_back(x);
        }
    return rep;
}

// ---------------------------------------------------------------- evaluation

/// Value of sum c_lam z_lam at chi.
inline CycLaurent evaluate(const TestFunction& t, const UnramifiedCharacter& chi) {
    const auto& rs = t.W->relative();
    return evaluate_expansion<Cyclotomic, Cyclotomic>(
        *t.W, t.bernstein, [&](const IntVec& lam) { return chi(rs, lam); }, [](const Cyclotomic& c) { return c; });
}

/// tr(chi Phi gamma | V) straight from the trace function.
inline Cyclotomic direct_trace(const TestFunction& t, const UnramifiedCharacter& chi) {
    Cyclotomic s;
    for (const auto& [lam, c] : t.trace) s += c * chi(t.W->relative(), lam);
    return s;
}

// ---------------------------------------------------------------- unramified base change

struct BaseChangeFactor {
    std::vector<int> blocks; // block indices b = i * e + j of the factor
    int degree = 0;          // residue degree of the factor over E_0
};

struct BaseChangeData {
    int e = 1, f = 1, a = 1;
    std::vector<BaseChangeFactor> factors;
};

/// Factors of K_0 (x)_F E_0 for E_0/F unramified of degree a: orbits of <inertia, Phi^a> on the blocks.
inline BaseChangeData reduce_unramified_base(const GroupDatum& res, int a) {
    if (!res.base) throw ValidationError("base change: datum is not a Weil restriction");
    if (a < 1) throw ValidationError("base change: degree must be positive");
    BaseChangeData out;
    out.e = res.restriction_e;
    out.f = res.restriction_f;
    out.a = a;
    const int e = out.e, f = out.f, nb = e * f;
    auto tau = [&](int b) { return (b / e) * e + (b % e + 1) % e; };
    auto phi = [&](int b) { return ((b / e + 1) % f) * e + b % e; };
    auto phi_a = [&](int b) {
        for (int k = 0; k < a; ++k) b = phi(b);
        return b;
    };
    std::vector<int> seen(nb, -1);
    for (int b = 0; b < nb; ++b) {
        if (seen[b] >= 0) continue;
        BaseChangeFactor fac;
        std::vector<int> stack{b};
        seen[b] = static_cast<int>(out.factors.size());
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            fac.blocks.push_back(x);
            for (int y : {tau(x), phi_a(x)})
                if (seen[y] < 0) {
                    seen[y] = seen[b];
                    stack.push_back(y);
                }
        }
        std::sort(fac.blocks.begin(), fac.blocks.end());
        fac.degree = static_cast<int>(fac.blocks.size()) / e;
        out.factors.push_back(std::move(fac));
    }
    if (static_cast<int>(out.factors.size()) != std::gcd(a, f))
        throw ComputeError("base change: factor count differs from gcd(a, f)");
    return out;
}

/// tr(Phi^a | V_0^{(x) n}) reassembled per factor: prod over cycles of tr(A^{wraps}).
inline Cyclotomic reassembled_power_trace(const CycMatrix& A, int n, int a) {
    const int g = std::gcd(a, n);
    CycMatrix p = CycMatrix::identity(A.rows());
    for (int k = 0; k < a / g; ++k) p = p * A;
    Cyclotomic t = p.trace(), out(1);
    for (int k = 0; k < g; ++k) out *= t;
    return out;
}

// ---------------------------------------------------------------- transports

/// p_*(z) = z_ad on the omega slice, with p a bijection of admissible sets.
struct AdjointReport {
    bool equal = false;
    bool slice_bijective = false;
    size_t support_size = 0;
};

inline AdjointReport adjoint_transport(const GroupDatum& g, const IntVec& mu, int lift = 0) {
    AdjointReport rep;
    auto W = IwahoriWeylGroup::build(g);
    auto [gad, p] = adjoint_group(g);
    auto Wad = IwahoriWeylGroup::build(gad);
    auto m = IWMorphism::from_cocharacter_map(W, Wad, p);
    auto V = LGroupRep::irreducible(g, mu);
    auto Vad = LGroupRep::irreducible(gad, p.apply(mu));
    auto z = z_phi(W, V, Facet{}, lift);
    auto zad = z_phi(Wad, Vad, Facet{}, lift);
    rep.equal = pushforward(z.element, m) == zad.element;
    rep.support_size = z.element.size();
    auto adm = W->admissible_iwahori(z.mu_lambda);
    auto adm_ad = Wad->admissible_iwahori(zad.mu_lambda);
    std::set<WElement> img;
    for (const auto& x : adm) img.insert(m.apply(x));
    std::set<WElement> supp_img;
    for (const auto& [x, c] : z.element.terms()) supp_img.insert(m.apply(x));
    rep.slice_bijective = img.size() == adm.size() && img == adm_ad && supp_img.size() == z.element.size();
    return rep;
}

} // namespace weilres
