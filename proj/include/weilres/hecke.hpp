#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "weilres/core/cyclotomic.hpp"
#include "weilres/core/laurent.hpp"
#include "weilres/iwahori.hpp"

namespace weilres {

/// Iwahori-Hecke algebra of W with T_s^2 = (v^{L(s)} - v^{-L(s)}) T_s + 1.
template <class R>
class HeckeElement {
public:
    using Coeff = Laurent<R>;
    using Terms = std::map<WElement, Coeff>;

    HeckeElement() = default;
    explicit HeckeElement(IWGroupPtr W) : W_(std::move(W)) {}

    static HeckeElement basis(IWGroupPtr W, const WElement& x, Coeff c = Coeff(R(1))) {
        HeckeElement h(std::move(W));
        h.add_term(x, c);
        return h;
    }
    static HeckeElement one(IWGroupPtr W) {
        auto id = W->identity();
        return basis(std::move(W), id);
    }

    const IWGroupPtr& group() const { return W_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    Coeff coeff(const WElement& x) const {
        auto it = t_.find(x);
        return it == t_.end() ? Coeff() : it->second;
    }

    void add_term(const WElement& x, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = t_.emplace(x, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    HeckeElement& operator+=(const HeckeElement& b) {
        adopt(b);
        for (const auto& [x, c] : b.t_) add_term(x, c);
        return *this;
    }
    HeckeElement& operator-=(const HeckeElement& b) {
        adopt(b);
        for (const auto& [x, c] : b.t_) add_term(x, -c);
        return *this;
    }
    friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
    friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }

    HeckeElement scaled(const Coeff& c) const {
        HeckeElement h(W_);
        if (c.is_zero()) return h;
        for (const auto& [x, a] : t_) h.add_term(x, a * c);
        return h;
    }

    /// this * T_s
    HeckeElement mul_simple_right(int s) const {
        HeckeElement h(W_);
        const Coeff gap = Coeff::quadratic_gap(W_->node(s).param);
        for (const auto& [x, c] : t_) {
            h.add_term(W_->mul_simple(x, s), c);
            if (!W_->is_right_ascent(x, s)) h.add_term(x, c * gap);
        }
        return h;
    }
    /// T_s * this
    HeckeElement mul_simple_left(int s) const {
        HeckeElement h(W_);
        const Coeff gap = Coeff::quadratic_gap(W_->node(s).param);
        for (const auto& [x, c] : t_) {
            h.add_term(W_->simple_mul(s, x), c);
            if (W_->is_left_descent(x, s)) h.add_term(x, c * gap);
        }
        return h;
    }
    /// this * T_s^{-1}
    HeckeElement mul_simple_inverse_right(int s) const {
        const Coeff gap = Coeff::quadratic_gap(W_->node(s).param);
        return mul_simple_right(s) - scaled(gap);
    }
    /// this * T_w for w of length zero
    HeckeElement mul_length_zero_right(const WElement& w) const {
        HeckeElement h(W_);
        for (const auto& [x, c] : t_) h.add_term(W_->mul(x, w), c);
        return h;
    }
    HeckeElement mul_length_zero_left(const WElement& w) const {
        HeckeElement h(W_);
        for (const auto& [x, c] : t_) h.add_term(W_->mul(w, x), c);
        return h;
    }

    /// this * T_y
    HeckeElement mul_basis_right(const WElement& y) const {
        auto d = W_->reduced_decomposition(y);
        HeckeElement h = *this;
        for (int s : d.word) h = h.mul_simple_right(s);
        return h.mul_length_zero_right(d.omega);
    }

    friend HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) {
        HeckeElement h(a.W_ ? a.W_ : b.W_);
        check_same(a, b);
        for (const auto& [y, c] : b.t_) h += a.mul_basis_right(y).scaled(c);
        return h;
    }

    friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.t_ == b.t_; }

    /// Reexpress coefficients in a different ring.
    template <class S, class F>
    HeckeElement<S> map_coefficients(F&& f) const {
        HeckeElement<S> h(W_);
        for (const auto& [x, c] : t_) h.add_term(x, c.template map<S>(f));
        return h;
    }

private:
    void adopt(const HeckeElement& b) {
        if (!W_) W_ = b.W_;
        check_same(*this, b);
    }
    static void check_same(const HeckeElement& a, const HeckeElement& b) {
        if (a.W_ && b.W_ && a.W_ != b.W_) throw ValidationError("hecke: operands belong to different algebras");
    }

    IWGroupPtr W_;
    Terms t_;
};

/// T_x^{-1}
template <class R>
HeckeElement<R> basis_inverse(const IWGroupPtr& W, const WElement& x) {
    auto d = W->reduced_decomposition(x);
    HeckeElement<R> h = HeckeElement<R>::basis(W, W->inverse(d.omega));
    for (size_t i = d.word.size(); i-- > 0;) h = h.mul_simple_inverse_right(d.word[i]);
    return h;
}

/// Smallest k >= 0 with lam + k * 2rho^vee dominant.
inline Int dominant_shift(const IwahoriWeylGroup& W, const IntVec& lam) {
    if (W.rank() == 0) return 0;
    IntVec r = W.two_rho_vee();
    for (Int k = 0;; ++k) {
        IntVec x = add(lam, scale(r, k));
        if (W.is_dominant(x)) return k;
        if (k > 100000) throw ComputeError("dominant_shift: no dominant shift found");
    }
}

/// Bernstein element theta_lam = T_{t^{lam1}} T_{t^{lam2}}^{-1}, lam = lam1 - lam2 with both dominant.
template <class R>
HeckeElement<R> theta(const IWGroupPtr& W, const IntVec& lam) {
    Int k = dominant_shift(*W, lam);
    IntVec l2 = scale(W->two_rho_vee(), k);
    IntVec l1 = add(lam, l2);
    auto a = HeckeElement<R>::basis(W, W->translation(l1));
    if (k == 0) return a;
    return a * basis_inverse<R>(W, W->translation(l2));
}

/// theta_lam from an alcove walk along a reduced word of t^lam.
template <class R>
HeckeElement<R> theta_alcove_walk(const IWGroupPtr& W, const IntVec& lam) {
    WElement t = W->translation(lam);
    auto d = W->reduced_decomposition(t);
    HeckeElement<R> h = HeckeElement<R>::one(W);
    WElement prefix = W->identity();
    for (int s : d.word) {
        AffineRoot b = W->act(prefix, W->simple_affine_root(s));
        bool positive_crossing = b.root >= W->relative().num_positive;
        h = positive_crossing ? h.mul_simple_right(s) : h.mul_simple_inverse_right(s);
        prefix = W->mul_simple(prefix, s);
    }
    return h.mul_length_zero_right(d.omega);
}

/// z_lam = sum of theta_mu over the W_0-orbit of lam.
template <class R>
HeckeElement<R> bernstein_z(const IWGroupPtr& W, const IntVec& lam) {
    HeckeElement<R> z(W);
    for (const auto& mu : W->orbit(lam)) z += theta<R>(W, mu);
    return z;
}

template <class R>
bool is_central(const HeckeElement<R>& h) {
    const auto& W = h.group();
    for (int s = 0; s < W->num_nodes(); ++s)
        if (!(h.mul_simple_right(s) == h.mul_simple_left(s))) return false;
    for (const auto& om : W->omega_generators())
        if (!(h.mul_length_zero_right(om) == h.mul_length_zero_left(om))) return false;
    return true;
}

/// Coefficients c with h = sum c_lam z_lam, over dominant lam.
template <class R>
using BernsteinExpansion = std::map<IntVec, Laurent<R>>;

/// Peels a central element into orbit sums, using `theta_fn` for the Bernstein basis.
template <class R>
BernsteinExpansion<R> peel_central(
    HeckeElement<R> h,
    const std::function<HeckeElement<R>(const IWGroupPtr&, const IntVec&)>& theta_fn = theta_alcove_walk<R>) {
    BernsteinExpansion<R> out;
    const auto& W = h.group();
    int guard = 0;
    while (!h.is_zero()) {
        if (++guard > 10000) throw ComputeError("peel: did not terminate");
        std::optional<IntVec> best;
        Int best_len = -1;
        for (const auto& [x, c] : h.terms()) {
            if (x.w != 0 || !W->is_dominant(x.lam)) continue;
            Int l = W->length(x);
            if (l > best_len) {
                best_len = l;
                best = x.lam;
            }
        }
        if (!best) throw ComputeError("peel: element is not in the span of the orbit sums");
        Laurent<R> c = h.coeff(W->translation(*best));
        HeckeElement<R> z(W);
        for (const auto& mu : W->orbit(*best)) z += theta_fn(W, mu);
        h -= z.scaled(c);
        out[*best] += c;
    }
    return out;
}

/// Evaluates sum c_lam z_lam at the unramified character chi.
template <class R, class S>
Laurent<S> evaluate_expansion(const IwahoriWeylGroup& W, const BernsteinExpansion<R>& e,
                              const std::function<S(const IntVec&)>& chi,
                              const std::function<S(const R&)>& embed) {
    Laurent<S> total;
    for (const auto& [lam, c] : e) {
        S s(0);
        for (const auto& mu : W.orbit(lam)) s = s + chi(mu);
        total += c.template map<S>(embed).scaled(s);
    }
    return total;
}

// ---------------------------------------------------------------- parahoric level

/// 1_J = sum over W_J of v^{L(w)} T_w.
template <class R>
HeckeElement<R> parahoric_unit(const IWGroupPtr& W, const Facet& f) {
    HeckeElement<R> h(W);
    for (const auto& w : W->parabolic_elements(f)) h.add_term(w, Laurent<R>::v_power(W->weighted_length(w)));
    return h;
}

/// Poincare polynomial sum over W_J of v^{2 L(w)}, so that 1_J^2 = P_J 1_J.
template <class R>
Laurent<R> parahoric_poincare(const IWGroupPtr& W, const Facet& f) {
    Laurent<R> p;
    for (const auto& w : W->parabolic_elements(f)) p += Laurent<R>::v_power(2 * W->weighted_length(w));
    return p;
}

/// Numerator of e_J h e_J; the compressed element is this divided by P_J^2.
template <class R>
HeckeElement<R> parahoric_compress(const HeckeElement<R>& h, const Facet& f) {
    auto u = parahoric_unit<R>(h.group(), f);
    return u * h * u;
}

/// Coefficients in the basis 1_w = v^{L(w)} T_w.
template <class R>
std::map<WElement, Laurent<R>> to_unit_basis(const HeckeElement<R>& h) {
    std::map<WElement, Laurent<R>> out;
    for (const auto& [x, c] : h.terms()) out[x] = c.shifted(-h.group()->weighted_length(x));
    return out;
}

/// Transport along a morphism of Iwahori-Weyl groups; v -> v^power on coefficients.
template <class R>
HeckeElement<R> pushforward(const HeckeElement<R>& h, const IWMorphism& m, int power = 1) {
    if (h.group() != m.source()) throw ValidationError("pushforward: element is not in the source algebra");
    HeckeElement<R> out(m.target());
    for (const auto& [x, c] : h.terms()) out.add_term(m.apply(x), c.substitute_power(power));
    return out;
}

} // namespace weilres
