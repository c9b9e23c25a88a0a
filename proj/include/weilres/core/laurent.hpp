#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "weilres/core/scalar.hpp"

namespace weilres {

/// Laurent polynomial sum_k c_k v^k with coefficients in R, kept trimmed (zero is empty).
template <class R>
class Laurent {
public:
    Laurent() = default;
    Laurent(const R& c) { // NOLINT(google-explicit-constructor)
        if (!scalar_is_zero(c)) c_.push_back(c);
    }
    Laurent(Int c) : Laurent(R(c)) {} // NOLINT(google-explicit-constructor)

    /// c * v^k
    static Laurent monomial(int k, const R& c) {
        Laurent p(c);
        if (!p.c_.empty()) p.lo_ = k;
        return p;
    }
    static Laurent v_power(int k) { return monomial(k, R(1)); }

    /// v^L - v^{-L}
    static Laurent quadratic_gap(int L) { return v_power(L) - v_power(-L); }

    bool is_zero() const { return c_.empty(); }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && lo_ == 0); }
    const std::vector<R>& coeffs() const { return c_; }

    R coeff(int k) const {
        if (k < lo_ || k > high()) return R(0);
        return c_[static_cast<size_t>(k - lo_)];
    }
    R constant_term() const { return coeff(0); }

    /// Nonzero terms as (exponent, coefficient), ascending.
    std::vector<std::pair<int, R>> terms() const {
        std::vector<std::pair<int, R>> t;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!scalar_is_zero(c_[i])) t.emplace_back(lo_ + static_cast<int>(i), c_[i]);
        return t;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return combine(a, b, false); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return combine(a, b, true); }
    Laurent operator-() const {
        Laurent p = *this;
        for (auto& x : p.c_) x = R(0) - x;
        return p;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Laurent p;
        p.lo_ = a.lo_ + b.lo_;
        p.c_.assign(a.c_.size() + b.c_.size() - 1, R(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (scalar_is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!scalar_is_zero(b.c_[j])) p.c_[i + j] += a.c_[i] * b.c_[j];
        }
        p.trim();
        return p;
    }
    Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
    Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
    Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

    Laurent scaled(const R& r) const {
        if (scalar_is_zero(r)) return {};
        Laurent p = *this;
        for (auto& x : p.c_) x = x * r;
        p.trim();
        return p;
    }

    Laurent shifted(int k) const {
        Laurent p = *this;
        if (!p.c_.empty()) p.lo_ += k;
        return p;
    }

    /// p(v^f)
    Laurent substitute_power(int f) const {
        if (f <= 0) throw ComputeError("substitution exponent must be positive");
        Laurent p;
        if (c_.empty()) return p;
        p.lo_ = lo_ * f;
        p.c_.assign((c_.size() - 1) * static_cast<size_t>(f) + 1, R(0));
        for (size_t i = 0; i < c_.size(); ++i) p.c_[i * static_cast<size_t>(f)] = c_[i];
        return p;
    }

    template <class S, class F>
    Laurent<S> map(F&& f) const {
        Laurent<S> out;
        for (auto& [k, c] : terms()) out += Laurent<S>::monomial(k, f(c));
        return out;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        if (a.c_.size() != b.c_.size()) return false;
        if (a.c_.empty()) return true;
        if (a.lo_ != b.lo_) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : terms()) {
            os << (first ? "" : " + ") << "(" << scalar_to_string(c) << ")";
            if (k != 0) os << "v^" << k;
            first = false;
        }
        return os.str();
    }

private:
    static Laurent combine(const Laurent& a, const Laurent& b, bool negate_b) {
        if (b.is_zero()) return a;
        if (a.is_zero()) return negate_b ? -b : b;
        Laurent p;
        p.lo_ = std::min(a.lo_, b.lo_);
        int hi = std::max(a.high(), b.high());
        p.c_.assign(static_cast<size_t>(hi - p.lo_ + 1), R(0));
        for (size_t i = 0; i < a.c_.size(); ++i) p.c_[a.lo_ - p.lo_ + i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) {
            auto& slot = p.c_[b.lo_ - p.lo_ + i];
            if (negate_b)
                slot = slot - b.c_[i];
            else
                slot = slot + b.c_[i];
        }
        p.trim();
        return p;
    }

    void trim() {
        size_t a = 0;
        while (a < c_.size() && scalar_is_zero(c_[a])) ++a;
        if (a == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        size_t b = c_.size();
        while (scalar_is_zero(c_[b - 1])) --b;
        if (a > 0 || b < c_.size()) c_ = std::vector<R>(c_.begin() + static_cast<long>(a), c_.begin() + static_cast<long>(b));
        lo_ += static_cast<int>(a);
    }

    int lo_ = 0;
    std::vector<R> c_;
};

template <class R>
inline bool scalar_is_zero(const Laurent<R>& p) {
    return p.is_zero();
}

} // namespace weilres
