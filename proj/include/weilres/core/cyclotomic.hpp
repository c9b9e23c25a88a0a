#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "weilres/core/scalar.hpp"

namespace weilres {

namespace detail {

/// Power basis data for Q(zeta_N): phi(N) and x^k mod Phi_N for 0 <= k < 2N.
struct CyclotomicLevel {
    int N = 1;
    int phi = 1;
    std::vector<std::vector<Int>> pow;
};

using IntPoly = std::vector<Int>; // coefficient i of x^i

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = checked::add(c[i + j], checked::mul(a[i], b[j]));
    return c;
}

// exact division by a monic polynomial
inline IntPoly poly_div_monic(IntPoly a, const IntPoly& m) {
    const size_t dm = m.size() - 1;
    if (a.size() <= dm) return {0};
    IntPoly q(a.size() - dm, 0);
    for (size_t k = a.size(); k-- > dm;) {
        Int c = a[k];
        q[k - dm] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dm; ++j) a[k - dm + j] = checked::sub(a[k - dm + j], checked::mul(c, m[j]));
    }
    return q;
}

inline IntPoly cyclotomic_poly(int n) {
    IntPoly num(static_cast<size_t>(n) + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = poly_div_monic(num, cyclotomic_poly(d));
    return num;
}

inline std::shared_ptr<const CyclotomicLevel> cyclotomic_level(int N) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const CyclotomicLevel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    auto lvl = std::make_shared<CyclotomicLevel>();
    lvl->N = N;
    IntPoly phi_poly = cyclotomic_poly(N);
    lvl->phi = static_cast<int>(phi_poly.size()) - 1;
    const int phi = lvl->phi;
    std::vector<Int> cur(phi, 0);
    cur[0] = 1;
    lvl->pow.reserve(2 * static_cast<size_t>(N));
    for (int k = 0; k < 2 * N; ++k) {
        lvl->pow.push_back(cur);
        // multiply by x and reduce with x^phi = -(phi_poly[0] + ... )
        Int top = cur[phi - 1];
        for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (phi == 1) cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < phi; ++i) cur[i] = checked::sub(cur[i], checked::mul(top, phi_poly[i]));
    }
    cache.emplace(N, lvl);
    return lvl;
}

} // namespace detail

/// Exact element of the cyclotomic field Q(zeta_N), stored in the power basis modulo Phi_N.
/// Elements of different levels are promoted to the lcm on arithmetic.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(Rational(0)) {}
    Cyclotomic(Int v) : Cyclotomic(Rational(static_cast<long>(v))) {} // NOLINT(google-explicit-constructor)
    Cyclotomic(ZZ v) : Cyclotomic(v.value()) {}                        // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& r) : level_(detail::cyclotomic_level(1)), c_{r} { c_[0].canonicalize(); } // NOLINT(google-explicit-constructor)

    /// zeta_N^k
    static Cyclotomic root_of_unity(int N, Int k) {
        if (N <= 0) throw ValidationError("root of unity order must be positive");
        Cyclotomic z;
        z.level_ = detail::cyclotomic_level(N);
        z.c_.assign(z.level_->phi, Rational(0));
        const auto& p = z.level_->pow[static_cast<size_t>(checked::mod(k, N))];
        for (int i = 0; i < z.level_->phi; ++i) z.c_[i] = Rational(static_cast<long>(p[i]));
        return z;
    }

    static Cyclotomic from_coefficients(int N, const std::vector<Rational>& coeffs) {
        Cyclotomic z;
        z.level_ = detail::cyclotomic_level(N);
        z.c_.assign(z.level_->phi, Rational(0));
        for (size_t k = 0; k < coeffs.size(); ++k) {
            if (sgn(coeffs[k]) == 0) continue;
            const auto& p = z.level_->pow[k % static_cast<size_t>(N)];
            for (int i = 0; i < z.level_->phi; ++i)
                if (p[i] != 0) z.c_[i] += coeffs[k] * static_cast<long>(p[i]);
        }
        return z;
    }

    int level() const { return level_->N; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (sgn(x) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }
    bool is_integer() const { return is_rational() && c_[0].get_den() == 1; }
    Rational rational_part() const { return c_[0]; }

    /// Same element written at level M (N must divide M).
    Cyclotomic promote(int M) const {
        if (M == level()) return *this;
        if (M % level() != 0) throw ComputeError("cyclotomic promotion to a non-multiple level");
        const int step = M / level();
        Cyclotomic z;
        z.level_ = detail::cyclotomic_level(M);
        z.c_.assign(z.level_->phi, Rational(0));
        for (size_t k = 0; k < c_.size(); ++k) {
            if (sgn(c_[k]) == 0) continue;
            const auto& p = z.level_->pow[(k * step) % static_cast<size_t>(M)];
            for (int i = 0; i < z.level_->phi; ++i)
                if (p[i] != 0) z.c_[i] += c_[k] * static_cast<long>(p[i]);
        }
        return z;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int L = std::lcm(a.level(), b.level());
        Cyclotomic x = a.promote(L), y = b.promote(L);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        int L = std::lcm(a.level(), b.level());
        Cyclotomic x = a.promote(L), y = b.promote(L);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    Cyclotomic operator-() const {
        Cyclotomic x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level() == 1) return b.scaled(a.c_[0]);
        if (b.level() == 1) return a.scaled(b.c_[0]);
        int L = std::lcm(a.level(), b.level());
        Cyclotomic x = a.promote(L), y = b.promote(L);
        const int phi = x.level_->phi;
        std::vector<Rational> prod(2 * static_cast<size_t>(phi), Rational(0));
        for (int i = 0; i < phi; ++i) {
            if (sgn(x.c_[i]) == 0) continue;
            for (int j = 0; j < phi; ++j)
                if (sgn(y.c_[j]) != 0) prod[i + j] += x.c_[i] * y.c_[j];
        }
        Cyclotomic z;
        z.level_ = x.level_;
        z.c_.assign(phi, Rational(0));
        for (size_t k = 0; k < prod.size(); ++k) {
            if (sgn(prod[k]) == 0) continue;
            const auto& p = z.level_->pow[k];
            for (int i = 0; i < phi; ++i)
                if (p[i] != 0) z.c_[i] += prod[k] * static_cast<long>(p[i]);
        }
        return z;
    }
    Cyclotomic scaled(const Rational& r) const {
        Cyclotomic x = *this;
        for (auto& v : x.c_) v *= r;
        return x;
    }
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

    /// Multiplicative inverse via the regular representation over Q.
    Cyclotomic inverse() const {
        if (is_zero()) throw ComputeError("inverse of zero in cyclotomic field");
        if (level() == 1) return Cyclotomic(Rational(1) / c_[0]);
        const int phi = level_->phi;
        // column j = this * x^j
        std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1, Rational(0)));
        for (int j = 0; j < phi; ++j) {
            Cyclotomic col = *this * root_of_unity(level(), j);
            for (int i = 0; i < phi; ++i) m[i][j] = col.c_[i];
        }
        m[0][phi] = 1;
        for (int col = 0, row = 0; col < phi; ++col, ++row) {
            int piv = row;
            while (piv < phi && sgn(m[piv][col]) == 0) ++piv;
            if (piv == phi) throw ComputeError("singular regular representation");
            std::swap(m[piv], m[row]);
            Rational inv = Rational(1) / m[row][col];
            for (auto& v : m[row]) v *= inv;
            for (int r = 0; r < phi; ++r) {
                if (r == row || sgn(m[r][col]) == 0) continue;
                Rational f = m[r][col];
                for (int k = col; k <= phi; ++k) m[r][k] -= f * m[row][k];
            }
        }
        std::vector<Rational> sol(phi);
        for (int i = 0; i < phi; ++i) sol[i] = m[i][phi];
        Cyclotomic z;
        z.level_ = level_;
        z.c_ = std::move(sol);
        return z;
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    /// Exact text encoding: "p/q" for rationals, "cyc(N: c0, c1, ...)" otherwise.
    std::string to_string() const {
        if (is_rational()) return c_[0].get_str();
        std::ostringstream os;
        os << "cyc(" << level() << ":";
        for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : " ") << c_[i].get_str();
        os << ")";
        return os.str();
    }

    static Cyclotomic parse(const std::string& text) {
        std::string s;
        for (char ch : text)
            if (ch != ' ') s.push_back(ch);
        if (s.rfind("cyc(", 0) != 0) return Cyclotomic(parse_rational(s));
        auto colon = s.find(':');
        if (colon == std::string::npos || s.back() != ')') throw ValidationError("malformed cyclotomic '" + text + "'");
        int N = std::stoi(s.substr(4, colon - 4));
        std::vector<Rational> coeffs;
        std::string body = s.substr(colon + 1, s.size() - colon - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(parse_rational(item));
        auto lvl = detail::cyclotomic_level(N);
        if (static_cast<int>(coeffs.size()) != lvl->phi)
            throw ValidationError("cyclotomic '" + text + "' has wrong coefficient count");
        Cyclotomic z;
        z.level_ = lvl;
        z.c_ = std::move(coeffs);
        return z;
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& z) { return os << z.to_string(); }

private:
    std::shared_ptr<const detail::CyclotomicLevel> level_;
    std::vector<Rational> c_;
};

inline bool scalar_is_zero(const Cyclotomic& a) { return a.is_zero(); }
inline std::string scalar_to_string(const Cyclotomic& a) { return a.to_string(); }

} // namespace weilres
