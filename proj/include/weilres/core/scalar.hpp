#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "weilres/core/int_matrix.hpp"

namespace weilres {

/// Overflow-checked machine integer usable as a ring coefficient.
class ZZ {
public:
    ZZ() = default;
    ZZ(Int v) : v_(v) {} // NOLINT(google-explicit-constructor)

    Int value() const { return v_; }

    friend ZZ operator+(ZZ a, ZZ b) { return checked::add(a.v_, b.v_); }
    friend ZZ operator-(ZZ a, ZZ b) { return checked::sub(a.v_, b.v_); }
    friend ZZ operator*(ZZ a, ZZ b) { return checked::mul(a.v_, b.v_); }
    ZZ operator-() const { return checked::sub(0, v_); }
    ZZ& operator+=(ZZ b) { return *this = *this + b; }
    ZZ& operator-=(ZZ b) { return *this = *this - b; }
    ZZ& operator*=(ZZ b) { return *this = *this * b; }
    friend bool operator==(ZZ a, ZZ b) { return a.v_ == b.v_; }
    friend auto operator<=>(ZZ a, ZZ b) { return a.v_ <=> b.v_; }
    friend std::ostream& operator<<(std::ostream& os, ZZ a) { return os << a.v_; }

private:
    Int v_ = 0;
};

using Rational = mpq_class;

inline bool scalar_is_zero(const ZZ& a) { return a.value() == 0; }
inline bool scalar_is_zero(const Rational& a) { return sgn(a) == 0; }

inline std::string scalar_to_string(const ZZ& a) { return std::to_string(a.value()); }
inline std::string scalar_to_string(const Rational& a) { return a.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw ValidationError("malformed rational '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace weilres
