#pragma once

#include <map>
#include <string>

#include "voa/rational.hpp"

namespace voa {

// Element of a multi-quadratic extension of Q: a finite sum  sum_r q_r * sqrt(r)
// over square-free integer radicands r, with r = 1 carrying the rational part.
// Negative radicands use the fixed embedding sqrt(d) = i*sqrt(|d|), so products
// of radicals are unambiguous and the arithmetic is plain complex arithmetic
// restricted to these elements.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) { set(1, rat(v)); }
    Scalar(const Rational& v) { set(1, v); }

    // sqrt(n) in canonical form c*sqrt(m), n = c^2 m with m square-free.
    static Scalar sqrt_int(long n);
    static Scalar sqrt_rat(const Rational& r);
    static Scalar imag_unit() { return sqrt_int(-1); }

    bool is_zero() const { return t_.empty(); }
    bool is_rational() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 1); }
    Rational rational_value() const;

    const std::map<long, Rational>& terms() const { return t_; }
    Rational coeff(long radicand) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Exact inverse via the product of Galois conjugates (sign flips of the
    // radical generators); throws DivisionByZero on zero.
    Scalar inverse() const;
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    bool operator==(const Scalar& o) const { return t_ == o.t_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator==(long v) const { return *this == Scalar(v); }

    std::string str() const;

private:
    void set(long radicand, const Rational& q);
    Scalar conjugate(const std::vector<long>& generators, unsigned mask) const;
    std::vector<long> generators() const;

    std::map<long, Rational> t_;
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }
inline Scalar operator*(const Rational& a, const Scalar& b) { return Scalar(a) * b; }

} // namespace voa
