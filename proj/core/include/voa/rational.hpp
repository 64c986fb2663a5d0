#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "voa/error.hpp"

namespace voa {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using IVec = std::vector<long>;

inline Rational rat(long num, long den = 1) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Rational& r) {
    if (!is_integer(r)) fail(ErrorCode::BadInput, "expected integer rational");
    if (!r.get_num().fits_slong_p()) fail(ErrorCode::BadInput, "integer out of range");
    return r.get_num().get_si();
}

// 2^e for e of either sign.
inline Rational pow2(long e) {
    mpz_class n = 1, d = 1;
    if (e >= 0)
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
    else
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-e));
    return Rational(n, d);
}

// Generalized binomial C(m, k) = m(m-1)...(m-k+1)/k! for rational m, integer k >= 0.
inline Rational binomial(const Rational& m, long k) {
    if (k < 0) return 0;
    Rational acc = 1;
    for (long i = 0; i < k; ++i) acc *= (m - i) / Rational(i + 1);
    return acc;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

} // namespace voa
