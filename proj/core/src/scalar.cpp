#include "voa/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace voa {

namespace {

// |n| = c^2 * m with m square-free; returns (c, m-with-sign-of-n).
std::pair<long, long> squarefree_split(long n) {
    long sign = n < 0 ? -1 : 1;
    long a = n < 0 ? -n : n;
    long c = 1, m = 1;
    for (long p = 2; p * p <= a; ++p) {
        if (a % p) continue;
        int e = 0;
        while (a % p == 0) { a /= p; ++e; }
        for (int i = 0; i < e / 2; ++i) c *= p;
        if (e & 1) m *= p;
    }
    m *= a;
    return {c, sign * m};
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    long a = n < 0 ? -n : n;
    for (long p = 2; p * p <= a; ++p) {
        if (a % p) continue;
        out.push_back(p);
        while (a % p == 0) a /= p;
    }
    if (a > 1) out.push_back(a);
    return out;
}

// sqrt(r)*sqrt(s) = q * sqrt(m) for square-free r, s under the i*sqrt(|d|) embedding.
std::pair<Rational, long> radical_product(long r, long s) {
    if (r == 1) return {1, s};
    if (s == 1) return {1, r};
    long ar = r < 0 ? -r : r, as = s < 0 ? -s : s;
    long g = std::gcd(ar, as);
    long m0 = (ar / g) * (as / g);
    int negs = (r < 0) + (s < 0);
    if (negs == 2) return {rat(-g), m0};
    if (negs == 1) return {rat(g), m0 == 1 ? -1 : -m0};
    return {rat(g), m0};
}

} // namespace

void Scalar::set(long radicand, const Rational& q) {
    if (q != 0) t_[radicand] = q;
}

Scalar Scalar::sqrt_int(long n) {
    if (n == 0) fail(ErrorCode::BadInput, "sqrt(0) is not a field generator");
    auto [c, m] = squarefree_split(n);
    Scalar out;
    out.set(m, rat(c));
    return out;
}

Scalar Scalar::sqrt_rat(const Rational& r) {
    if (r == 0) fail(ErrorCode::BadInput, "sqrt(0) is not a field generator");
    // sqrt(p/q) = sqrt(p q)/q
    long p = to_long(Rational(r.get_num()));
    long q = to_long(Rational(r.get_den()));
    Scalar s = sqrt_int(p * q);
    Scalar out;
    for (auto& [rad, coeff] : s.t_) out.set(rad, coeff / q);
    return out;
}

Rational Scalar::rational_value() const {
    if (t_.empty()) return 0;
    if (!is_rational()) fail(ErrorCode::BadInput, "scalar is irrational: " + str());
    return t_.begin()->second;
}

Rational Scalar::coeff(long radicand) const {
    auto it = t_.find(radicand);
    return it == t_.end() ? Rational(0) : it->second;
}

Scalar Scalar::operator-() const {
    Scalar out;
    for (auto& [r, q] : t_) out.t_[r] = -q;
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (auto& [r, q] : o.t_) {
        auto it = t_.find(r);
        if (it == t_.end()) {
            t_[r] = q;
        } else {
            it->second += q;
            if (it->second == 0) t_.erase(it);
        }
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (auto& [r, qa] : a.t_) {
        for (auto& [s, qb] : b.t_) {
            auto [factor, m] = radical_product(r, s);
            Rational q = qa * qb * factor;
            auto it = out.t_.find(m);
            if (it == out.t_.end()) {
                if (q != 0) out.t_[m] = q;
            } else {
                it->second += q;
                if (it->second == 0) out.t_.erase(it);
            }
        }
    }
    return out;
}

std::vector<long> Scalar::generators() const {
    std::vector<long> gens;
    bool has_negative = false;
    for (auto& [r, q] : t_) {
        if (r < 0) has_negative = true;
        for (long p : prime_factors(r)) {
            if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
        }
    }
    if (has_negative) gens.push_back(-1);
    return gens;
}

Scalar Scalar::conjugate(const std::vector<long>& gens, unsigned mask) const {
    Scalar out;
    for (auto& [r, q] : t_) {
        int flips = 0;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (!(mask & (1u << i))) continue;
            if (gens[i] == -1) {
                if (r < 0) ++flips;
            } else if (r % gens[i] == 0) {
                ++flips;
            }
        }
        out.t_[r] = (flips & 1) ? Rational(-q) : q;
    }
    return out;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "scalar division by zero");
    if (is_rational()) {
        Scalar out;
        out.set(1, 1 / t_.begin()->second);
        return out;
    }
    auto gens = generators();
    Scalar cofactor(1);
    Scalar norm = *this;
    for (unsigned mask = 1; mask < (1u << gens.size()); ++mask) {
        Scalar c = conjugate(gens, mask);
        cofactor = cofactor * c;
        norm = norm * c;
    }
    Rational n = norm.rational_value(); // full conjugate product is Galois-stable
    if (n == 0) fail(ErrorCode::DivisionByZero, "vanishing field norm");
    Scalar out;
    for (auto& [r, q] : cofactor.t_) out.set(r, q / n);
    return out;
}

std::string Scalar::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [r, q] : t_) {
        if (!first) os << (q >= 0 ? " + " : " - ");
        Rational a = (!first && q < 0) ? Rational(-q) : q;
        first = false;
        if (r == 1) {
            os << a.get_str();
        } else {
            if (a == 1) {
            } else if (a == -1) {
                os << "-";
            } else {
                os << a.get_str() << "*";
            }
            os << "sqrt(" << r << ")";
        }
    }
    return os.str();
}

} // namespace voa
