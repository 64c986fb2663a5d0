#include "doctest.h"

#include <random>

#include "voa/scalar.hpp"

using namespace voa;

namespace {

// deterministic small random scalars over sqrt(2), sqrt(-1), sqrt(-3)
Scalar random_scalar(std::mt19937_64& rng) {
    static const long rads[4] = {1, 2, -1, -3};
    Scalar s;
    for (long r : rads) {
        long num = static_cast<long>(rng() % 7) - 3;
        long den = 1 + static_cast<long>(rng() % 3);
        if (num == 0) continue;
        Scalar term = Scalar(rat(num, den)) * Scalar::sqrt_int(r);
        s += term;
    }
    return s;
}

} // namespace

TEST_CASE("sqrt reduces to square-free canonical form") {
    CHECK(Scalar::sqrt_int(8) == Scalar(2) * Scalar::sqrt_int(2));
    CHECK(Scalar::sqrt_int(1) == Scalar(1));
    CHECK(Scalar::sqrt_int(-2) * Scalar::sqrt_int(-2) == Scalar(-2));
    CHECK(Scalar::sqrt_int(12) == Scalar(2) * Scalar::sqrt_int(3));
    CHECK(Scalar::sqrt_int(-8) == Scalar(2) * Scalar::sqrt_int(-2));
    CHECK_THROWS_AS(Scalar::sqrt_int(0), Error);
}

TEST_CASE("embedding sqrt(d) = i sqrt(|d|) fixes signs of radical products") {
    Scalar i = Scalar::imag_unit();
    CHECK(i * i == Scalar(-1));
    CHECK(Scalar::sqrt_int(2) * Scalar::sqrt_int(-2) == Scalar(2) * i);
    CHECK(Scalar::sqrt_int(-2) * Scalar::sqrt_int(-3) == Scalar(-1) * Scalar::sqrt_int(6));
    CHECK(Scalar::sqrt_int(6) * Scalar::sqrt_int(10) == Scalar(2) * Scalar::sqrt_int(15));
}

TEST_CASE("rational arithmetic") {
    CHECK(Scalar(rat(1, 2)) + Scalar(rat(1, 3)) == Scalar(rat(5, 6)));
    CHECK((Scalar(rat(1, 2)) / Scalar(rat(1, 3))).rational_value() == rat(3, 2));
}

TEST_CASE("inverse of 1 + sqrt(2)") {
    Scalar x = Scalar(1) + Scalar::sqrt_int(2);
    Scalar inv = x.inverse();
    CHECK(inv == Scalar(-1) + Scalar::sqrt_int(2));
    CHECK(x * inv == Scalar(1));
}

TEST_CASE("division by zero is a typed error") {
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
    try {
        Scalar(0).inverse();
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
    }
}

TEST_CASE("field axioms on randomized triples") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    }
}

TEST_CASE("(sqrt(a) sqrt(b))^2 = a b for square-free a, b") {
    const long sf[] = {2, 3, 5, 6, -1, -2, -3, -5, 7, 10};
    for (long a : sf)
        for (long b : sf) {
            Scalar p = Scalar::sqrt_int(a) * Scalar::sqrt_int(b);
            CHECK(p * p == Scalar(a) * Scalar(b));
        }
}

TEST_CASE("inverses across several radicands") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        Scalar a = random_scalar(rng);
        if (a.is_zero()) continue;
        CHECK(a.inverse().inverse() == a);
    }
}
