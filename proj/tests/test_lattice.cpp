#include "doctest.h"

#include <random>

#include "voa/lattice.hpp"

using namespace voa;

namespace {

const std::vector<std::vector<long>> kHyperbolic = {{0, 1}, {1, 0}};

std::vector<std::vector<long>> conjugate_by_unimodular(const std::vector<std::vector<long>>& g,
                                                       std::mt19937_64& rng) {
    // random product of elementary row/column operations U^T G U
    int d = static_cast<int>(g.size());
    std::vector<std::vector<long>> u(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i) u[i][i] = 1;
    for (int step = 0; step < 6; ++step) {
        int i = static_cast<int>(rng() % d), j = static_cast<int>(rng() % d);
        if (i == j) continue;
        long c = static_cast<long>(rng() % 3) - 1;
        for (int k = 0; k < d; ++k) u[k][j] += c * u[k][i];
    }
    std::vector<std::vector<long>> out(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long acc = 0;
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) acc += u[p][i] * g[p][q] * u[q][j];
            out[i][j] = acc;
        }
    return out;
}

} // namespace

TEST_CASE("load validates evenness, symmetry, nondegeneracy") {
    CHECK(Lattice::load({{-2}}).signature() == std::pair<int, int>{0, 1});
    CHECK(Lattice::load(kHyperbolic).signature() == std::pair<int, int>{1, 1});
    try {
        Lattice::load({{1}});
        FAIL("expected OddDiagonal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OddDiagonal);
    }
    try {
        Lattice::load({{2, 1}, {0, 2}});
        FAIL("expected NotSymmetric");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSymmetric);
    }
    try {
        Lattice::load({{2, 2}, {2, 2}});
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Degenerate);
    }
}

TEST_CASE("pairing matches Gram entries") {
    Lattice L = Lattice::load(kHyperbolic);
    CHECK(L.pairing(L.basis_vector(0), L.basis_vector(1)) == 1);
    QVec s{rat(1), rat(1)};
    CHECK(L.pairing(s, s) == 2);
    Lattice N = Lattice::load({{-2}});
    CHECK(N.pairing(N.basis_vector(0), N.basis_vector(0)) == -2);
    CHECK_THROWS_AS(L.pairing(QVec{rat(1)}, s), Error);
}

TEST_CASE("orthonormal basis satisfies B^T G B = I exactly") {
    for (auto& gram : {std::vector<std::vector<long>>{{-2}}, kHyperbolic,
                       std::vector<std::vector<long>>{{2}}, std::vector<std::vector<long>>{{2, 0}, {0, -4}},
                       std::vector<std::vector<long>>{{4, 1}, {1, -6}}}) {
        Lattice L = Lattice::load(gram);
        auto& B = L.default_basis();
        for (int a = 0; a < L.rank(); ++a)
            for (int b = 0; b < L.rank(); ++b) {
                Scalar p = L.pairing_scalar(B.h[a], B.h[b]);
                CHECK(p == Scalar(a == b ? 1 : 0));
            }
    }
}

TEST_CASE("preferred direction is pivoted first") {
    Lattice L = Lattice::load({{2, 0}, {0, -4}});
    QVec alpha{rat(1), rat(1)};
    OrthoBasis B = L.orthonormal_basis({alpha});
    // h_1 is proportional to alpha
    Scalar c0 = B.h[0][0], c1 = B.h[0][1];
    CHECK(c0 == c1);
    CHECK(L.pairing_scalar(B.h[0], B.h[0]) == Scalar(1));
    CHECK(L.pairing_scalar(B.h[0], B.h[1]) == Scalar(0));
}

TEST_CASE("signature is invariant under unimodular change of basis") {
    std::mt19937_64 rng(99);
    for (auto& gram : {kHyperbolic, std::vector<std::vector<long>>{{2, 0}, {0, -4}},
                       std::vector<std::vector<long>>{{-2, 0}, {0, -2}}}) {
        auto sig = Lattice::load(gram).signature();
        for (int t = 0; t < 10; ++t) {
            auto g2 = conjugate_by_unimodular(gram, rng);
            CHECK(Lattice::load(g2).signature() == sig);
        }
    }
}

TEST_CASE("pairing is symmetric and bilinear on random inputs") {
    std::mt19937_64 rng(4242);
    Lattice L = Lattice::load({{4, 1}, {1, -6}});
    for (int t = 0; t < 50; ++t) {
        QVec u{rat(static_cast<long>(rng() % 9) - 4), rat(static_cast<long>(rng() % 9) - 4)};
        QVec v{rat(static_cast<long>(rng() % 9) - 4), rat(static_cast<long>(rng() % 9) - 4)};
        QVec w{rat(static_cast<long>(rng() % 9) - 4), rat(static_cast<long>(rng() % 9) - 4)};
        CHECK(L.pairing(u, v) == L.pairing(v, u));
        QVec uv{u[0] + v[0], u[1] + v[1]};
        CHECK(L.pairing(uv, w) == L.pairing(u, w) + L.pairing(v, w));
    }
}

TEST_CASE("negative partner search") {
    Lattice H = Lattice::load(kHyperbolic);
    IVec beta = H.find_negative_partner(H.basis_vector(0));
    CHECK(beta == IVec{1, -1});

    Lattice N = Lattice::load({{-2}});
    CHECK(N.find_negative_partner(N.basis_vector(0)) == IVec{1});

    Lattice P = Lattice::load({{2}});
    try {
        P.find_negative_partner(P.basis_vector(0));
        FAIL("expected NoPartner");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoPartner);
    }
}
