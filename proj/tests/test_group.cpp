#include "doctest.h"

#include <random>

#include "voa/central_ext.hpp"

using namespace voa;
using Gram = std::vector<std::vector<long>>;

namespace {

struct Setup {
    Lattice L;
    Cocycle eps;
    QuotientGroup G;
    Setup(const std::vector<std::vector<long>>& gram)
        : L(Lattice::load(gram)), eps(&L), G(QuotientGroup::build(L, eps)) {}
};

IVec random_vec(std::mt19937_64& rng, int d) {
    IVec v(d);
    for (auto& x : v) x = static_cast<long>(rng() % 9) - 4;
    return v;
}

} // namespace

TEST_CASE("cocycle basis convention and bimultiplicativity") {
    Setup s(Gram{{0, 1}, {1, 0}});
    IVec a1{1, 0}, a2{0, 1};
    CHECK(s.eps.eps(a1, a1) == 1);
    CHECK(s.eps.eps(a1, a2) == 1);  // i <= j convention
    CHECK(s.eps.eps(a2, a1) == -1); // (-1)^<a2,a1>
    IVec a1x2{2, 0};
    CHECK(s.eps.eps(a1x2, a2) == 1); // eps(2a,b) = eps(a,b)^2
}

TEST_CASE("cocycle identities on random vectors") {
    std::mt19937_64 rng(31337);
    for (auto& gram : {std::vector<std::vector<long>>{{0, 1}, {1, 0}},
                       std::vector<std::vector<long>>{{-2, 0}, {0, -2}},
                       std::vector<std::vector<long>>{{2, 1}, {1, -4}}}) {
        Setup s(gram);
        for (int t = 0; t < 200; ++t) {
            IVec a = random_vec(rng, 2), b = random_vec(rng, 2), c = random_vec(rng, 2);
            long ab = s.L.pairing_int(a, b);
            int comm = (ab % 2) ? -1 : 1;
            CHECK(s.eps.eps(a, b) * s.eps.eps(b, a) == comm);
            IVec apb{a[0] + b[0], a[1] + b[1]}, bpc{b[0] + c[0], b[1] + c[1]};
            CHECK(s.eps.eps(a, b) * s.eps.eps(apb, c) == s.eps.eps(b, c) * s.eps.eps(a, bpc));
        }
    }
}

TEST_CASE("quotient group orders and commutativity") {
    Setup n(Gram{{-2}});
    CHECK(n.G.order() == 4);
    CHECK(n.G.abelian());

    Setup h(Gram{{0, 1}, {1, 0}});
    CHECK(h.G.order() == 8);
    CHECK(!h.G.abelian());

    Setup p(Gram{{2}});
    CHECK(p.G.order() == 4);
    CHECK(p.G.abelian());
}

TEST_CASE("central characters with chi(kappa) = -1") {
    Setup n(Gram{{-2}});
    auto cs = central_characters(n.G);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].irrep_dim == 1);
    CHECK(cs[1].irrep_dim == 1);

    Setup h(Gram{{0, 1}, {1, 0}});
    auto ch = central_characters(h.G);
    REQUIRE(ch.size() == 1);
    CHECK(ch[0].irrep_dim == 2);

    Setup d2(Gram{{-2, 0}, {0, -2}});
    auto cd = central_characters(d2.G);
    REQUIRE(cd.size() == 4);
    for (auto& c : cd) CHECK(c.irrep_dim == 1);
}

TEST_CASE("sum of squared dimensions is |G|/2") {
    for (auto& gram : {std::vector<std::vector<long>>{{-2}}, std::vector<std::vector<long>>{{0, 1}, {1, 0}},
                       std::vector<std::vector<long>>{{-2, 0}, {0, -2}},
                       std::vector<std::vector<long>>{{2, 1}, {1, -4}}}) {
        Setup s(gram);
        auto cs = central_characters(s.G);
        int sum = 0;
        for (auto& c : cs) sum += c.irrep_dim * c.irrep_dim;
        CHECK(sum == s.G.order() / 2);
    }
}

TEST_CASE("irreducible modules satisfy the multiplication table and kappa = -I") {
    for (auto& gram : {std::vector<std::vector<long>>{{-2}}, std::vector<std::vector<long>>{{0, 1}, {1, 0}},
                       std::vector<std::vector<long>>{{-2, 0}, {0, -2}}}) {
        Setup s(gram);
        for (auto& chi : central_characters(s.G)) {
            GroupRep T = irreducible_module(s.G, chi);
            CHECK(T.dim == chi.irrep_dim);
            int n = s.G.order();
            // kappa acts as -identity
            for (int i = 0; i < T.dim; ++i)
                for (int j = 0; j < T.dim; ++j)
                    CHECK(T.mat[s.G.kappa()][i][j] == (i == j ? Scalar(-1) : Scalar(0)));
            // table conformance, entry by entry
            for (int g = 0; g < n; ++g)
                for (int hh = 0; hh < n; ++hh) {
                    auto& A = T.mat[g];
                    auto& B = T.mat[hh];
                    auto& C = T.mat[s.G.mul(g, hh)];
                    for (int i = 0; i < T.dim; ++i)
                        for (int j = 0; j < T.dim; ++j) {
                            Scalar acc;
                            for (int k = 0; k < T.dim; ++k) acc += A[i][k] * B[k][j];
                            CHECK(acc == C[i][j]);
                        }
                }
        }
    }
}

TEST_CASE("irreducibility via endomorphism-space dimension one") {
    Setup h(Gram{{0, 1}, {1, 0}});
    auto chi = central_characters(h.G).front();
    GroupRep T = irreducible_module(h.G, chi);
    REQUIRE(T.dim == 2);
    // Solve X A_g = A_g X for all g; the solution space must be scalars.
    // Unknowns X_{ij}, equations per (g, i, j).
    int n = T.dim;
    std::vector<std::vector<Scalar>> rows;
    for (int g = 0; g < h.G.order(); ++g) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Scalar> row(n * n, Scalar(0));
                for (int k = 0; k < n; ++k) {
                    row[i * n + k] += T.mat[g][k][j];
                    row[k * n + j] -= T.mat[g][i][k];
                }
                rows.push_back(row);
            }
    }
    // Gaussian elimination rank
    int rank = 0;
    std::vector<std::vector<Scalar>> m = rows;
    for (int col = 0; col < n * n; ++col) {
        int pivot = -1;
        for (size_t r = rank; r < m.size(); ++r)
            if (!m[r][col].is_zero()) { pivot = static_cast<int>(r); break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        Scalar inv = m[rank][col].inverse();
        for (auto& x : m[rank]) x = inv * x;
        for (size_t r = 0; r < m.size(); ++r) {
            if (static_cast<int>(r) == rank || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (int c = 0; c < n * n; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    CHECK(n * n - rank == 1);
}

TEST_CASE("hyperbolic irreducible: anticommuting generators") {
    Setup h(Gram{{0, 1}, {1, 0}});
    auto chi = central_characters(h.G).front();
    GroupRep T = irreducible_module(h.G, chi);
    int e1 = h.G.elem(IVec{1, 0}), e2 = h.G.elem(IVec{0, 1});
    // commutator (-1)^<a1,a2> = -1: matrices anticommute through kappa
    CHECK(h.G.mul(e1, e2) != h.G.mul(e2, e1));
    Scalar tr;
    for (int i = 0; i < T.dim; ++i) tr += T.mat[e1][i][i];
    CHECK(tr == Scalar(0)); // noncentral elements are traceless here
}
