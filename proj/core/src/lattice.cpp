#include "voa/lattice.hpp"

#include <sstream>

namespace voa {

namespace {

Rational det_rational(std::vector<QVec> m) {
    int n = static_cast<int>(m.size());
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (m[r][col] != 0) { pivot = r; break; }
        }
        if (pivot < 0) return 0;
        if (pivot != col) { std::swap(m[pivot], m[col]); det = -det; }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

} // namespace

SVec OrthoBasis::to_orth(const QVec& v) const {
    SVec out;
    out.reserve(h.size());
    for (size_t a = 0; a < h.size(); ++a) {
        Scalar acc;
        for (size_t i = 0; i < v.size(); ++i) acc += Scalar(v[i]) * pair_with_basis[a][i];
        out.push_back(acc);
    }
    return out;
}

SVec OrthoBasis::to_orth_s(const SVec& v) const {
    SVec out;
    out.reserve(h.size());
    for (size_t a = 0; a < h.size(); ++a) {
        Scalar acc;
        for (size_t i = 0; i < v.size(); ++i) acc += v[i] * pair_with_basis[a][i];
        out.push_back(acc);
    }
    return out;
}

Lattice Lattice::load(const std::vector<std::vector<long>>& gram) {
    Lattice L;
    L.rank_ = static_cast<int>(gram.size());
    if (L.rank_ == 0) fail(ErrorCode::BadInput, "empty Gram matrix");
    for (auto& row : gram)
        if (static_cast<int>(row.size()) != L.rank_) fail(ErrorCode::BadInput, "Gram matrix not square");
    for (int i = 0; i < L.rank_; ++i) {
        for (int j = 0; j < L.rank_; ++j)
            if (gram[i][j] != gram[j][i]) fail(ErrorCode::NotSymmetric, "Gram matrix not symmetric");
        if (gram[i][i] % 2 != 0) fail(ErrorCode::OddDiagonal, "lattice not even: odd diagonal entry");
    }
    L.gram_ = gram;

    std::vector<QVec> qg(L.rank_, QVec(L.rank_));
    for (int i = 0; i < L.rank_; ++i)
        for (int j = 0; j < L.rank_; ++j) qg[i][j] = rat(gram[i][j]);
    if (det_rational(qg) == 0) fail(ErrorCode::Degenerate, "Gram matrix is degenerate");

    L.default_basis_ = L.orthonormal_basis();
    int pos = 0, neg = 0;
    for (auto& n : L.default_basis_.norms) (n > 0 ? pos : neg)++;
    L.sig_ = {pos, neg};
    for (auto& ha : L.default_basis_.h)
        for (auto& c : ha)
            for (auto& [r, q] : c.terms())
                if (r != 1) L.radicals_.insert(r);
    return L;
}

Rational Lattice::pairing(const QVec& u, const QVec& v) const {
    if (static_cast<int>(u.size()) != rank_ || static_cast<int>(v.size()) != rank_)
        fail(ErrorCode::DimensionMismatch, "vector dimension does not match lattice rank");
    Rational acc = 0;
    for (int i = 0; i < rank_; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < rank_; ++j) acc += u[i] * v[j] * gram_[i][j];
    }
    return acc;
}

long Lattice::pairing_int(const IVec& u, const IVec& v) const {
    long acc = 0;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) acc += u[i] * gram_[i][j] * v[j];
    return acc;
}

Scalar Lattice::pairing_scalar(const SVec& u, const SVec& v) const {
    if (static_cast<int>(u.size()) != rank_ || static_cast<int>(v.size()) != rank_)
        fail(ErrorCode::DimensionMismatch, "vector dimension does not match lattice rank");
    Scalar acc;
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) acc += u[i] * Scalar(rat(gram_[i][j])) * v[j];
    return acc;
}

OrthoBasis Lattice::orthonormal_basis(const std::vector<QVec>& preferred) const {
    OrthoBasis B;
    auto residual = [&](const QVec& v) {
        QVec r = v;
        for (size_t a = 0; a < B.raw.size(); ++a) {
            Rational c = pairing(v, B.raw[a]) / B.norms[a];
            for (int i = 0; i < rank_; ++i) r[i] -= c * B.raw[a][i];
        }
        return r;
    };
    auto push = [&](const QVec& v) {
        Rational n = pairing(v, v);
        B.raw.push_back(v);
        B.norms.push_back(n);
    };

    for (auto& p : preferred) {
        QVec r = residual(p);
        Rational n = pairing(r, r);
        if (n == 0) fail(ErrorCode::BadInput, "preferred direction is isotropic or dependent");
        push(r);
    }

    std::vector<QVec> pool;
    for (int i = 0; i < rank_; ++i) pool.push_back(basis_vector(i));
    while (static_cast<int>(B.raw.size()) < rank_) {
        std::vector<QVec> residuals;
        for (auto& v : pool) residuals.push_back(residual(v));
        bool placed = false;
        for (auto& r : residuals) {
            if (pairing(r, r) != 0) { push(r); placed = true; break; }
        }
        if (!placed) {
            // all residuals isotropic; nondegeneracy gives a pair with
            // nonzero cross pairing, whose sum is nonisotropic
            for (size_t i = 0; i < residuals.size() && !placed; ++i) {
                bool zi = true;
                for (auto& c : residuals[i]) zi = zi && c == 0;
                if (zi) continue;
                for (size_t j = i + 1; j < residuals.size() && !placed; ++j) {
                    if (pairing(residuals[i], residuals[j]) == 0) continue;
                    QVec s = residuals[i];
                    for (int k = 0; k < rank_; ++k) s[k] += residuals[j][k];
                    push(s);
                    placed = true;
                }
            }
            if (!placed) fail(ErrorCode::Degenerate, "orthogonalization stalled on degenerate form");
        }
    }

    for (int a = 0; a < rank_; ++a) {
        Scalar inv_len = Scalar::sqrt_rat(B.norms[a]).inverse();
        SVec ha(rank_);
        for (int i = 0; i < rank_; ++i) ha[i] = Scalar(B.raw[a][i]) * inv_len;
        B.h.push_back(ha);
    }
    for (int a = 0; a < rank_; ++a) {
        SVec row(rank_);
        for (int i = 0; i < rank_; ++i) {
            Scalar acc;
            for (int j = 0; j < rank_; ++j) acc += B.h[a][j] * Scalar(rat(gram_[i][j]));
            row[i] = acc;
        }
        B.pair_with_basis.push_back(row);
    }
    return B;
}

IVec Lattice::find_negative_partner(const QVec& alpha, long radius_cap) const {
    if (sig_.second == 0) fail(ErrorCode::NoPartner, "lattice is positive definite");
    for (long R = 1; R <= radius_cap; ++R) {
        IVec beta(rank_, -R);
        while (true) {
            long norm = pairing_int(beta, beta);
            if (norm < 0) {
                QVec qb(rank_);
                for (int i = 0; i < rank_; ++i) qb[i] = rat(beta[i]);
                if (pairing(alpha, qb) < 0) return beta;
            }
            int k = rank_ - 1;
            while (k >= 0 && beta[k] == R) { beta[k] = -R; --k; }
            if (k < 0) break;
            ++beta[k];
        }
    }
    fail(ErrorCode::NoPartner, "no negative partner within search radius");
}

QVec Lattice::basis_vector(int i) const {
    QVec v(rank_, Rational(0));
    v[i] = 1;
    return v;
}

} // namespace voa
