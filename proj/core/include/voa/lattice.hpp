#pragma once

#include <optional>
#include <set>
#include <vector>

#include "voa/scalar.hpp"

namespace voa {

using SVec = std::vector<Scalar>;

// Complex-orthonormal basis of h = C (x) L, kept both raw (rational orthogonal
// vectors v_a with their norms) and normalized (h_a = v_a / sqrt(<v_a,v_a>)).
struct OrthoBasis {
    std::vector<QVec> raw;          // pairwise orthogonal, rational lattice coords
    std::vector<Rational> norms;    // <v_a, v_a>, all nonzero
    std::vector<SVec> h;            // h_a in lattice coords, <h_a,h_b> = delta
    std::vector<SVec> pair_with_basis; // pair_with_basis[a][i] = <h_a, alpha_i>

    int dim() const { return static_cast<int>(raw.size()); }
    // Coordinates of an h-vector in the h_a basis: c_a = <v, h_a>.
    SVec to_orth(const QVec& v) const;
    SVec to_orth_s(const SVec& v) const;
    Scalar pair_basis(int a, int i) const { return pair_with_basis[a][i]; }
};

class Lattice {
public:
    // Validates: square symmetric integer Gram, even diagonal, nonzero determinant.
    static Lattice load(const std::vector<std::vector<long>>& gram);

    int rank() const { return rank_; }
    const std::vector<std::vector<long>>& gram() const { return gram_; }

    Rational pairing(const QVec& u, const QVec& v) const;
    long pairing_int(const IVec& u, const IVec& v) const;
    Scalar pairing_scalar(const SVec& u, const SVec& v) const;

    // Sylvester signature (positive count, negative count).
    std::pair<int, int> signature() const { return sig_; }

    // Orthonormal basis over the scalar field; `preferred` vectors (pairwise
    // orthogonal, nonisotropic) are pivoted into the leading slots.
    OrthoBasis orthonormal_basis(const std::vector<QVec>& preferred = {}) const;
    const OrthoBasis& default_basis() const { return default_basis_; }

    // Square-free radicands adjoined for the default orthonormal basis.
    const std::set<long>& radical_set() const { return radicals_; }

    // First beta (growing coordinate balls, lexicographic) with <beta,beta> < 0
    // and <alpha,beta> < 0; NoPartner if the form is positive definite or the
    // search radius cap is exhausted.
    IVec find_negative_partner(const QVec& alpha, long radius_cap = 10) const;

    QVec basis_vector(int i) const;
    QVec zero_vector() const { return QVec(rank_, Rational(0)); }

private:
    int rank_ = 0;
    std::vector<std::vector<long>> gram_;
    std::pair<int, int> sig_{0, 0};
    OrthoBasis default_basis_;
    std::set<long> radicals_;
};

} // namespace voa
