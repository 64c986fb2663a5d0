#pragma once

#include <map>
#include <vector>

#include "voa/lattice.hpp"

namespace voa {

// Bimultiplicative 2-cocycle eps: L x L -> {+-1} with the lower-triangular
// basis convention eps(a_i, a_j) = (-1)^<a_i,a_j> for i > j and 1 for i <= j.
class Cocycle {
public:
    explicit Cocycle(const Lattice* L) : L_(L) {}

    int eps(const IVec& a, const IVec& b) const;       // +1 or -1
    int eps_q(const QVec& a, const QVec& b) const;     // integer coords required

    const Lattice* lattice() const { return L_; }

private:
    const Lattice* L_;
};

// The finite quotient Lhat/K.  Elements are normal forms (s, abar) with
// s in {0,1} the kappa exponent and abar in L/2L a coordinate bitmask; the
// element index is (s << d) | abar.
struct QuotientGroup {
    const Lattice* L = nullptr;
    const Cocycle* eps = nullptr;
    int d = 0;

    static QuotientGroup build(const Lattice& L, const Cocycle& eps);

    int order() const { return 2 << d; }
    int identity() const { return 0; }
    int kappa() const { return 1 << d; }

    int mul(int x, int y) const;
    int inv(int x) const;
    bool abelian() const;
    std::vector<int> center() const;

    // Image of e_alpha for an integer lattice vector.
    int elem(const IVec& alpha) const;
    IVec rep_of_mask(int mask) const;
};

// A character of the center of Lhat/K (values are 4th roots of unity).
struct CentralCharacter {
    std::map<int, Scalar> values; // element index -> value on center elements
    int irrep_dim = 0;

    Scalar at(int z) const { return values.at(z); }
};

// Irreducible Lhat/K-module with a given central character; kappa acts as -I.
struct GroupRep {
    int dim = 0;
    CentralCharacter chi;
    std::vector<std::vector<SVec>> mat; // mat[g][i][j], for every group element g

    const std::vector<SVec>& matrix(int g) const { return mat[g]; }
    // Matrix of e_alpha on T.
    const std::vector<SVec>& matrix_of(const QuotientGroup& G, const IVec& alpha) const {
        return mat[G.elem(alpha)];
    }
};

// All characters of the center with chi(kappa) = -1, each with the dimension
// of its unique irreducible; deterministic order.
std::vector<CentralCharacter> central_characters(const QuotientGroup& G);

// Explicit irreducible by induction from a maximal abelian subgroup.
GroupRep irreducible_module(const QuotientGroup& G, const CentralCharacter& chi);

} // namespace voa
