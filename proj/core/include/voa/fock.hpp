#pragma once

#include <map>
#include <vector>

#include "voa/central_ext.hpp"

namespace voa {

// Ground label of a Fock monomial: e^mu (untwisted, mu in lattice coords,
// rational entries allowed for M(1,lambda) and dual-coset modules) or a basis
// index of the twisted ground space T.
struct Ground {
    bool twisted = false;
    QVec mu;   // untwisted only
    int t = 0; // twisted only

    static Ground untwisted(QVec mu_) { return Ground{false, std::move(mu_), 0}; }
    static Ground twisted_index(int t_) { return Ground{true, {}, t_}; }
};

int cmp(const Ground& a, const Ground& b);

// Normal-form creation monomial h_{a1}(-n1)...h_{ak}(-nk) ground, with modes
// stored as dm = 2n (dm even: untwisted integer modes; dm odd: twisted
// half-odd modes) against the module's fixed orthonormal basis, sorted
// nonincreasing.
struct Monomial {
    std::vector<std::pair<int, int>> modes; // (dm, direction), sorted desc
    Ground g;

    int heis_weight_dm() const { // 2 * sum of mode weights
        int s = 0;
        for (auto& [dm, a] : modes) s += dm;
        return s;
    }
    bool operator<(const Monomial& o) const;
    bool operator==(const Monomial& o) const;
};

// Finite linear combination of monomials over Scalar, canonical (no zeros).
class Element {
public:
    Element() = default;

    static Element monomial(Monomial m, Scalar c = Scalar(1));

    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }
    const std::map<Monomial, Scalar>& terms() const { return c_; }

    void add(const Monomial& m, const Scalar& c);
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& c, const Element& x);
    bool operator==(const Element& o) const { return c_ == o.c_; }

    std::string str() const;

private:
    std::map<Monomial, Scalar> c_;
};

// Everything needed to evaluate operators on a module: the lattice with its
// default orthonormal basis, the cocycle, the sector, and for untwisted
// modules the coset base point (V_L: 0; M(1,lambda)/V_{L+mu}: the base), for
// twisted modules the Lhat/K-module (null for plain M(1)(theta)).
struct ModuleCtx {
    const Lattice* L = nullptr;
    const OrthoBasis* basis = nullptr;
    const Cocycle* eps = nullptr;
    bool twisted = false;
    QVec base;                  // untwisted coset base point
    const QuotientGroup* G = nullptr;
    const GroupRep* rep = nullptr;

    int rank() const { return L->rank(); }

    static ModuleCtx untwisted_vl(const Lattice& L, const OrthoBasis& B, const Cocycle& eps);
    static ModuleCtx untwisted_coset(const Lattice& L, const OrthoBasis& B, const Cocycle& eps, QVec base);
    static ModuleCtx twisted_module(const Lattice& L, const OrthoBasis& B, const Cocycle& eps,
                             const QuotientGroup* G, const GroupRep* rep);
};

// -- construction helpers ---------------------------------------------------

Element vacuum(const ModuleCtx& ctx);            // e^0 or twisted ground t_0
Element ground_state(const ModuleCtx& ctx, QVec mu);
Element twisted_ground(int t);

// h_a(-n) x for an orthonormal direction index a; dm = 2n > 0 with parity
// matching the sector.
Element creation(int dir, int dm, const Element& x);

// -- spec operations ---------------------------------------------------------

// h(n) x for an arbitrary h-vector given in lattice coordinates (rational) and
// mode n in dm units (dm = 2n, even for untwisted targets, odd for twisted).
Element mode_action(const ModuleCtx& ctx, const QVec& h, int dm, const Element& x);
// Same with h given by coordinates against the orthonormal basis.
Element mode_action_orth(const ModuleCtx& ctx, const SVec& h_orth, int dm, const Element& x);

Element theta(const Element& x);

// L(0)-eigenvalue; throws Inhomogeneous if mixed.
Rational grade(const ModuleCtx& ctx, const Element& x);
Rational grade_monomial(const ModuleCtx& ctx, const Monomial& m);
bool is_homogeneous(const ModuleCtx& ctx, const Element& x);

Element project_eigen(const Element& x, int sign);

} // namespace voa
