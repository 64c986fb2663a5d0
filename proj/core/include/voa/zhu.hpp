#pragma once

#include <memory>

#include "voa/matrix.hpp"
#include "voa/vertex.hpp"

namespace voa {

// Full per-lattice context: lattice with default orthonormal basis, cocycle,
// quotient group, central characters and their irreducible modules.
struct Tower {
    Lattice L;
    Cocycle eps;
    QuotientGroup G;
    std::vector<CentralCharacter> chars;
    std::vector<GroupRep> reps;

    explicit Tower(const std::vector<std::vector<long>>& gram);
    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    int rank() const { return L.rank(); }
    ModuleCtx vl() const { return ModuleCtx::untwisted_vl(L, L.default_basis(), eps); }
    ModuleCtx coset(QVec base) const {
        return ModuleCtx::untwisted_coset(L, L.default_basis(), eps, std::move(base));
    }
    ModuleCtx mtheta() const { return ModuleCtx::twisted_module(L, L.default_basis(), eps, nullptr, nullptr); }
    ModuleCtx vt(int chi) const { return ModuleCtx::twisted_module(L, L.default_basis(), eps, &G, &reps[chi]); }
};

// Zhu products on the untwisted algebra; u grouped into homogeneous parts.
Element star(const ModuleCtx& vctx, const Element& u, const Element& v);
Element circ(const ModuleCtx& vctx, const Element& u, const Element& v);

// A *-expression over Fock vectors, kept symbolic until an action is taken;
// the isotropic Btilde is an operator given directly by its top-level action.
struct ZhuOp {
    enum class Kind { Vec, Star, Sum, BtildeIso };
    Kind kind = Kind::Vec;
    Element vec;
    std::vector<ZhuOp> factors;                    // Star: left-to-right product
    std::vector<std::pair<Scalar, ZhuOp>> summands; // Sum
    IVec alpha;                                    // BtildeIso

    static ZhuOp of(Element v);
    static ZhuOp star_of(ZhuOp a, ZhuOp b);
    static ZhuOp sum_of(std::vector<std::pair<Scalar, ZhuOp>> s);
    static ZhuOp btilde_iso(IVec alpha);
};

// A top level M(0) with its module context and a printable name.
struct TopLevel {
    std::string name;
    std::vector<Element> basis;
    ModuleCtx ctx;
    const Tower* tower = nullptr;
};

// Table 1 families.
TopLevel top_m1_plus(const Tower& tw);
TopLevel top_m1_minus(const Tower& tw);
TopLevel top_m1_lambda(const Tower& tw, const QVec& lambda);
TopLevel top_mtheta_plus(const Tower& tw);
TopLevel top_mtheta_minus(const Tower& tw);
// Twisted V_L^{T_chi,+-}(0).
TopLevel top_vt(const Tower& tw, int chi, int sign);
// Rank-one positive definite families (Tables 2 and 3).
TopLevel top_v_plus(const Tower& tw);
TopLevel top_v_minus(const Tower& tw);
TopLevel top_v_coset(const Tower& tw, long r);
TopLevel top_v_half(const Tower& tw, int sign);

// Matrix of o(expr) on a top level (o(u*v) composes as o(u)o(v) there).
Mat o_action_matrix(const ZhuOp& op, const TopLevel& top);
Mat zero_mode_matrix(const Element& v, const TopLevel& top);

// Coordinates of x in the top-level basis; throws if x escapes the span.
SVec expand_in_basis(const Element& x, const TopLevel& top);

// Named generators against a chosen orthonormal basis (indices are 0-based).
struct GenSet {
    const Tower* tw;
    const OrthoBasis* ob;

    GenSet(const Tower& t, const OrthoBasis& b) : tw(&t), ob(&b) {}
    explicit GenSet(const Tower& t) : tw(&t), ob(&t.L.default_basis()) {}

    Element creation_h(int a, int dm, const Element& x) const; // h_a(-dm/2) in ob coords
    Element vac() const;
    Element omega_a(int a) const;
    Element J_a(int a) const;
    ZhuOp H_a(int a) const;
    Element S_ab(int a, int b, int m, int n) const;
    Element Eu_offdiag(int a, int b) const;  // a != b
    Element Et_offdiag(int a, int b) const;  // a != b
    ZhuOp Eu_ab(int a, int b) const;         // diagonal entries via * (rank-1: H-polynomial)
    ZhuOp Et_ab(int a, int b) const;
    Element Lambda_ab(int a, int b) const;
};

// Lattice-vector families (default basis; alpha integral).
Element e_alpha(const Tower& tw, const IVec& alpha);
Element E_alpha(const Tower& tw, const IVec& alpha);
Element F_alpha(const Tower& tw, const IVec& alpha);
ZhuOp B_alpha(const Tower& tw, const IVec& alpha);
// Nonisotropic Btilde; for isotropic alpha returns the section-4 display op.
ZhuOp Btilde_alpha(const Tower& tw, const IVec& alpha);

// Splitting alpha = gamma + beta with <gamma,beta> = 0, <gamma,gamma> > 0
// (avoiding the display's singular value 1/2), <beta,beta> < 0.
std::pair<QVec, QVec> isotropic_split(const Tower& tw, const IVec& alpha);

// Heisenberg creation monomials over e^0 of weight <= maxw, graded-lex order.
std::vector<Monomial> heisenberg_basis(const ModuleCtx& vctx, int maxw);

// One-sided O(V)-span membership over the Heisenberg monomial basis of M(1).
struct MembershipCertificate {
    bool found = false;
    int cutoff = 0;
    std::vector<std::tuple<Monomial, Monomial, Scalar>> combo;
};
MembershipCertificate o_span_membership(const ModuleCtx& vctx, const Element& x, int cutoff_weight);
// Same solve factored once across many targets.
std::vector<MembershipCertificate> o_span_membership_batch(const ModuleCtx& vctx,
                                                           const std::vector<Element>& targets,
                                                           int cutoff_weight);
// Exact re-evaluation of a certificate against its target.
bool certificate_replays(const ModuleCtx& vctx, const MembershipCertificate& cert, const Element& x);

} // namespace voa
