#pragma once

#include <memory>

#include "voa/fock.hpp"

namespace voa {

// All mode indices are passed in dm units (dm = 2n): even dm for untwisted
// modes, odd dm for the twisted sector's half-odd modes.

// Coefficient of z^{-n-1} in Y(v,z)w on an untwisted module.
Element untwisted_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w);

// Coefficient of z^{-n-1} in Y_M(v,z)w on a theta-twisted module, computed as
// W(e^{Delta_z} v, z); e^alpha carries the 2^{-<a,a>} normalization, half-odd
// exponential modes, the T_chi matrices and the central monomial z^{-<a,a>/2}.
Element twisted_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w);

// Dispatch on the target sector.
Element vertex_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w);

// Evaluates many modes of many acting vectors against one fixed target,
// sharing the recursion across calls.  Y_M semantics per the target sector
// (the Delta correction is applied to each acting vector on twisted targets).
class ModeEvaluator {
public:
    ModeEvaluator(const ModuleCtx& ctx, Element target);
    ~ModeEvaluator();
    ModeEvaluator(ModeEvaluator&&) noexcept;
    Element mode(const Element& v, int dm);
    // W-operator mode without the Delta correction (callers that have already
    // expanded e^{Delta_z} v use this with the shifted mode indices).
    Element mode_raw(const Element& v, int dm);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// e^{Delta_z} v as Laurent coefficients, shift s meaning z^{-s}.  v lives in
// the untwisted algebra; Delta pairs annihilation modes (zero modes act on
// the lattice label), so the sum terminates at the weight of v.
std::map<int, Element> delta_correction(const ModuleCtx& vctx, const Element& v);

// c_{mn} from -log(((1+x)^{1/2}+(1+y)^{1/2})/2); table cached internally.
Rational delta_coefficient(int m, int n);

// Structural upper bound on dm with v_{dm/2} w != 0 (sound, not tight).
int trunc_bound_dm(const ModuleCtx& ctx, const Element& v, const Element& w);

// o(v) = v_{wt v - 1}; v homogeneous of integer weight.
Element zero_mode(const ModuleCtx& ctx, const Element& v, const Element& w);

// [u_m, v_n] w  vs  sum_i C(m,i) (u_i v)_{m+n-i} w, exact.
struct CommutatorReport {
    bool ok = false;
    Element lhs, rhs;
};
CommutatorReport commutator_check(const ModuleCtx& ctx, const Element& u, const Element& v,
                                  int dm_m, int dm_n, const Element& w);

// The untwisted algebra context sitting over the same lattice data.
ModuleCtx algebra_ctx(const ModuleCtx& ctx);

// Conformal vector (1/2) sum_a h_a(-1)^2 1 and rank-one omega_a.
Element omega_element(const ModuleCtx& vctx);
Element omega_a(const ModuleCtx& vctx, int a);

// L(n) x = omega_{n+1} x on any module.
Element virasoro(const ModuleCtx& ctx, int n, const Element& x);

} // namespace voa
