#include "voa/vertex.hpp"

#include <algorithm>
#include <memory>

namespace voa {

namespace {

using ModeList = std::vector<std::pair<int, int>>;

SVec unit_direction(int d, int a) {
    SVec v(d, Scalar());
    v[a] = Scalar(1);
    return v;
}

int max_mode_dm(const Element& w) {
    int m = 0;
    for (auto& [wm, c] : w.terms())
        if (!wm.modes.empty()) m = std::max(m, wm.modes.front().first);
    return m;
}

// ---- Delta coefficients ----------------------------------------------------

constexpr int kDeltaDegree = 24;

std::vector<Rational> build_delta_table() {
    const int N = kDeltaDegree;
    auto idx = [&](int m, int n) { return m * (N + 1) + n; };
    // u(x,y) = ((1+x)^{1/2} + (1+y)^{1/2})/2 - 1, bivariate to total degree N
    std::vector<Rational> u((N + 1) * (N + 1), Rational(0));
    for (int k = 1; k <= N; ++k) {
        Rational ak = binomial(rat(1, 2), k) / 2;
        u[idx(k, 0)] += ak;
        u[idx(0, k)] += ak;
    }
    auto mul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out((N + 1) * (N + 1), Rational(0));
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j + i <= N; ++j) {
                if (a[idx(i, j)] == 0) continue;
                for (int k = 0; i + k <= N; ++k)
                    for (int l = 0; i + j + k + l <= N; ++l) {
                        if (b[idx(k, l)] == 0) continue;
                        out[idx(i + k, j + l)] += a[idx(i, j)] * b[idx(k, l)];
                    }
            }
        return out;
    };
    // -log(1+u) = sum_{j>=1} (-1)^j u^j / j
    std::vector<Rational> f((N + 1) * (N + 1), Rational(0));
    std::vector<Rational> upow = u;
    for (int j = 1; j <= N; ++j) {
        Rational coef = rat(j % 2 ? -1 : 1, j);
        for (size_t t = 0; t < f.size(); ++t) f[t] += coef * upow[t];
        if (j < N) upow = mul(upow, u);
    }
    return f;
}

const std::vector<Rational>& delta_table() {
    static const std::vector<Rational> tbl = build_delta_table();
    return tbl;
}

// ---- creation-exponential series -------------------------------------------

// Degree-dj part of exp(sum_{p>0} (alpha(-p)/p) z^p) as pure creation mode
// lists; twisted sectors sum over half-odd p.  ca = alpha in orthonormal
// coordinates.
using CrSeries = std::map<ModeList, Scalar>;

void extend_creation_series(const SVec& ca, int max_dj, bool twisted, std::vector<CrSeries>& P) {
    int d = static_cast<int>(ca.size());
    if (P.empty()) P.resize(1), P[0][ModeList{}] = Scalar(1);
    int from = static_cast<int>(P.size());
    if (from > max_dj) return;
    P.resize(max_dj + 1);
    int step = 2, first = twisted ? 1 : 2;
    for (int dj = from; dj <= max_dj; ++dj) {
        CrSeries& out = P[dj];
        // dj P_dj = sum_{p} alpha(-p) P_{dj - 2p}, in dm units
        for (int dp = first; dp <= dj; dp += step) {
            if ((dj - dp) < 0) continue;
            for (auto& [ml, c] : P[dj - dp]) {
                for (int b = 0; b < d; ++b) {
                    if (ca[b].is_zero()) continue;
                    ModeList m2 = ml;
                    auto pos = std::upper_bound(m2.begin(), m2.end(), std::make_pair(dp, b),
                                                std::greater<std::pair<int, int>>());
                    m2.insert(pos, {dp, b});
                    Scalar add = c * ca[b] * Scalar(rat(2, dj));
                    auto it = out.find(m2);
                    if (it == out.end())
                        out[m2] = add;
                    else {
                        it->second += add;
                        if (it->second.is_zero()) out.erase(it);
                    }
                }
            }
        }
    }
}

// The series depends only on the Gram matrix, the lattice vector and the
// sector, so it is memoized across calls.
struct CrKey {
    std::vector<std::vector<long>> gram;
    IVec alpha;
    bool twisted;
    bool operator<(const CrKey& o) const {
        if (gram != o.gram) return gram < o.gram;
        if (alpha != o.alpha) return alpha < o.alpha;
        return twisted < o.twisted;
    }
};

const std::vector<CrSeries>& creation_series_cached(const ModuleCtx& ctx, const IVec& alpha,
                                                    const SVec& ca, int max_dj) {
    static std::map<CrKey, std::vector<CrSeries>> cache;
    CrKey key{ctx.L->gram(), alpha, ctx.twisted};
    auto& P = cache[key];
    extend_creation_series(ca, max_dj, ctx.twisted, P);
    return P;
}

ModeList merge_modes(const ModeList& a, const ModeList& b) {
    ModeList out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end(), std::greater<std::pair<int, int>>());
    return out;
}

// ---- annihilation-exponential branches --------------------------------------

struct AnnBranch {
    int db = 0; // z^{-db/2} accumulated
    ModeList modes;
    Scalar coeff;
};

std::vector<AnnBranch> expand_annihilation(const SVec& ca, const Monomial& wm) {
    std::vector<AnnBranch> out, cur;
    cur.push_back({0, wm.modes, Scalar(1)});
    out = cur;
    long k = 1;
    while (!cur.empty()) {
        std::vector<AnnBranch> next;
        for (auto& br : cur) {
            for (size_t i = 0; i < br.modes.size(); ++i) {
                if (i > 0 && br.modes[i] == br.modes[i - 1]) continue;
                auto [dme, b] = br.modes[i];
                if (ca[b].is_zero()) continue;
                int mult = 0;
                for (auto& e : br.modes) mult += (e == br.modes[i]);
                AnnBranch nb;
                nb.db = br.db + dme;
                nb.modes = br.modes;
                nb.modes.erase(nb.modes.begin() + static_cast<long>(i));
                nb.coeff = br.coeff * (Scalar(rat(-mult, k)) * ca[b]);
                next.push_back(std::move(nb));
            }
        }
        cur = std::move(next);
        out.insert(out.end(), cur.begin(), cur.end());
        ++k;
    }
    return out;
}

// ---- structural truncation ---------------------------------------------------

long floor_rational(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) fail(ErrorCode::BadInput, "truncation bound overflow");
    return q.get_si();
}

int trunc_bound_monomials(const ModuleCtx& ctx, const Monomial& vm, const Monomial& wm) {
    long Wv = vm.heis_weight_dm();
    long r = static_cast<long>(vm.modes.size());
    long Ww = wm.heis_weight_dm();
    Rational e0; // z-exponent floor from the lattice operator, in dm units
    if (ctx.twisted) {
        QVec al = vm.g.mu;
        e0 = -ctx.L->pairing(al, al);
    } else {
        e0 = 2 * ctx.L->pairing(vm.g.mu, wm.g.mu);
    }
    return static_cast<int>(Wv + (r + 1) * Ww - floor_rational(e0));
}

// ---- the W-mode recursion -----------------------------------------------------

Element ground_mode(const ModuleCtx& ctx, const Monomial& vm, int dm_n, const Element& w);

// Evaluates naive normal-ordered modes against one fixed target, memoizing
// (acting monomial, mode) results and sharing annihilated targets.
class WEvaluator {
public:
    WEvaluator(const ModuleCtx& ctx, Element w) : ctx_(ctx), w_(std::move(w)) {}

    const Element& target() const { return w_; }

    Element mode(const Element& v, int dm_n) {
        Element out;
        for (auto& [vm, vc] : v.terms()) out += vc * mode_mono(vm, dm_n);
        return out;
    }

    Element mode_mono(const Monomial& vm, int dm_n) {
        auto key = std::make_pair(vm, dm_n);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        Element out = compute(vm, dm_n);
        memo_.emplace(std::move(key), out);
        return out;
    }

private:
    Element compute(const Monomial& vm, int dm_n) {
        if (vm.modes.empty()) return ground_mode(ctx_, vm, dm_n, w_);
        if (w_.is_zero()) return Element();

        auto [dmm, a] = vm.modes.front();
        if (dmm % 2 != 0) fail(ErrorCode::ParityMismatch, "acting vector must have integer modes");
        long nfield = dmm / 2;
        Monomial rest = vm;
        rest.modes.erase(rest.modes.begin());

        Element out;
        // annihilation side: h_a(p), p >= 0 untwisted / p > 0 twisted
        int dp0 = ctx_.twisted ? 1 : 0;
        int dp_end = max_mode_dm(w_);
        for (int dp = dp0; dp <= dp_end; dp += 2) {
            Rational coeff = binomial(rat(-dp - 2, 2), nfield - 1);
            if (coeff == 0) continue;
            WEvaluator* child = annihilated(a, dp);
            if (!child) continue;
            out += Scalar(coeff) * child->mode_mono(rest, dm_n - dp - dmm);
        }
        // creation side: h_a(p), p < 0; terminates by the structural bound
        Element rest_elem = Element::monomial(rest);
        int bound = trunc_bound_dm(ctx_, rest_elem, w_);
        for (int dp = ctx_.twisted ? -1 : -2;; dp -= 2) {
            int dq = dm_n - dp - dmm;
            if (dq > bound) break;
            Rational coeff = binomial(rat(-dp - 2, 2), nfield - 1);
            if (coeff == 0) continue;
            Element inner = mode_mono(rest, dq);
            if (inner.is_zero()) continue;
            out += Scalar(coeff) * creation(a, -dp, inner);
        }
        return out;
    }

    WEvaluator* annihilated(int dir, int dp) {
        auto key = std::make_pair(dir, dp);
        auto it = children_.find(key);
        if (it != children_.end()) return it->second.get();
        SVec ha(ctx_.rank(), Scalar());
        ha[dir] = Scalar(1);
        Element wp = mode_action_orth(ctx_, ha, dp, w_);
        std::unique_ptr<WEvaluator> child;
        if (!wp.is_zero()) child = std::make_unique<WEvaluator>(ctx_, std::move(wp));
        return children_.emplace(key, std::move(child)).first->second.get();
    }

    const ModuleCtx& ctx_;
    Element w_;
    std::map<std::pair<Monomial, int>, Element> memo_;
    std::map<std::pair<int, int>, std::unique_ptr<WEvaluator>> children_;
};

Element wmode(const ModuleCtx& ctx, const Element& v, int dm_n, const Element& w) {
    WEvaluator eval(ctx, w);
    return eval.mode(v, dm_n);
}

} // namespace

struct ModeEvaluator::Impl {
    ModuleCtx ctx;
    WEvaluator eval;
    Impl(const ModuleCtx& c, Element w) : ctx(c), eval(ctx, std::move(w)) {}
};

ModeEvaluator::ModeEvaluator(const ModuleCtx& ctx, Element target)
    : impl_(std::make_unique<Impl>(ctx, std::move(target))) {}
ModeEvaluator::~ModeEvaluator() = default;
ModeEvaluator::ModeEvaluator(ModeEvaluator&&) noexcept = default;

Element ModeEvaluator::mode(const Element& v, int dm) {
    if (!impl_->ctx.twisted) return impl_->eval.mode(v, dm);
    ModuleCtx vctx = algebra_ctx(impl_->ctx);
    Element out;
    for (auto& [s, part] : delta_correction(vctx, v)) out += impl_->eval.mode(part, dm - 2 * s);
    return out;
}

Element ModeEvaluator::mode_raw(const Element& v, int dm) { return impl_->eval.mode(v, dm); }

namespace {

Element ground_mode(const ModuleCtx& ctx, const Monomial& vm, int dm_n, const Element& w) {
    const int d = ctx.rank();
    // e^0 acts as the identity field
    bool zero = true;
    for (auto& q : vm.g.mu) zero = zero && q == 0;
    if (zero) return dm_n == -2 ? w : Element();

    QVec alpha = vm.g.mu;
    IVec ialpha(d);
    for (int i = 0; i < d; ++i) {
        if (!is_integer(alpha[i])) fail(ErrorCode::BadInput, "acting vector has non-integral lattice label");
        ialpha[i] = to_long(alpha[i]);
    }
    SVec ca = ctx.basis->to_orth(alpha);
    Rational norm = ctx.L->pairing(alpha, alpha);

    Element out;
    for (auto& [wm, wc] : w.terms()) {
        auto branches = expand_annihilation(ca, wm);

        Rational de0;     // base z-exponent in dm units
        Scalar prefactor; // cocycle sign or rep entry, times normalization
        std::vector<std::pair<Ground, Scalar>> grounds;
        if (ctx.twisted) {
            if (!ctx.rep || !ctx.G)
                fail(ErrorCode::SectorMismatch, "lattice operators need an Lhat/K-module");
            de0 = -norm;
            Scalar twonorm(pow2(-to_long(norm)));
            const auto& M = ctx.rep->matrix_of(*ctx.G, ialpha);
            for (int i = 0; i < ctx.rep->dim; ++i) {
                if (M[i][wm.g.t].is_zero()) continue;
                grounds.push_back({Ground::twisted_index(i), twonorm * M[i][wm.g.t]});
            }
        } else {
            de0 = 2 * ctx.L->pairing(alpha, wm.g.mu);
            QVec shift(d);
            IVec ishift(d);
            for (int i = 0; i < d; ++i) {
                shift[i] = wm.g.mu[i] - ctx.base[i];
                if (!is_integer(shift[i]))
                    fail(ErrorCode::BadInput, "module ground is not in the coset of its base point");
                ishift[i] = to_long(shift[i]);
            }
            QVec newmu(d);
            for (int i = 0; i < d; ++i) newmu[i] = wm.g.mu[i] + alpha[i];
            grounds.push_back({Ground::untwisted(newmu), Scalar(rat(ctx.eps->eps(ialpha, ishift)))});
        }
        if (grounds.empty()) continue;

        // max creation degree over branches
        int max_dj = 0;
        bool any = false;
        for (auto& br : branches) {
            Rational dj = Rational(-dm_n - 2 + br.db) - de0;
            if (!is_integer(dj)) continue;
            long v = to_long(dj);
            if (v < 0) continue;
            any = true;
            max_dj = std::max(max_dj, static_cast<int>(v));
        }
        if (!any) continue;
        const auto& P = creation_series_cached(ctx, ialpha, ca, max_dj);

        for (auto& br : branches) {
            Rational djq = Rational(-dm_n - 2 + br.db) - de0;
            if (!is_integer(djq)) continue;
            long dj = to_long(djq);
            if (dj < 0) continue;
            for (auto& [pml, pc] : P[static_cast<size_t>(dj)]) {
                ModeList full = merge_modes(pml, br.modes);
                Scalar base_coeff = wc * br.coeff * pc;
                for (auto& [gnd, gc] : grounds) {
                    Monomial m;
                    m.modes = full;
                    m.g = gnd;
                    out.add(m, base_coeff * gc);
                }
            }
        }
    }
    return out;
}

} // namespace

Rational delta_coefficient(int m, int n) {
    if (m < 0 || n < 0 || m + n > kDeltaDegree) fail(ErrorCode::BadInput, "delta coefficient out of range");
    return delta_table()[static_cast<size_t>(m) * (kDeltaDegree + 1) + static_cast<size_t>(n)];
}

int trunc_bound_dm(const ModuleCtx& ctx, const Element& v, const Element& w) {
    int bound = -2; // v_n w = 0 for all n when either side is zero
    for (auto& [vm, vc] : v.terms())
        for (auto& [wm, wc] : w.terms()) bound = std::max(bound, trunc_bound_monomials(ctx, vm, wm));
    return bound;
}

ModuleCtx algebra_ctx(const ModuleCtx& ctx) {
    return ModuleCtx::untwisted_vl(*ctx.L, *ctx.basis, *ctx.eps);
}

Element untwisted_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w) {
    if (ctx.twisted) fail(ErrorCode::SectorMismatch, "untwisted_mode on twisted module");
    return wmode(ctx, v, dm, w);
}

std::map<int, Element> delta_correction(const ModuleCtx& vctx, const Element& v) {
    std::map<int, Element> result;
    result[0] = v;
    // Delta removes weight m+n from the Heisenberg part (zero modes hit the
    // lattice label), so pairs with m+n beyond the weight of v cannot act
    int maxw = 0;
    for (auto& [vm, c] : v.terms()) maxw = std::max(maxw, vm.heis_weight_dm() / 2);

    std::map<int, Element> cur = result;
    long k = 1;
    while (true) {
        std::map<int, Element> next;
        bool any = false;
        for (auto& [s, elem] : cur) {
            if (elem.is_zero()) continue;
            for (int m = 0; m <= maxw; ++m) {
                for (int n = 0; m + n <= maxw; ++n) {
                    if (m + n == 0) continue;
                    Rational c = delta_coefficient(m, n);
                    if (c == 0) continue;
                    for (int e = 0; e < vctx.rank(); ++e) {
                        SVec he = unit_direction(vctx.rank(), e);
                        Element y = mode_action_orth(vctx, he, 2 * n, elem);
                        if (y.is_zero()) continue;
                        y = mode_action_orth(vctx, he, 2 * m, y);
                        if (y.is_zero()) continue;
                        next[s + m + n] += Scalar(c / k) * y;
                        any = true;
                    }
                }
            }
        }
        if (!any) break;
        for (auto& [s, elem] : next)
            if (!elem.is_zero()) result[s] += elem;
        cur = std::move(next);
        ++k;
    }
    return result;
}

Element twisted_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w) {
    if (!ctx.twisted) fail(ErrorCode::SectorMismatch, "twisted_mode on untwisted module");
    ModuleCtx vctx = algebra_ctx(ctx);
    Element out;
    for (auto& [s, part] : delta_correction(vctx, v)) out += wmode(ctx, part, dm - 2 * s, w);
    return out;
}

Element vertex_mode(const ModuleCtx& ctx, const Element& v, int dm, const Element& w) {
    return ctx.twisted ? twisted_mode(ctx, v, dm, w) : untwisted_mode(ctx, v, dm, w);
}

Element zero_mode(const ModuleCtx& ctx, const Element& v, const Element& w) {
    if (v.is_zero()) return Element();
    ModuleCtx vctx = algebra_ctx(ctx);
    Element out;
    ModeEvaluator eval(ctx, w);
    // extended linearly over homogeneous components
    std::map<Rational, Element> by_weight;
    for (auto& [vm, vc] : v.terms()) by_weight[grade_monomial(vctx, vm)].add(vm, vc);
    for (auto& [wt, part] : by_weight) {
        Rational dm = 2 * wt - 2;
        if (!is_integer(dm)) fail(ErrorCode::BadInput, "zero mode of non-half-integral weight");
        out += eval.mode(part, static_cast<int>(to_long(dm)));
    }
    return out;
}

CommutatorReport commutator_check(const ModuleCtx& ctx, const Element& u, const Element& v,
                                  int dm_m, int dm_n, const Element& w) {
    CommutatorReport rep;
    Element um_vn = vertex_mode(ctx, u, dm_m, vertex_mode(ctx, v, dm_n, w));
    Element vn_um = vertex_mode(ctx, v, dm_n, vertex_mode(ctx, u, dm_m, w));
    rep.lhs = um_vn - vn_um;

    ModuleCtx vctx = algebra_ctx(ctx);
    int bound = trunc_bound_dm(vctx, u, v);
    Element rhs;
    ModeEvaluator prod(vctx, v);
    ModeEvaluator onto_w(ctx, w);
    for (int i = 0; 2 * i <= bound; ++i) {
        Element uiv = prod.mode(u, 2 * i);
        if (uiv.is_zero()) continue;
        Rational c = binomial(rat(dm_m, 2), i);
        if (c == 0) continue;
        rhs += Scalar(c) * onto_w.mode(uiv, dm_m + dm_n - 2 * i);
    }
    rep.rhs = rhs;
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

Element omega_element(const ModuleCtx& vctx) {
    Element out;
    for (int a = 0; a < vctx.rank(); ++a) out += omega_a(vctx, a);
    return out;
}

Element omega_a(const ModuleCtx& vctx, int a) {
    Element v = vacuum(vctx);
    v = creation(a, 2, creation(a, 2, v));
    return Scalar(rat(1, 2)) * v;
}

Element virasoro(const ModuleCtx& ctx, int n, const Element& x) {
    ModuleCtx vctx = algebra_ctx(ctx);
    return vertex_mode(ctx, omega_element(vctx), 2 * (n + 1), x);
}

} // namespace voa
