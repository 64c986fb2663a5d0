#include "voa/zhu.hpp"

#include <algorithm>

namespace voa {

Tower::Tower(const std::vector<std::vector<long>>& gram)
    : L(Lattice::load(gram)), eps(&L), G(QuotientGroup::build(L, eps)) {
    chars = central_characters(G);
    for (auto& chi : chars) reps.push_back(irreducible_module(G, chi));
}

namespace {

Element modes_by_weight_product(const ModuleCtx& vctx, const Element& u, const Element& v, int shift_dm) {
    // sum_{k>=0} C(wt u, k) u_{k-1-shift} v, grouped over homogeneous parts of u
    std::map<Rational, Element> parts;
    for (auto& [um, uc] : u.terms()) parts[grade_monomial(vctx, um)].add(um, uc);
    Element out;
    ModeEvaluator eval(vctx, v);
    for (auto& [wt, part] : parts) {
        if (!is_integer(wt)) fail(ErrorCode::BadInput, "Zhu product needs integer weights");
        int bound = trunc_bound_dm(vctx, part, v);
        for (int k = 0;; ++k) {
            int dm = 2 * (k - 1) - shift_dm;
            if (dm > bound) break;
            Rational c = binomial(wt, k);
            if (c == 0) continue;
            Element term = eval.mode(part, dm);
            if (!term.is_zero()) out += Scalar(c) * term;
        }
    }
    return out;
}

} // namespace

Element star(const ModuleCtx& vctx, const Element& u, const Element& v) {
    return modes_by_weight_product(vctx, u, v, 0);
}

Element circ(const ModuleCtx& vctx, const Element& u, const Element& v) {
    return modes_by_weight_product(vctx, u, v, 2);
}

ZhuOp ZhuOp::of(Element v) {
    ZhuOp op;
    op.kind = Kind::Vec;
    op.vec = std::move(v);
    return op;
}

ZhuOp ZhuOp::star_of(ZhuOp a, ZhuOp b) {
    ZhuOp op;
    op.kind = Kind::Star;
    op.factors.push_back(std::move(a));
    op.factors.push_back(std::move(b));
    return op;
}

ZhuOp ZhuOp::sum_of(std::vector<std::pair<Scalar, ZhuOp>> s) {
    ZhuOp op;
    op.kind = Kind::Sum;
    op.summands = std::move(s);
    return op;
}

ZhuOp ZhuOp::btilde_iso(IVec alpha) {
    ZhuOp op;
    op.kind = Kind::BtildeIso;
    op.alpha = std::move(alpha);
    return op;
}

// ---- top levels -------------------------------------------------------------

TopLevel top_m1_plus(const Tower& tw) { return {"M(1)+(0)", {vacuum(tw.vl())}, tw.vl(), &tw}; }

TopLevel top_m1_minus(const Tower& tw) {
    TopLevel t{"M(1)-(0)", {}, tw.vl(), &tw};
    for (int a = 0; a < tw.rank(); ++a) t.basis.push_back(creation(a, 2, vacuum(tw.vl())));
    return t;
}

TopLevel top_m1_lambda(const Tower& tw, const QVec& lambda) {
    ModuleCtx ctx = tw.coset(lambda);
    return {"M(1,lambda)(0)", {vacuum(ctx)}, ctx, &tw};
}

TopLevel top_mtheta_plus(const Tower& tw) {
    return {"M(1)(theta)+(0)", {vacuum(tw.mtheta())}, tw.mtheta(), &tw};
}

TopLevel top_mtheta_minus(const Tower& tw) {
    TopLevel t{"M(1)(theta)-(0)", {}, tw.mtheta(), &tw};
    for (int a = 0; a < tw.rank(); ++a) t.basis.push_back(creation(a, 1, vacuum(tw.mtheta())));
    return t;
}

TopLevel top_vt(const Tower& tw, int chi, int sign) {
    ModuleCtx ctx = tw.vt(chi);
    int dimT = tw.reps[chi].dim;
    TopLevel t{"V^{T" + std::to_string(chi + 1) + "," + (sign >= 0 ? "+" : "-") + "}(0)", {}, ctx, &tw};
    if (sign >= 0) {
        for (int j = 0; j < dimT; ++j) t.basis.push_back(twisted_ground(j));
    } else {
        for (int a = 0; a < tw.rank(); ++a)
            for (int j = 0; j < dimT; ++j) t.basis.push_back(creation(a, 1, twisted_ground(j)));
    }
    return t;
}

namespace {

long rank1_norm(const Tower& tw) {
    if (tw.rank() != 1) fail(ErrorCode::BadInput, "rank-one family requested on higher rank");
    return tw.L.gram()[0][0];
}

Scalar c_alpha(const Tower& tw) {
    // square root of eps(alpha, alpha)
    IVec a{1};
    int e = tw.eps.eps(a, a);
    return e > 0 ? Scalar(1) : Scalar::imag_unit();
}

} // namespace

TopLevel top_v_plus(const Tower& tw) {
    rank1_norm(tw);
    return {"V+(0)", {vacuum(tw.vl())}, tw.vl(), &tw};
}

TopLevel top_v_minus(const Tower& tw) {
    long n = rank1_norm(tw);
    if (n <= 0) fail(ErrorCode::BadInput, "V- top level is for positive definite rank one");
    TopLevel t{"V-(0)", {}, tw.vl(), &tw};
    Element alpha1 = mode_action(tw.vl(), QVec{rat(1)}, -2, vacuum(tw.vl()));
    t.basis.push_back(alpha1);
    if (n == 2) t.basis.push_back(F_alpha(tw, IVec{1}));
    return t;
}

TopLevel top_v_coset(const Tower& tw, long r) {
    long n = rank1_norm(tw);
    long k = n / 2;
    if (n <= 0 || r < 1 || r > k - 1) fail(ErrorCode::BadInput, "coset parameter out of range");
    QVec base{rat(r, 2 * k)};
    ModuleCtx ctx = tw.coset(base);
    return {"V_{L+" + std::to_string(r) + "a/" + std::to_string(2 * k) + "}(0)", {vacuum(ctx)}, ctx, &tw};
}

TopLevel top_v_half(const Tower& tw, int sign) {
    long n = rank1_norm(tw);
    if (n <= 0) fail(ErrorCode::BadInput, "half-coset top level is for positive definite rank one");
    QVec base{rat(1, 2)};
    ModuleCtx ctx = tw.coset(base);
    Element plus = ground_state(ctx, QVec{rat(1, 2)});
    Element minus = ground_state(ctx, QVec{rat(-1, 2)});
    Scalar ca = c_alpha(tw);
    Element vec = sign >= 0 ? plus + ca * minus : plus - ca * minus;
    return {std::string("V_{L+a/2}") + (sign >= 0 ? "+" : "-") + "(0)", {vec}, ctx, &tw};
}

// ---- o-action matrices --------------------------------------------------------

SVec expand_in_basis(const Element& x, const TopLevel& top) {
    // collect monomial coordinates
    std::map<Monomial, int> row;
    auto index = [&](const Element& e) {
        for (auto& [m, c] : e.terms())
            if (!row.count(m)) {
                int id = static_cast<int>(row.size());
                row[m] = id;
            }
    };
    for (auto& b : top.basis) index(b);
    index(x);
    int R = static_cast<int>(row.size());
    int C = static_cast<int>(top.basis.size());
    Mat A(R, C + 1);
    for (int j = 0; j < C; ++j)
        for (auto& [m, c] : top.basis[j].terms()) A.at(row[m], j) = c;
    for (auto& [m, c] : x.terms()) A.at(row[m], C) = c;

    // exact Gaussian elimination
    std::vector<int> pivot_col_of_row(R, -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int pr = -1;
        for (int r = prow; r < R; ++r)
            if (!A.at(r, c).is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        for (int j = 0; j <= C; ++j) std::swap(A.at(pr, j), A.at(prow, j));
        Scalar inv = A.at(prow, c).inverse();
        for (int j = 0; j <= C; ++j) A.at(prow, j) = inv * A.at(prow, j);
        for (int r = 0; r < R; ++r) {
            if (r == prow || A.at(r, c).is_zero()) continue;
            Scalar f = A.at(r, c);
            for (int j = 0; j <= C; ++j) A.at(r, j) -= f * A.at(prow, j);
        }
        pivot_col_of_row[prow] = c;
        ++prow;
    }
    SVec out(C, Scalar());
    for (int r = 0; r < R; ++r) {
        if (pivot_col_of_row[r] >= 0) {
            out[pivot_col_of_row[r]] = A.at(r, C);
        } else if (!A.at(r, C).is_zero()) {
            fail(ErrorCode::BadInput, "element does not lie in the top level: " + x.str());
        }
    }
    return out;
}

Mat zero_mode_matrix(const Element& v, const TopLevel& top) {
    int n = static_cast<int>(top.basis.size());
    Mat M(n, n);
    // mode indices and (for twisted targets) Delta corrections prepared once
    ModuleCtx vctx = algebra_ctx(top.ctx);
    std::map<Rational, Element> by_weight;
    for (auto& [vm, vc] : v.terms()) by_weight[grade_monomial(vctx, vm)].add(vm, vc);
    std::vector<std::pair<int, Element>> prepared;
    for (auto& [wt, part] : by_weight) {
        Rational dm = 2 * wt - 2;
        if (!is_integer(dm)) fail(ErrorCode::BadInput, "zero mode of non-half-integral weight");
        int base = static_cast<int>(to_long(dm));
        if (top.ctx.twisted) {
            for (auto& [s, corr] : delta_correction(vctx, part))
                prepared.push_back({base - 2 * s, corr});
        } else {
            prepared.push_back({base, part});
        }
    }
    for (int j = 0; j < n; ++j) {
        ModeEvaluator eval(top.ctx, top.basis[j]);
        Element w;
        for (auto& [dm, part] : prepared) w += eval.mode_raw(part, dm);
        SVec col = expand_in_basis(w, top);
        for (int i = 0; i < n; ++i) M.at(i, j) = col[i];
    }
    return M;
}

namespace {

Mat btilde_iso_matrix(const IVec& alpha, const TopLevel& top);

} // namespace

Mat o_action_matrix(const ZhuOp& op, const TopLevel& top) {
    switch (op.kind) {
        case ZhuOp::Kind::Vec:
            return zero_mode_matrix(op.vec, top);
        case ZhuOp::Kind::Star: {
            Mat M = o_action_matrix(op.factors.front(), top);
            for (size_t i = 1; i < op.factors.size(); ++i) M = M * o_action_matrix(op.factors[i], top);
            return M;
        }
        case ZhuOp::Kind::Sum: {
            int n = static_cast<int>(top.basis.size());
            Mat M(n, n);
            for (auto& [c, sub] : op.summands) M = M + c * o_action_matrix(sub, top);
            return M;
        }
        case ZhuOp::Kind::BtildeIso:
            return btilde_iso_matrix(op.alpha, top);
    }
    fail(ErrorCode::BadInput, "unreachable");
}

// ---- named generators ----------------------------------------------------------

Element GenSet::vac() const { return vacuum(tw->vl()); }

Element GenSet::creation_h(int a, int dm, const Element& x) const {
    ModuleCtx vctx = tw->vl();
    SVec coords = tw->L.default_basis().to_orth_s(ob->h[a]);
    return mode_action_orth(vctx, coords, -dm, x);
}

Element GenSet::omega_a(int a) const {
    return Scalar(rat(1, 2)) * creation_h(a, 2, creation_h(a, 2, vac()));
}

Element GenSet::J_a(int a) const {
    Element quart = creation_h(a, 2, creation_h(a, 2, creation_h(a, 2, creation_h(a, 2, vac()))));
    Element h31 = creation_h(a, 6, creation_h(a, 2, vac()));
    Element h22 = creation_h(a, 4, creation_h(a, 4, vac()));
    return quart - Scalar(2) * h31 + Scalar(rat(3, 2)) * h22;
}

ZhuOp GenSet::H_a(int a) const {
    ZhuOp w = ZhuOp::of(omega_a(a));
    return ZhuOp::sum_of({{Scalar(1), ZhuOp::of(J_a(a))},
                          {Scalar(1), w},
                          {Scalar(-4), ZhuOp::star_of(w, w)}});
}

Element GenSet::S_ab(int a, int b, int m, int n) const {
    return creation_h(a, 2 * m, creation_h(b, 2 * n, vac()));
}

Element GenSet::Eu_offdiag(int a, int b) const {
    return Scalar(5) * S_ab(a, b, 1, 2) + Scalar(25) * S_ab(a, b, 1, 3) + Scalar(36) * S_ab(a, b, 1, 4) +
           Scalar(16) * S_ab(a, b, 1, 5);
}

Element GenSet::Et_offdiag(int a, int b) const {
    Element s = Scalar(3) * S_ab(a, b, 1, 2) + Scalar(14) * S_ab(a, b, 1, 3) + Scalar(19) * S_ab(a, b, 1, 4) +
                Scalar(8) * S_ab(a, b, 1, 5);
    return Scalar(-16) * s;
}

namespace {

// Rank-one stand-ins: *-polynomials in H acting as the matrix units E^u_11,
// E^t_11 on every classified top level (H takes the values 0 on M(1)+(0) and
// the whole M(1,lambda) family, -9 on M(1)-(0), 9/128 on M(1)(theta)+(0) and
// -135/128 on M(1)(theta)-(0)).
ZhuOp shifted(const ZhuOp& x, const Rational& c, const Element& one) {
    return ZhuOp::sum_of({{Scalar(1), x}, {Scalar(c), ZhuOp::of(one)}});
}

ZhuOp rank1_unit_from_H(const GenSet& g, const Rational& here, const std::vector<Rational>& zeros) {
    ZhuOp H = g.H_a(0);
    Element one = g.vac();
    Rational norm = 1;
    ZhuOp prod = shifted(H, -zeros[0], one);
    norm *= here - zeros[0];
    for (size_t i = 1; i < zeros.size(); ++i) {
        prod = ZhuOp::star_of(prod, shifted(H, -zeros[i], one));
        norm *= here - zeros[i];
    }
    return ZhuOp::sum_of({{Scalar(1 / norm), prod}});
}

} // namespace

ZhuOp GenSet::Eu_ab(int a, int b) const {
    if (a != b) return ZhuOp::of(Eu_offdiag(a, b));
    if (tw->rank() == 1) return rank1_unit_from_H(*this, rat(-9), {rat(0), rat(9, 128), rat(-135, 128)});
    int c = a == 0 ? 1 : 0;
    return ZhuOp::star_of(ZhuOp::of(Eu_offdiag(a, c)), ZhuOp::of(Eu_offdiag(c, a)));
}

ZhuOp GenSet::Et_ab(int a, int b) const {
    if (a != b) return ZhuOp::of(Et_offdiag(a, b));
    if (tw->rank() == 1) return rank1_unit_from_H(*this, rat(-135, 128), {rat(0), rat(-9), rat(9, 128)});
    int c = a == 0 ? 1 : 0;
    return ZhuOp::star_of(ZhuOp::of(Et_offdiag(a, c)), ZhuOp::of(Et_offdiag(c, a)));
}

Element GenSet::Lambda_ab(int a, int b) const {
    return Scalar(45) * S_ab(a, b, 1, 2) + Scalar(190) * S_ab(a, b, 1, 3) + Scalar(240) * S_ab(a, b, 1, 4) +
           Scalar(96) * S_ab(a, b, 1, 5);
}

// ---- lattice-vector families -----------------------------------------------------

Element e_alpha(const Tower& tw, const IVec& alpha) {
    QVec mu(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) mu[i] = rat(alpha[i]);
    return ground_state(tw.vl(), mu);
}

Element E_alpha(const Tower& tw, const IVec& alpha) {
    IVec neg = alpha;
    for (auto& x : neg) x = -x;
    return e_alpha(tw, alpha) + e_alpha(tw, neg);
}

Element F_alpha(const Tower& tw, const IVec& alpha) {
    IVec neg = alpha;
    for (auto& x : neg) x = -x;
    return e_alpha(tw, alpha) - e_alpha(tw, neg);
}

namespace {

bool is_zero_vec(const IVec& v) {
    for (long x : v)
        if (x) return false;
    return true;
}

long norm_of(const Tower& tw, const IVec& alpha) { return tw.L.pairing_int(alpha, alpha); }

QVec to_q(const IVec& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = rat(v[i]);
    return q;
}

} // namespace

ZhuOp B_alpha(const Tower& tw, const IVec& alpha) {
    if (is_zero_vec(alpha)) return ZhuOp::of(vacuum(tw.vl()));
    long nn = norm_of(tw, alpha);
    return ZhuOp::sum_of({{Scalar(pow2(nn - 1)), ZhuOp::of(E_alpha(tw, alpha))}});
}

std::pair<QVec, QVec> isotropic_split(const Tower& tw, const IVec& alpha) {
    // first u in growing balls with <u,u> > 0, <u,alpha> != 0 and
    // <u,alpha>^2/<u,u> not in {0, 1/2}; gamma = (<u,alpha>/<u,u>) u
    QVec qa = to_q(alpha);
    for (long R = 1; R <= 10; ++R) {
        IVec u(tw.rank(), -R);
        while (true) {
            long uu = tw.L.pairing_int(u, u);
            if (uu > 0) {
                QVec qu = to_q(u);
                Rational ua = tw.L.pairing(qu, qa);
                if (ua != 0) {
                    Rational g = ua * ua / uu;
                    if (g != rat(1, 2)) {
                        Rational c = ua / uu;
                        QVec gamma(tw.rank()), beta(tw.rank());
                        for (int i = 0; i < tw.rank(); ++i) {
                            gamma[i] = c * qu[i];
                            beta[i] = qa[i] - gamma[i];
                        }
                        return {gamma, beta};
                    }
                }
            }
            int k = tw.rank() - 1;
            while (k >= 0 && u[k] == R) { u[k] = -R; --k; }
            if (k < 0) break;
            ++u[k];
        }
    }
    fail(ErrorCode::NoPartner, "no positive-norm companion for isotropic vector");
}

ZhuOp Btilde_alpha(const Tower& tw, const IVec& alpha) {
    if (is_zero_vec(alpha)) return ZhuOp::of(vacuum(tw.vl()));
    long nn = norm_of(tw, alpha);
    if (nn == 0) return ZhuOp::btilde_iso(alpha);
    OrthoBasis adapted = tw.L.orthonormal_basis({to_q(alpha)});
    GenSet g(tw, adapted);
    ZhuOp E = ZhuOp::of(E_alpha(tw, alpha));
    ZhuOp EtE = ZhuOp::star_of(g.Et_ab(0, 0), E);
    Rational c = Rational(-2 * nn) / Rational(2 * nn - 1);
    Scalar lead(pow2(nn - 1));
    return ZhuOp::sum_of({{lead, E}, {lead * Scalar(c), EtE}});
}

namespace {

Mat btilde_iso_matrix(const IVec& alpha, const TopLevel& top) {
    if (!top.ctx.twisted || !top.ctx.rep || !top.tower)
        fail(ErrorCode::SectorMismatch, "isotropic Btilde acts on twisted module top levels");
    const Tower& tw = *top.tower;
    auto [gamma, beta] = isotropic_split(tw, alpha);
    OrthoBasis adapted = tw.L.orthonormal_basis({gamma, beta});
    GenSet g(tw, adapted);
    Mat ME = zero_mode_matrix(E_alpha(tw, alpha), top);
    Mat M11 = o_action_matrix(g.Et_ab(0, 0), top);
    Mat M22 = o_action_matrix(g.Et_ab(1, 1), top);
    Rational gg = tw.L.pairing(gamma, gamma);
    Rational bb = tw.L.pairing(beta, beta);
    Scalar x(gg / (1 - 2 * gg)), y(bb / (1 - 2 * bb));
    Scalar half(rat(1, 2));
    return half * ME + M11 * ME * (x * M11 - half * M22) + M22 * ME * (y * M22 - half * M11);
}

} // namespace

// ---- membership -------------------------------------------------------------------

namespace {

// All creation monomials over e^0 of weight <= wleft_dm/2, extending a
// descending (dm, dir) prefix.
void heis_rec(int d, Monomial& m, int wleft_dm, std::vector<Monomial>& out) {
    std::pair<int, int> last = m.modes.empty() ? std::make_pair(wleft_dm, d - 1) : m.modes.back();
    for (int dm = std::min(wleft_dm, last.first); dm >= 2; dm -= 2) {
        for (int a = d - 1; a >= 0; --a) {
            if (std::make_pair(dm, a) > last) continue;
            m.modes.push_back({dm, a});
            out.push_back(m);
            heis_rec(d, m, wleft_dm - dm, out);
            m.modes.pop_back();
        }
    }
}

void enumerate_heisenberg(const ModuleCtx& vctx, int maxw, std::vector<Monomial>& out) {
    Monomial ground;
    ground.g = Ground::untwisted(QVec(vctx.rank(), Rational(0)));
    out.push_back(ground);
    heis_rec(vctx.rank(), ground, 2 * maxw, out);
}

} // namespace

std::vector<Monomial> heisenberg_basis(const ModuleCtx& vctx, int maxw) {
    std::vector<Monomial> monos;
    enumerate_heisenberg(vctx, maxw, monos);
    std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
        Rational wa = grade_monomial(vctx, a), wb = grade_monomial(vctx, b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return monos;
}

std::vector<MembershipCertificate> o_span_membership_batch(const ModuleCtx& vctx,
                                                           const std::vector<Element>& targets,
                                                           int cutoff_weight) {
    for (auto& x : targets)
        for (auto& [m, c] : x.terms())
            if (grade_monomial(vctx, m) > cutoff_weight)
                fail(ErrorCode::BadInput, "membership cutoff below the weight of the target");

    std::vector<Monomial> monos;
    enumerate_heisenberg(vctx, cutoff_weight, monos);
    std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
        Rational wa = grade_monomial(vctx, a), wb = grade_monomial(vctx, b);
        if (wa != wb) return wa < wb;
        return a < b;
    });

    // generators u o v with wt u + wt v + 1 <= cutoff, one evaluator per v
    std::vector<std::pair<Monomial, Monomial>> gens;
    std::vector<Element> gen_elems;
    for (auto& v : monos) {
        Element ve = Element::monomial(v);
        ModeEvaluator eval(vctx, ve);
        for (auto& u : monos) {
            Rational wsum = grade_monomial(vctx, u) + grade_monomial(vctx, v) + 1;
            if (wsum > cutoff_weight) continue;
            Element ue = Element::monomial(u);
            Rational wtu = grade_monomial(vctx, u);
            int bound = trunc_bound_dm(vctx, ue, ve);
            Element g;
            for (int k = 0;; ++k) {
                int dm = 2 * (k - 2);
                if (dm > bound) break;
                Rational c = binomial(wtu, k);
                if (c == 0) continue;
                Element t = eval.mode(ue, dm);
                if (!t.is_zero()) g += Scalar(c) * t;
            }
            if (g.is_zero()) continue;
            gens.push_back({u, v});
            gen_elems.push_back(g);
        }
    }

    std::map<Monomial, int> row;
    for (auto& m : monos) row[m] = static_cast<int>(row.size());
    int R = static_cast<int>(row.size());
    int C = static_cast<int>(gen_elems.size());
    int T = static_cast<int>(targets.size());
    Mat A(R, C + T);
    for (int j = 0; j < C; ++j)
        for (auto& [m, c] : gen_elems[j].terms()) A.at(row.at(m), j) = c;
    for (int t = 0; t < T; ++t)
        for (auto& [m, c] : targets[t].terms()) {
            auto it = row.find(m);
            if (it == row.end()) fail(ErrorCode::BadInput, "membership target is outside the ambient space");
            A.at(it->second, C + t) = c;
        }

    // Gaussian elimination, graded-lex pivot order (rows are already graded-lex)
    std::vector<int> pivot_col(R, -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int pr = -1;
        for (int r = prow; r < R; ++r)
            if (!A.at(r, c).is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        for (int j = 0; j < C + T; ++j) std::swap(A.at(pr, j), A.at(prow, j));
        Scalar inv = A.at(prow, c).inverse();
        for (int j = 0; j < C + T; ++j) A.at(prow, j) = inv * A.at(prow, j);
        for (int r = 0; r < R; ++r) {
            if (r == prow || A.at(r, c).is_zero()) continue;
            Scalar f = A.at(r, c);
            for (int j = 0; j < C + T; ++j) A.at(r, j) -= f * A.at(prow, j);
        }
        pivot_col[prow] = c;
        ++prow;
    }

    std::vector<MembershipCertificate> out(targets.size());
    for (int t = 0; t < T; ++t) {
        MembershipCertificate& cert = out[t];
        cert.cutoff = cutoff_weight;
        bool consistent = true;
        for (int r = 0; r < R; ++r)
            if (pivot_col[r] < 0 && !A.at(r, C + t).is_zero()) consistent = false;
        if (!consistent) continue; // Inconclusive
        cert.found = true;
        for (int r = 0; r < R; ++r) {
            if (pivot_col[r] < 0) continue;
            Scalar coef = A.at(r, C + t);
            if (coef.is_zero()) continue;
            cert.combo.push_back({gens[pivot_col[r]].first, gens[pivot_col[r]].second, coef});
        }
    }
    return out;
}

MembershipCertificate o_span_membership(const ModuleCtx& vctx, const Element& x, int cutoff_weight) {
    return o_span_membership_batch(vctx, {x}, cutoff_weight).front();
}

bool certificate_replays(const ModuleCtx& vctx, const MembershipCertificate& cert, const Element& x) {
    if (!cert.found) return false;
    Element acc;
    for (auto& [u, v, c] : cert.combo) acc += c * circ(vctx, Element::monomial(u), Element::monomial(v));
    return acc == x;
}

} // namespace voa
