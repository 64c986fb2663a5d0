#include "voa/fock.hpp"

#include <algorithm>
#include <sstream>

namespace voa {

int cmp(const Ground& a, const Ground& b) {
    if (a.twisted != b.twisted) return a.twisted ? 1 : -1;
    if (a.twisted) return a.t < b.t ? -1 : (a.t > b.t ? 1 : 0);
    if (a.mu.size() != b.mu.size()) return a.mu.size() < b.mu.size() ? -1 : 1;
    for (size_t i = 0; i < a.mu.size(); ++i) {
        int c = ::cmp(a.mu[i], b.mu[i]);
        if (c) return c;
    }
    return 0;
}

bool Monomial::operator<(const Monomial& o) const {
    int c = cmp(g, o.g);
    if (c) return c < 0;
    if (modes.size() != o.modes.size()) return modes.size() < o.modes.size();
    return modes < o.modes;
}

bool Monomial::operator==(const Monomial& o) const { return modes == o.modes && cmp(g, o.g) == 0; }

Element Element::monomial(Monomial m, Scalar c) {
    Element e;
    e.add(m, c);
    return e;
}

void Element::add(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = c_.find(m);
    if (it == c_.end()) {
        c_[m] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (auto& [m, c] : o.c_) add(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (auto& [m, c] : o.c_) add(m, Scalar(0) - c);
    return *this;
}

Element operator*(const Scalar& c, const Element& x) {
    Element out;
    if (c.is_zero()) return out;
    for (auto& [m, q] : x.c_) out.add(m, c * q);
    return out;
}

std::string Element::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (auto& [dm, a] : m.modes) {
            os << "h" << (a + 1) << "(-";
            if (dm % 2 == 0)
                os << dm / 2;
            else
                os << dm << "/2";
            os << ")";
        }
        if (m.g.twisted) {
            os << "t" << (m.g.t + 1);
        } else {
            bool zero = true;
            for (auto& q : m.g.mu) zero = zero && q == 0;
            if (zero) {
                os << "1";
            } else {
                os << "e^(";
                for (size_t i = 0; i < m.g.mu.size(); ++i) os << (i ? "," : "") << m.g.mu[i].get_str();
                os << ")";
            }
        }
    }
    return os.str();
}

ModuleCtx ModuleCtx::untwisted_vl(const Lattice& L, const OrthoBasis& B, const Cocycle& eps) {
    ModuleCtx c;
    c.L = &L;
    c.basis = &B;
    c.eps = &eps;
    c.base = QVec(L.rank(), Rational(0));
    return c;
}

ModuleCtx ModuleCtx::untwisted_coset(const Lattice& L, const OrthoBasis& B, const Cocycle& eps, QVec base) {
    ModuleCtx c = untwisted_vl(L, B, eps);
    c.base = std::move(base);
    return c;
}

ModuleCtx ModuleCtx::twisted_module(const Lattice& L, const OrthoBasis& B, const Cocycle& eps,
                             const QuotientGroup* G, const GroupRep* rep) {
    ModuleCtx c;
    c.L = &L;
    c.basis = &B;
    c.eps = &eps;
    c.twisted = true;
    c.G = G;
    c.rep = rep;
    return c;
}

Element vacuum(const ModuleCtx& ctx) {
    Monomial m;
    m.g = ctx.twisted ? Ground::twisted_index(0) : Ground::untwisted(ctx.base);
    return Element::monomial(m);
}

Element ground_state(const ModuleCtx& ctx, QVec mu) {
    if (ctx.twisted) fail(ErrorCode::SectorMismatch, "ground_state is untwisted");
    Monomial m;
    m.g = Ground::untwisted(std::move(mu));
    return Element::monomial(m);
}

Element twisted_ground(int t) { return Element::monomial(Monomial{{}, Ground::twisted_index(t)}); }

Element creation(int dir, int dm, const Element& x) {
    if (dm <= 0) fail(ErrorCode::BadInput, "creation mode must be positive");
    Element out;
    for (auto& [m, c] : x.terms()) {
        if ((dm % 2 == 0) == m.g.twisted)
            fail(ErrorCode::ParityMismatch, "creation mode parity does not match sector");
        Monomial m2 = m;
        auto pos = std::upper_bound(m2.modes.begin(), m2.modes.end(), std::make_pair(dm, dir),
                                    [](const auto& a, const auto& b) { return a > b; });
        m2.modes.insert(pos, {dm, dir});
        out.add(m2, c);
    }
    return out;
}

Element mode_action_orth(const ModuleCtx& ctx, const SVec& h, int dm, const Element& x) {
    int d = ctx.rank();
    if (static_cast<int>(h.size()) != d) fail(ErrorCode::DimensionMismatch, "h-vector has wrong rank");
    bool even = dm % 2 == 0;
    if (even == ctx.twisted) fail(ErrorCode::ParityMismatch, "mode parity does not match sector");
    Element out;
    if (dm < 0) {
        for (int a = 0; a < d; ++a)
            if (!h[a].is_zero()) out += h[a] * creation(a, -dm, x);
        return out;
    }
    if (dm == 0) {
        // h(0) e^mu = <h, mu> e^mu
        for (auto& [m, c] : x.terms()) {
            Scalar pair;
            for (int a = 0; a < d; ++a) {
                if (h[a].is_zero()) continue;
                Scalar ha_mu;
                for (int i = 0; i < d; ++i) ha_mu += Scalar(m.g.mu[i]) * ctx.basis->pair_basis(a, i);
                pair += h[a] * ha_mu;
            }
            out.add(m, c * pair);
        }
        return out;
    }
    // annihilation: contract against matching creation modes
    Rational n(dm, 2);
    n.canonicalize();
    for (auto& [m, c] : x.terms()) {
        for (size_t k = 0; k < m.modes.size(); ++k) {
            if (k > 0 && m.modes[k] == m.modes[k - 1]) continue; // handled with multiplicity
            auto [dme, b] = m.modes[k];
            if (dme != dm || h[b].is_zero()) continue;
            int mult = 0;
            for (auto& e : m.modes) mult += (e == m.modes[k]);
            Monomial m2 = m;
            m2.modes.erase(m2.modes.begin() + static_cast<long>(k));
            out.add(m2, c * (Scalar(Rational(mult) * n) * h[b]));
        }
    }
    return out;
}

Element mode_action(const ModuleCtx& ctx, const QVec& h, int dm, const Element& x) {
    return mode_action_orth(ctx, ctx.basis->to_orth(h), dm, x);
}

Element theta(const Element& x) {
    Element out;
    for (auto& [m, c] : x.terms()) {
        Monomial m2 = m;
        if (!m2.g.twisted)
            for (auto& q : m2.g.mu) q = -q;
        Scalar c2 = (m.modes.size() % 2) ? Scalar(0) - c : c;
        out.add(m2, c2);
    }
    return out;
}

Rational grade_monomial(const ModuleCtx& ctx, const Monomial& m) {
    Rational w(m.heis_weight_dm(), 2);
    w.canonicalize();
    if (m.g.twisted) {
        w += rat(ctx.rank(), 16);
    } else {
        w += ctx.L->pairing(m.g.mu, m.g.mu) / 2;
    }
    return w;
}

bool is_homogeneous(const ModuleCtx& ctx, const Element& x) {
    bool first = true;
    Rational w;
    for (auto& [m, c] : x.terms()) {
        Rational wm = grade_monomial(ctx, m);
        if (first) {
            w = wm;
            first = false;
        } else if (wm != w) {
            return false;
        }
    }
    return true;
}

Rational grade(const ModuleCtx& ctx, const Element& x) {
    if (x.is_zero()) return 0;
    if (!is_homogeneous(ctx, x)) fail(ErrorCode::Inhomogeneous, "grade of inhomogeneous element");
    return grade_monomial(ctx, x.terms().begin()->first);
}

Element project_eigen(const Element& x, int sign) {
    Element tx = theta(x);
    Element out = x;
    if (sign >= 0)
        out += tx;
    else
        out -= tx;
    Scalar half(rat(1, 2));
    return half * out;
}

} // namespace voa
