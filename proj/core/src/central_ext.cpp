#include "voa/central_ext.hpp"

#include <algorithm>

namespace voa {

namespace {

long mod2(long x) { return ((x % 2) + 2) % 2; }

} // namespace

int Cocycle::eps(const IVec& a, const IVec& b) const {
    int d = L_->rank();
    if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
        fail(ErrorCode::DimensionMismatch, "cocycle arguments must have lattice rank");
    long e = 0;
    auto& g = L_->gram();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) e += a[i] * b[j] * g[i][j];
    return mod2(e) ? -1 : 1;
}

int Cocycle::eps_q(const QVec& a, const QVec& b) const {
    IVec ia(a.size()), ib(b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (!is_integer(a[i]) || !is_integer(b[i]))
            fail(ErrorCode::BadInput, "cocycle requires integer lattice vectors");
        ia[i] = to_long(a[i]);
        ib[i] = to_long(b[i]);
    }
    return eps(ia, ib);
}

QuotientGroup QuotientGroup::build(const Lattice& L, const Cocycle& eps) {
    QuotientGroup G;
    G.L = &L;
    G.eps = &eps;
    G.d = L.rank();
    return G;
}

IVec QuotientGroup::rep_of_mask(int mask) const {
    IVec a(d, 0);
    for (int i = 0; i < d; ++i)
        if (mask & (1 << i)) a[i] = 1;
    return a;
}

int QuotientGroup::mul(int x, int y) const {
    int sx = x >> d, mx = x & ((1 << d) - 1);
    int sy = y >> d, my = y & ((1 << d) - 1);
    int sign = eps->eps(rep_of_mask(mx), rep_of_mask(my)) < 0 ? 1 : 0;
    return ((sx ^ sy ^ sign) << d) | (mx ^ my);
}

int QuotientGroup::inv(int x) const {
    // exponent 4 group: x^-1 = x^3
    int x2 = mul(x, x);
    return mul(x2, x);
}

bool QuotientGroup::abelian() const {
    int n = order();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < x; ++y)
            if (mul(x, y) != mul(y, x)) return false;
    return true;
}

std::vector<int> QuotientGroup::center() const {
    std::vector<int> z;
    int n = order();
    for (int x = 0; x < n; ++x) {
        bool central = true;
        for (int y = 0; y < n && central; ++y) central = mul(x, y) == mul(y, x);
        if (central) z.push_back(x);
    }
    return z;
}

int QuotientGroup::elem(const IVec& alpha) const {
    int mask = 0;
    for (int i = 0; i < d; ++i)
        if (mod2(alpha[i])) mask |= (1 << i);
    // e_alpha = e_rep * e_{2 gamma} with eps(rep, 2 gamma) = 1, and e_{2 gamma} in K
    return mask;
}

namespace {

// All characters of the abelian subgroup spanned by `elems` (closed under mul)
// extending the partial assignment `fixed`; values are 4th roots of unity.
void extend_characters(const QuotientGroup& G, const std::vector<int>& elems,
                       std::map<int, Scalar> assigned, std::vector<std::map<int, Scalar>>& out) {
    int next = -1;
    for (int g : elems)
        if (!assigned.count(g)) { next = g; break; }
    if (next < 0) {
        out.push_back(assigned);
        return;
    }
    const Scalar I = Scalar::imag_unit();
    const Scalar roots[4] = {Scalar(1), I, Scalar(-1), Scalar(0) - I};
    for (const Scalar& z : roots) {
        // close assigned + {next -> z} under multiplication; reject inconsistency
        std::map<int, Scalar> trial = assigned;
        trial[next] = z;
        bool ok = true, grew = true;
        while (grew && ok) {
            grew = false;
            for (auto& [a, va] : trial) {
                for (auto& [b, vb] : trial) {
                    int ab = G.mul(a, b);
                    Scalar vab = va * vb;
                    auto it = trial.find(ab);
                    if (it == trial.end()) {
                        trial[ab] = vab;
                        grew = true;
                        break;
                    }
                    if (it->second != vab) { ok = false; break; }
                }
                if (!ok || grew) break;
            }
        }
        if (ok) extend_characters(G, elems, trial, out);
    }
}

std::vector<int> closure(const QuotientGroup& G, std::vector<int> gens) {
    std::vector<int> elems = {G.identity()};
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            for (size_t hi = 0; hi < elems.size(); ++hi) {
                int gh = G.mul(gens[gi], elems[hi]);
                if (std::find(elems.begin(), elems.end(), gh) == elems.end()) {
                    elems.push_back(gh);
                    grew = true;
                }
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

} // namespace

std::vector<CentralCharacter> central_characters(const QuotientGroup& G) {
    std::vector<int> Z = G.center();
    std::map<int, Scalar> seed;
    seed[G.identity()] = Scalar(1);
    seed[G.kappa()] = Scalar(-1);
    std::vector<std::map<int, Scalar>> all;
    extend_characters(G, Z, seed, all);

    // deterministic order: by value tuple over sorted center elements
    std::sort(all.begin(), all.end(), [&](auto& a, auto& b) {
        for (int z : Z) {
            const Scalar &x = a.at(z), &y = b.at(z);
            if (x == y) continue;
            auto key = [](const Scalar& s) {
                // 1 < i < -1 < -i  (matches root enumeration order)
                if (s == Scalar(1)) return 0;
                if (s == Scalar::imag_unit()) return 1;
                if (s == Scalar(-1)) return 2;
                return 3;
            };
            return key(x) < key(y);
        }
        return false;
    });

    std::vector<CentralCharacter> out;
    for (auto& vals : all) {
        CentralCharacter chi;
        for (int z : Z) chi.values[z] = vals.at(z);
        int dsq = G.order() / static_cast<int>(Z.size());
        int dim = 1;
        while (dim * dim < dsq) dim <<= 1;
        chi.irrep_dim = dim;
        out.push_back(chi);
    }
    return out;
}

GroupRep irreducible_module(const QuotientGroup& G, const CentralCharacter& chi) {
    int n = G.order();
    std::vector<int> Z = G.center();

    // maximal abelian subgroup H >= Z, greedy lexicographic
    std::vector<int> H = Z;
    for (int g = 0; g < n; ++g) {
        if (std::find(H.begin(), H.end(), g) != H.end()) continue;
        bool commutes = true;
        for (int h : H) commutes = commutes && G.mul(g, h) == G.mul(h, g);
        if (!commutes) continue;
        std::vector<int> gens = H;
        gens.push_back(g);
        H = closure(G, gens);
    }

    // extend chi to H, lexicographically first extension
    std::map<int, Scalar> seed;
    for (auto& [z, v] : chi.values) seed[z] = v;
    std::vector<std::map<int, Scalar>> exts;
    extend_characters(G, H, seed, exts);
    if (exts.empty()) fail(ErrorCode::BadInput, "central character does not extend");
    std::map<int, Scalar> chit = exts.front();

    // coset representatives of H in G, in index order
    std::vector<int> reps;
    std::vector<bool> covered(n, false);
    for (int g = 0; g < n; ++g) {
        if (covered[g]) continue;
        reps.push_back(g);
        for (int h : H) covered[G.mul(g, h)] = true;
    }
    int dim = static_cast<int>(reps.size());

    GroupRep T;
    T.dim = dim;
    T.chi = chi;
    T.mat.assign(n, std::vector<SVec>(dim, SVec(dim, Scalar())));
    for (int g = 0; g < n; ++g) {
        for (int j = 0; j < dim; ++j) {
            int gj = G.mul(g, reps[j]);
            for (int i = 0; i < dim; ++i) {
                int h = G.mul(G.inv(reps[i]), gj);
                auto it = chit.find(h);
                if (it != chit.end()) {
                    T.mat[g][i][j] = it->second;
                    break;
                }
            }
        }
    }
    return T;
}

} // namespace voa
