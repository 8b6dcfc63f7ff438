#include <algorithm>
#include <functional>

#include "rr/field.hpp"
#include "rr/linalg.hpp"
#include "rr/parse.hpp"
#include "rr/rr_engine.hpp"

namespace rr {

namespace {

using Exp = std::array<int, 3>;

TriPoly tri_add(const TriPoly& a, const TriPoly& b, uint32_t sb = 1) {
    PrimeField F(a.p);
    TriPoly r = a;
    for (auto& [e, c] : b.c) {
        uint32_t v = F.add(r.c.count(e) ? r.c[e] : 0, F.mul(c, sb));
        if (v)
            r.c[e] = v;
        else
            r.c.erase(e);
    }
    return r;
}

TriPoly tri_mul(const TriPoly& a, const TriPoly& b) {
    PrimeField F(a.p);
    TriPoly r{a.p, {}};
    for (auto& [ea, ca] : a.c)
        for (auto& [eb, cb] : b.c) {
            Exp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            uint32_t v = F.add(r.c.count(e) ? r.c[e] : 0, F.mul(ca, cb));
            if (v)
                r.c[e] = v;
            else
                r.c.erase(e);
        }
    return r;
}

TriPoly tri_const(uint32_t p, int64_t v) {
    TriPoly r{p, {}};
    int64_t m = ((v % int64_t(p)) + int64_t(p)) % int64_t(p);
    if (m) r.c[{0, 0, 0}] = uint32_t(m);
    return r;
}

TriPoly tri_pow(TriPoly a, long e) {
    TriPoly r = tri_const(a.p, 1);
    while (e) {
        if (e & 1) r = tri_mul(r, a);
        e >>= 1;
        if (e) a = tri_mul(a, a);
    }
    return r;
}

struct TriOps {
    uint32_t p;
    TriPoly constant(int64_t v) { return tri_const(p, v); }
    TriPoly variable(const std::string& n) {
        if (n.size() != 2 || n[0] != 'X' || n[1] < '0' || n[1] > '2')
            fail(ErrorCode::Syntax, "unknown variable '" + n + "'");
        TriPoly r{p, {}};
        Exp e{0, 0, 0};
        e[size_t(n[1] - '0')] = 1;
        r.c[e] = 1;
        return r;
    }
    TriPoly add(const TriPoly& a, const TriPoly& b) { return tri_add(a, b); }
    TriPoly sub(const TriPoly& a, const TriPoly& b) { return tri_add(a, b, p - 1); }
    TriPoly mul(const TriPoly& a, const TriPoly& b) { return tri_mul(a, b); }
    TriPoly div(const TriPoly& a, const TriPoly& b) {
        if (b.c.size() != 1 || b.c.begin()->first != Exp{0, 0, 0})
            fail(ErrorCode::Syntax, "only division by a nonzero constant is allowed");
        return tri_mul(a, tri_const(p, PrimeField(p).inv(b.c.begin()->second)));
    }
    TriPoly neg(const TriPoly& a) { return tri_add(TriPoly{p, {}}, a, p - 1); }
    TriPoly pow(const TriPoly& a, long e) {
        if (e < 0) fail(ErrorCode::Syntax, "negative exponent");
        return tri_pow(a, e);
    }
};

// F(T Y) with X_i = sum_j T[i][j] Y_j.
TriPoly transform(const TriPoly& F, const std::array<std::array<uint32_t, 3>, 3>& T) {
    uint32_t p = F.p;
    std::array<TriPoly, 3> lin;
    for (int i = 0; i < 3; ++i) {
        lin[size_t(i)] = TriPoly{p, {}};
        for (int j = 0; j < 3; ++j)
            if (T[size_t(i)][size_t(j)]) {
                Exp e{0, 0, 0};
                e[size_t(j)] = 1;
                lin[size_t(i)].c[e] = T[size_t(i)][size_t(j)];
            }
    }
    TriPoly r{p, {}};
    for (auto& [e, c] : F.c) {
        TriPoly m = tri_const(p, c);
        for (int i = 0; i < 3; ++i) m = tri_mul(m, tri_pow(lin[size_t(i)], e[size_t(i)]));
        r = tri_add(r, m);
    }
    return r;
}

// F(1, t, x) or, swapped, F(1, x, t), made monic in x.
BiPoly dehomogenize(const TriPoly& F, bool swapped) {
    uint32_t p = F.p;
    BiPoly f(p);
    for (auto& [e, c] : F.c) {
        int te = swapped ? e[2] : e[1];
        int xe = swapped ? e[1] : e[2];
        BiPoly m = BiPoly::from_poly(Poly::monomial(p, c, te));
        for (int k = 0; k < xe; ++k) m = m * BiPoly::X(p);
        f += m;
    }
    f.normalize();
    if (f.is_zero() || f.lc().deg() != 0) return f;
    return f.scaled(Poly::constant(p, PrimeField(p).inv(f.lc().c[0])));
}

bool separable(const BiPoly& f) {
    if (f.is_zero() || f.deg() < 1) return false;
    return !resultant_in_X(f, f.derivative()).is_zero();
}

uint32_t det3(const std::array<std::array<uint32_t, 3>, 3>& T, uint32_t p) {
    MatFp m(3, std::vector<uint32_t>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[size_t(i)][size_t(j)] = T[size_t(i)][size_t(j)];
    return rank_fp(m, p) == 3 ? 1 : 0;
}

// Base primes of degree d not dividing g, in canonical order.
std::vector<Poly> good_primes(uint32_t p, int d, const Poly& g, size_t limit) {
    std::vector<Poly> out;
    std::vector<uint32_t> c(size_t(d), 0);
    for (;;) {
        Poly q(p);
        q.c = c;
        q.c.push_back(1);
        q.normalize();
        if (is_irreducible(q) && !(g % q).is_zero()) {
            out.push_back(q);
            if (out.size() >= limit) return out;
        }
        size_t k = 0;
        while (k < c.size() && ++c[k] == p) c[k++] = 0;
        if (k == c.size()) return out;
    }
}

}  // namespace

int TriPoly::degree() const {
    int d = -1;
    for (auto& [e, v] : c) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

bool TriPoly::homogeneous() const {
    int d = degree();
    for (auto& [e, v] : c)
        if (e[0] + e[1] + e[2] != d) return false;
    return true;
}

uint32_t TriPoly::eval(const std::array<uint32_t, 3>& x) const {
    PrimeField F(p);
    uint32_t s = 0;
    for (auto& [e, v] : c) {
        uint32_t m = v;
        for (int i = 0; i < 3; ++i) m = F.mul(m, F.pow(x[size_t(i)], uint64_t(e[size_t(i)])));
        s = F.add(s, m);
    }
    return s;
}

TriPoly parse_tripoly(uint32_t p, const std::string& text, int line) {
    TriOps ops{p};
    return parse_expression(ops, text, line);
}

std::string to_string(const TriPoly& F) {
    if (F.c.empty()) return "0";
    std::string s;
    for (auto it = F.c.rbegin(); it != F.c.rend(); ++it) {
        auto& [e, v] = *it;
        bool first = s.empty();
        std::string mono;
        for (int i = 0; i < 3; ++i)
            if (e[size_t(i)] > 0) {
                if (!mono.empty()) mono += "*";
                mono += "X" + std::to_string(i);
                if (e[size_t(i)] > 1) mono += "^" + std::to_string(e[size_t(i)]);
            }
        if (!first) s += " + ";
        if (mono.empty())
            s += std::to_string(v);
        else if (v == 1)
            s += mono;
        else
            s += std::to_string(v) + "*" + mono;
    }
    return s;
}

bool is_irreducible_curve(const Model& m) {
    uint32_t p = m->p;
    int n = m->n;
    if (n == 1) return true;
    // Unramified base prime with the fewest places.
    std::vector<Place> best;
    for (int d = 1; d <= 4 && best.size() != 1; ++d) {
        for (auto& q : good_primes(p, d, m->disc, 6)) {
            auto ps = decompose(m, BasePrime::finite(q));
            if (best.empty() || ps.size() < best.size()) best = ps;
            if (best.size() == 1) break;
        }
        if (!best.empty()) break;
    }
    if (best.empty()) fail(ErrorCode::FieldTooSmall, "no unramified base prime found");
    if (best.size() == 1) return true;
    // A factor g of f in k[t][x] is monic with deg_t of its x^{d-j} coefficient at most lambda*j.
    const Poly& q = best[0].base.p;
    int N = (m->lambda * n) / q.deg() + 2;
    std::vector<BiPoly> loc;
    for (auto& P : best) loc.push_back(lift_factor(P, N).lifted_factor);
    Poly mod = pow(q, unsigned(N));
    size_t r = loc.size();
    for (uint32_t mask = 1; mask + 1 < (1u << r); ++mask) {
        BiPoly g = BiPoly::from_poly(Poly::constant(p, 1));
        for (size_t i = 0; i < r; ++i)
            if (mask >> i & 1) g = g * loc[i];
        if (2 * g.deg() > n) continue;
        for (auto& c : g.c) c = c % mod;
        g.normalize();
        bool small = true;
        for (int j = 0; j <= g.deg(); ++j)
            if (g.coef(j).deg() > m->lambda * (g.deg() - j)) small = false;
        if (!small) continue;
        if (divmod_monic(m->f, g).second.is_zero()) return false;
    }
    return true;
}

PreparedCurve prepare_curve(const TriPoly& F) {
    uint32_t p = F.p;
    if (F.c.empty() || !F.homogeneous()) fail(ErrorCode::InvalidInput, "projective polynomial must be homogeneous and nonzero");
    int n = F.degree();
    if (n < 1) fail(ErrorCode::InvalidInput, "projective polynomial must have positive degree");
    std::vector<std::array<uint32_t, 3>> off;
    auto consider = [&](std::array<uint32_t, 3> x) {
        if (F.eval(x)) off.push_back(x);
    };
    consider({0, 1, 0});
    consider({0, 0, 1});
    for (uint32_t a = 0; a < p; ++a) consider({0, 1, a});
    for (uint32_t a = 0; a < p; ++a)
        for (uint32_t b = 0; b < p; ++b) consider({1, a, b});
    std::sort(off.begin(), off.end());
    off.erase(std::unique(off.begin(), off.end()), off.end());
    if (off.size() < 2) fail(ErrorCode::FieldTooSmall, "fewer than two rational points off the curve");

    auto attempt = [&](const std::array<uint32_t, 3>& P, const std::array<uint32_t, 3>& Pp,
                       PreparedCurve& out) -> bool {
        std::array<std::array<uint32_t, 3>, 3> T{};
        const std::array<std::array<uint32_t, 3>, 3> units = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        bool ok = false;
        for (auto& Q : units) {
            for (int i = 0; i < 3; ++i) T[size_t(i)] = {Q[size_t(i)], P[size_t(i)], Pp[size_t(i)]};
            if (det3(T, p)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
        TriPoly G = transform(F, T);
        for (bool sw : {false, true}) {
            BiPoly f = dehomogenize(G, sw);
            if (f.deg() == n && f.lc().is_one() && separable(f)) {
                out.model = CurveModel::make(f);
                out.T = T;
                out.swapped = sw;
                out.identity = !sw && T == units;
                return true;
            }
        }
        return false;
    };
    PreparedCurve pc;
    bool done = F.eval({0, 0, 1}) && attempt({0, 1, 0}, {0, 0, 1}, pc);
    for (size_t i = 0; i < off.size() && !done; ++i)
        for (size_t j = 0; j < off.size() && !done; ++j)
            if (i != j) done = attempt(off[i], off[j], pc);
    if (!done) fail(ErrorCode::NotIrreducible, "no separable model found; the polynomial is reducible or a p-th power");
    if (!is_irreducible_curve(pc.model)) fail(ErrorCode::NotIrreducible, "curve polynomial is reducible over F_p(t)");
    return pc;
}

}  // namespace rr
