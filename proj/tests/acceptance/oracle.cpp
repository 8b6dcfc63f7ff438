// dim L(D) for effective D on a smooth plane curve, by interpolation.
//
// With g(t) = prod (t - a)^{m_a} vanishing to order >= n_P at each point of D, every b in L(D) is
// h / g with h of total degree <= N = deg g, and h / g lies in L(D) iff
//   v_P(h) >= m_a - n_P at each point P = (a, b) of D,
//   v_Q(h) >= m_a       at every other point Q of the fiber t = a.
// Fibers are taken unramified, so local conditions come from Newton lifting of the rational roots
// and from reduction modulo the cofactor, all over k[s]/(s^m) with s = t - a. The kernel of the
// restriction to the curve is f * (forms of degree <= N - n).
#include <map>
#include <random>

#include "common.hpp"
#include "rr/linalg.hpp"

using namespace rr;

namespace acc {

namespace {

using Series = Poly;  // in s, reduced mod s^m

Series trunc(const Poly& a, int m) {
    Poly r = a;
    if (int(r.c.size()) > m) r.c.resize(size_t(m));
    r.normalize();
    return r;
}

// c(a + s)
Poly shift(const Poly& c, uint32_t a) {
    uint32_t p = c.p;
    Poly lin(p);
    lin.c = {a, 1};
    lin.normalize();
    Poly r(p);
    for (int k = c.deg(); k >= 0; --k) r = r * lin + Poly::constant(p, c.c[size_t(k)]);
    return r;
}

// polynomial in x with series coefficients, low to high
using SPoly = std::vector<Series>;

Series eval(const SPoly& f, const Series& x, int m) {
    Series r(x.p);
    for (int k = int(f.size()) - 1; k >= 0; --k) r = trunc(r * x + f[size_t(k)], m);
    return r;
}

SPoly deriv(const SPoly& f) {
    SPoly d;
    for (size_t k = 1; k < f.size(); ++k) d.push_back(f[k].scaled(uint32_t(k % f[k].p)));
    return d;
}

Series lift_root(const SPoly& f, uint32_t b, int m) {
    uint32_t p = f[0].p;
    Series beta = Poly::constant(p, b);
    Poly sm = Poly::monomial(p, 1, m);
    SPoly df = deriv(f);
    for (int it = 0; it < m + 1; ++it) {
        Series num = eval(f, beta, m);
        if (num.is_zero()) break;
        Series den = eval(df, beta, m);
        beta = trunc(beta - trunc(num * invmod(den, sm), m), m);
    }
    return beta;
}

// f / (x - beta), exact mod s^m
SPoly divide_linear(const SPoly& f, const Series& beta, int m) {
    size_t d = f.size() - 1;
    SPoly q(d, Poly(beta.p));
    q[d - 1] = f[d];
    for (size_t k = d - 1; k >= 1; --k) q[k - 1] = trunc(f[k] + beta * q[k], m);
    return q;
}

struct Point {
    uint32_t a, b;
};

}  // namespace

long oracle_dimension(const BiPoly& f, const std::vector<std::pair<Point, int>>& D) {
    uint32_t p = f.p;
    int n = f.deg();
    std::map<uint32_t, int> m_at;
    for (auto& [P, k] : D) m_at[P.a] = std::max(m_at[P.a], k);
    int N = 0;
    for (auto& [a, m] : m_at) N += m;
    std::vector<std::pair<int, int>> mons;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) mons.push_back({i, j});
    MatFp rows;
    auto add_rows = [&](const std::vector<Series>& vals, int len) {
        // vals[c] is the value for monomial c; one row per s-coefficient
        for (int l = 0; l < len; ++l) {
            std::vector<uint32_t> r(mons.size(), 0);
            for (size_t c = 0; c < mons.size(); ++c)
                r[c] = l < int(vals[c].c.size()) ? vals[c].c[size_t(l)] : 0;
            rows.push_back(r);
        }
    };
    for (auto& [a, m] : m_at) {
        SPoly fa;
        for (int j = 0; j <= n; ++j) fa.push_back(trunc(shift(f.coef(j), a), m));
        std::vector<Series> tpow = {Poly::constant(p, 1)};
        Poly lin(p);
        lin.c = {a, 1};
        lin.normalize();
        for (int i = 1; i <= N; ++i) tpow.push_back(trunc(tpow.back() * lin, m));
        SPoly G = fa;
        for (auto& [P, k] : D) {
            if (P.a != a) continue;
            Series beta = lift_root(fa, P.b, m);
            G = divide_linear(G, beta, m);
            int ord = m - k;
            if (ord <= 0) continue;
            std::vector<Series> bpow = {Poly::constant(p, 1)};
            for (int j = 1; j <= N; ++j) bpow.push_back(trunc(bpow.back() * beta, ord));
            std::vector<Series> vals;
            for (auto& [i, j] : mons) vals.push_back(trunc(tpow[size_t(i)] * bpow[size_t(j)], ord));
            add_rows(vals, ord);
        }
        int dG = int(G.size()) - 1;
        if (dG == 0) continue;
        // x^j mod G as dG series each
        std::vector<SPoly> xr(1, SPoly(size_t(dG), Poly(p)));
        xr[0][0] = Poly::constant(p, 1);
        for (int j = 1; j <= N; ++j) {
            SPoly prev = xr.back();
            SPoly nx(static_cast<size_t>(dG), Poly(p));
            Series top = prev[size_t(dG - 1)];
            for (int k = dG - 1; k >= 1; --k) nx[size_t(k)] = prev[size_t(k - 1)];
            for (int k = 0; k < dG; ++k) nx[size_t(k)] = trunc(nx[size_t(k)] - top * G[size_t(k)], m);
            xr.push_back(nx);
        }
        for (int k = 0; k < dG; ++k) {
            std::vector<Series> vals;
            for (auto& [i, j] : mons) vals.push_back(trunc(tpow[size_t(i)] * xr[size_t(j)][size_t(k)], m));
            add_rows(vals, m);
        }
    }
    long kernel = long(mons.size()) - (rows.empty() ? 0 : rank_fp(rows, p));
    long fmult = N >= n ? long(N - n + 1) * (N - n + 2) / 2 : 0;
    return kernel - fmult;
}

Outcome oracle_criterion() {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937 rng(777);
    int smooth = 0, compared = 0;
    for (auto& c : corpus()) {
        std::string tag = "F" + std::to_string(c.p) + " " + c.f;
        Model m = curve(c.p, c.f);
        PlaceTable tab(m);
        CurveInvariants ci = curve_invariants(tab);
        if (!(ci.plane_model && ci.delta_curve == 0)) continue;
        // rational affine points in unramified fibers
        std::vector<Point> pts;
        PrimeField F(c.p);
        for (uint32_t a = 0; a < c.p; ++a) {
            if (m->disc.eval(a) == 0) continue;
            for (uint32_t b = 0; b < c.p; ++b) {
                uint32_t v = 0;
                for (int j = m->n; j >= 0; --j) v = F.add(F.mul(v, b), m->f.coef(j).eval(a));
                if (v == 0) pts.push_back({a, b});
            }
        }
        if (pts.size() < 2) {
            o.note(tag + ": skipped, fewer than 2 usable rational points");
            continue;
        }
        ++smooth;
        for (int trial = 0; trial < 6; ++trial) {
            int deg = 1 + int(rng() % 8);
            std::map<std::pair<uint32_t, uint32_t>, int> mult;
            for (int k = 0; k < deg; ++k) {
                const Point& P = pts[rng() % std::min<size_t>(pts.size(), 4)];
                ++mult[{P.a, P.b}];
            }
            std::vector<std::pair<Point, int>> Dpts;
            Divisor D;
            for (auto& [ab, k] : mult) {
                Dpts.push_back({{ab.first, ab.second}, k});
                // the place over t - a whose branch passes through (a, b)
                BasePrime bp = BasePrime::finite(parse_tpoly(c.p, "t - " + std::to_string(ab.first)));
                FFElement xb = parse_element(m, "x - " + std::to_string(ab.second));
                int found = 0;
                for (auto& P : tab.over(bp))
                    if (P.degree == 1 && valuation(P, xb) > 0) {
                        D.add(key_of(P), k);
                        ++found;
                    }
                o.check(found == 1, tag + ": one place through the point");
            }
            long expect = oracle_dimension(m->f, Dpts);
            long got = riemann_roch(tab, D).dimension();
            ++compared;
            o.check(got == expect, tag + " D=" + to_string(D) + ": engine " + std::to_string(got) + " vs oracle " +
                                       std::to_string(expect));
        }
    }
    o.check(smooth >= 3, "at least 3 smooth curves");
    o.note(std::to_string(smooth) + " smooth curves, " + std::to_string(compared) + " divisors, " +
           fmt_seconds(seconds_since(t0)));
    return o;
}

}  // namespace acc
