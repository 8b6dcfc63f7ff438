#include "rr/rr_engine.hpp"

#include <algorithm>

#include "rr/field.hpp"
#include "rr/linalg.hpp"

namespace rr {

namespace {

// Entrywise t^d w(1/t).
PolyMatrix reversed(const PolyMatrix& w, int d) {
    PolyMatrix r(w.p, w.rows, w.cols);
    for (int i = 0; i < w.rows; ++i)
        for (int j = 0; j < w.cols; ++j) {
            const Poly& a = w(i, j);
            if (a.is_zero()) continue;
            if (a.deg() > d) fail(ErrorCode::ContractViolation, "entry degree exceeds the reversal bound");
            r(i, j) = a.reversed(d);
        }
    return r;
}

PolyMatrix t_powers(uint32_t p, int n, int step) {
    std::vector<Poly> d;
    for (int j = 0; j < n; ++j) d.push_back(Poly::monomial(p, 1, j * step));
    return PolyMatrix::diagonal(d);
}

}  // namespace

long CompressedBasis::dimension(int r) const {
    long s = 0;
    for (int di : d) s += std::max(0, di + r + 1);
    return s;
}

CompressedBasis riemann_roch(const PlaceTable& table, const Divisor& D, RRTrace* trace) {
    const Model& model = table.model();
    uint32_t p = model->p;
    int n = model->n;
    int lambda = model->lambda;
    NormalizationData nd = normalize(table, D);
    TriangularBasisFinite tb = triangular_basis_finite(table, D, nd);
    TriangularBasisInfinity ti = triangular_basis_infinity(table, D, nd);

    // Step 1: p_{n-1} M*
    const Poly& pn = tb.den.back();
    PolyMatrix Mt(p, n, n);
    for (int i = 0; i < n; ++i) {
        Poly s = pn / tb.den[size_t(i)];
        for (int j = 0; j <= i; ++j) Mt(i, j) = tb.g[size_t(i)].coef(j) * s;
    }
    // Step 2: u^e N* with N* = N' diag(1, u^lambda, ...)
    int e = ti.exp;
    PolyMatrix Nt(p, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) Nt(i, j) = ti.h[size_t(i)].coef(j).shifted(e - ti.mi[size_t(i)] + j * lambda);

    int E = e + n * lambda;
    PolyMatrix Nt_red, P, P_red, Mt_red;
    bool fast = e == 0;
    if (fast) {
        // Nt is diag(u^{j lambda}); reduce Mt with column shift j*lambda instead.
        std::vector<int> shift;
        for (int j = 0; j < n; ++j) shift.push_back(j * lambda);
        RowReduction rr = row_reduce(Mt, shift);
        Mt_red = rr.R;
        PolyMatrix Dt = t_powers(p, n, lambda);
        Nt_red = Nt;
        P = Mt * Dt;
        P_red = Mt_red * Dt;
    } else {
        RowReduction nr = row_reduce(Nt);
        Nt_red = nr.R;
        PolyMatrix W = inverse_row_reduced(Nt_red, E);
        P = Mt * reversed(W, E);
        RowReduction pr = row_reduce(P);
        P_red = pr.R;
        Mt_red = (P_red * reversed(Nt_red, E)).divided(Poly::monomial(p, 1, E));
    }
    std::vector<int> rP = rdeg(P), rPred = rdeg(P_red);

    RatFunc scale = tb.q / RatFunc(pn);
    int delta = e - ti.m - scale.degree();
    CompressedBasis cb;
    cb.divisor = D;
    for (int i = 0; i < n; ++i) {
        std::vector<RatFunc> coords;
        for (int j = 0; j < n; ++j) coords.push_back(RatFunc(Mt_red(i, j)) * scale);
        cb.b.emplace_back(model, coords);
        cb.d.push_back(-rPred[size_t(i)] + delta);
    }
    if (trace) {
        trace->finite = tb;
        trace->infinite = ti;
        trace->Mt = Mt;
        trace->Nt = Nt;
        trace->Nt_red = Nt_red;
        trace->P = P;
        trace->P_red = P_red;
        trace->Mt_red = Mt_red;
        trace->rdeg_P = rP;
        trace->rdeg_P_red = rPred;
        trace->delta = delta;
        trace->fast_path = fast;
    }
    return cb;
}

std::vector<FFElement> expand_basis(const CompressedBasis& cb, int r) {
    std::vector<FFElement> out;
    for (size_t i = 0; i < cb.b.size(); ++i) {
        if (cb.b[i].model == nullptr) continue;
        uint32_t p = cb.b[i].model->p;
        for (int j = 0; j <= cb.d[i] + r; ++j) out.push_back(cb.b[i].scaled(RatFunc::t_power(p, j)));
    }
    return out;
}

int k_rank(const std::vector<FFElement>& elems) {
    if (elems.empty()) return 0;
    uint32_t p = elems[0].model->p;
    Poly L = Poly::constant(p, 1);
    for (auto& b : elems)
        for (auto& c : b.coords) L = L / gcd(L, c.den) * c.den;
    std::vector<std::vector<Poly>> nums;
    int width = 0;
    for (auto& b : elems) {
        std::vector<Poly> row;
        for (auto& c : b.coords) {
            row.push_back(c.num * (L / c.den));
            width = std::max(width, row.back().deg() + 1);
        }
        nums.push_back(row);
    }
    MatFp m;
    for (auto& row : nums) {
        std::vector<uint32_t> v;
        for (auto& a : row)
            for (int k = 0; k < width; ++k) v.push_back(k <= a.deg() ? a.c[size_t(k)] : 0);
        m.push_back(v);
    }
    return rank_fp(m, p);
}

Membership contains(const PlaceTable& table, const Divisor& D, const FFElement& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidInput, "membership of zero is not decided here");
    uint32_t p = table.model()->p;
    std::vector<BasePrime> primes = table.discriminant_primes();
    for (auto& bp : D.support_primes()) primes.push_back(bp);
    for (auto& c : b.coords)
        if (!c.is_zero() && c.den.deg() > 0)
            for (auto& [q, k] : factor_poly(c.den)) primes.push_back(BasePrime::finite(q));
    primes.push_back(BasePrime::at_infinity(p));
    std::sort(primes.begin(), primes.end(), base_prime_less);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    Membership m;
    for (auto& bp : primes)
        for (auto& P : table.over(bp))
            if (valuation(P, b) + D.at(key_of(P)) < 0) m.violations.push_back(key_of(P));
    m.member = m.violations.empty();
    return m;
}

CurveInvariants curve_invariants(const PlaceTable& table) {
    const Model& model = table.model();
    CurveInvariants ci;
    RRTrace tr;
    CompressedBasis cb = riemann_roch(table, Divisor{}, &tr);
    ci.delta_finite = tr.finite.delta;
    ci.delta_infinite = tr.infinite.delta;
    ci.delta_curve = ci.delta_finite + ci.delta_infinite;
    ci.rho = cb.dimension(0);
    ci.plane_model = model->lambda == 1 && model->total_degree() == model->n;
    if (ci.rho == 1) {
        long s = 0;
        for (int d : cb.d) s += d;
        ci.genus = int(1 - model->n - s);
    }
    return ci;
}

}  // namespace rr
