#include "rr/maclane.hpp"

#include <algorithm>

#include "rr/error.hpp"

namespace rr {

std::vector<BiPoly> phi_expansion(const BiPoly& g, const BiPoly& phi) {
    std::vector<BiPoly> out;
    BiPoly cur = g;
    if (phi.deg() == 1 && phi.c[0].is_zero()) {
        for (auto& c : g.c) out.push_back(BiPoly::from_poly(c));
        for (auto& c : out) c.normalize();
        return out;
    }
    while (!cur.is_zero()) {
        auto [q, r] = divmod_monic(cur, phi);
        out.push_back(std::move(r));
        cur = std::move(q);
    }
    return out;
}

std::vector<NewtonSide> newton_polygon(const std::vector<Rational>& ys) {
    std::vector<int> pts;
    for (int j = 0; j < int(ys.size()); ++j)
        if (!ys[j].is_inf()) pts.push_back(j);
    // Monotone chain, lower hull.
    std::vector<int> h;
    for (int j : pts) {
        while (h.size() >= 2) {
            int a = h[h.size() - 2], b = h.back();
            // remove b if it lies on or above segment a-j
            Rational lhs = (ys[b] - ys[a]) * Rational(j - a);
            Rational rhs = (ys[j] - ys[a]) * Rational(b - a);
            if (lhs >= rhs)
                h.pop_back();
            else
                break;
        }
        h.push_back(j);
    }
    std::vector<NewtonSide> sides;
    for (size_t i = 0; i + 1 < h.size(); ++i) sides.push_back({h[i], h[i + 1], ys[h[i]], ys[h[i + 1]]});
    return sides;
}

MacLaneChain::MacLaneChain(uint32_t prime, const Poly& base_prime) : p(prime), pi(base_prime) {
    F.push_back(std::make_shared<const FiniteField>(p, pi));
    E.push_back(1);
}

Rational MacLaneChain::value(int k, const BiPoly& g) const {
    if (g.is_zero()) return Rational::inf();
    if (k == 0) {
        int v = INT32_MAX;
        for (auto& c : g.c)
            if (!c.is_zero()) v = std::min(v, valuation(c, pi));
        return Rational(v);
    }
    const KeyLevel& L = lv[k - 1];
    auto cs = phi_expansion(g, L.phi);
    Rational best = Rational::inf();
    for (int j = 0; j < int(cs.size()); ++j) {
        if (cs[j].is_zero()) continue;
        Rational v = value(k - 1, cs[j]) + L.mu * Rational(j);
        if (v < best) best = v;
    }
    return best;
}

std::vector<int64_t> MacLaneChain::monomial(int k, const Rational& gamma) const {
    std::vector<int64_t> b(k + 1, 0);
    Rational g = gamma;
    for (int i = k; i >= 1; --i) {
        const KeyLevel& L = lv[i - 1];
        int a = 0;
        for (; a < L.e; ++a)
            if (((g - L.mu * Rational(a)) * Rational(E[i - 1])).is_integer()) break;
        if (a == L.e) fail(ErrorCode::ContractViolation, "value outside the value group");
        g = g - L.mu * Rational(a);
        b[i] = a;
    }
    if (!g.is_integer()) fail(ErrorCode::ContractViolation, "value outside the value group");
    b[0] = g.n;
    return b;
}

FElem MacLaneChain::monomial_residue(int j, std::vector<int64_t> b) const {
    const FiniteField& T = *F[j + 1];
    if (j == 0) {
        if (b[0] != 0) fail(ErrorCode::ContractViolation, "monomial of nonzero value");
        return T.one();
    }
    const KeyLevel& L = lv[j - 1];
    if (b[j] % L.e != 0) fail(ErrorCode::ContractViolation, "monomial exponent not divisible by e");
    int64_t q = b[j] / L.e;
    auto u = monomial(j - 1, L.mu * Rational(L.e));
    std::vector<int64_t> bb(b.begin(), b.begin() + j);
    for (int i = 0; i < j; ++i) bb[i] += q * u[i];
    FElem r = fl[j].embed_base(monomial_residue(j - 1, bb));
    FElem yq = T.pow(y(j), uint64_t(q < 0 ? -q : q));
    if (q < 0) yq = T.inv(yq);
    return T.mul(r, yq);
}

FPoly MacLaneChain::residual(int k, const BiPoly& g, const Rational& gamma) const {
    const FiniteField& Fk = *F[k];
    FPoly R;
    if (k == 0) {
        if (!gamma.is_integer()) {
            if (value(0, g) <= gamma) fail(ErrorCode::ContractViolation, "residual below the value");
            return R;
        }
        Poly pg = pow(pi, unsigned(std::max<int64_t>(gamma.n, 0)));
        for (int j = 0; j <= g.deg(); ++j) {
            R.push_back(Fk.zero());
            const Poly& c = g.c[j];
            if (c.is_zero()) continue;
            int v = valuation(c, pi);
            if (v < gamma.n) fail(ErrorCode::ContractViolation, "residual below the value");
            if (v == gamma.n) R[j] = Fk.reduce(c / pg);
        }
        fpoly::normalize(R);
        return R;
    }
    const KeyLevel& L = lv[k - 1];
    auto top = monomial(k, gamma);
    int r = int(top[k]);
    auto base = monomial(k - 1, gamma - L.mu * Rational(r));
    auto ue = monomial(k - 1, L.mu * Rational(L.e));
    auto cs = phi_expansion(g, L.phi);
    const FiniteField& Fp = *F[k - 1];
    (void)Fp;
    for (int j = 0; j < int(cs.size()); ++j) {
        if (cs[j].is_zero()) continue;
        Rational g2 = gamma - L.mu * Rational(j);
        Rational v = value(k - 1, cs[j]);
        if (v < g2) fail(ErrorCode::ContractViolation, "residual below the value");
        if (v > g2) continue;
        if ((j - r) % L.e != 0 || j < r) fail(ErrorCode::ContractViolation, "residual index mismatch");
        int l = (j - r) / L.e;
        FPoly rr = residual(k - 1, cs[j], g2);
        FElem c = Fk.zero();
        FElem yy = y(k - 1);
        for (int i = int(rr.size()) - 1; i >= 0; --i) c = Fk.add(Fk.mul(c, yy), fl[k - 1].embed_base(rr[i]));
        auto M = monomial(k - 1, g2);
        for (int i = 0; i < k; ++i) M[i] += int64_t(l) * ue[i] - base[i];
        c = Fk.mul(c, monomial_residue(k - 1, M));
        if (int(R.size()) <= l) R.resize(l + 1, Fk.zero());
        R[l] = c;
    }
    fpoly::normalize(R);
    return R;
}

namespace {

void add_into(LPoly& acc, LPoly t, const Poly& pi) {
    if (t.g.is_zero()) return;
    if (acc.g.is_zero()) {
        acc = std::move(t);
        return;
    }
    if (acc.s < t.s)
        acc.g = acc.g.scaled(pow(pi, unsigned(t.s - acc.s)));
    else if (t.s < acc.s)
        t.g = t.g.scaled(pow(pi, unsigned(acc.s - t.s)));
    acc.s = std::max(acc.s, t.s);
    acc.g += t.g;
}

BiPoly power(const BiPoly& a, int e) {
    BiPoly r = BiPoly::from_poly(Poly::constant(a.p, 1)), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

}  // namespace

LPoly MacLaneChain::lift(int k, const Rational& gamma, const FPoly& r) const {
    LPoly out{BiPoly(p), 0};
    if (r.empty()) return out;
    if (k == 0) {
        if (!gamma.is_integer()) fail(ErrorCode::ContractViolation, "lift at a non-integral value");
        BiPoly g(p);
        for (auto& c : r) g.c.push_back(c);
        g.normalize();
        if (gamma.n >= 0)
            g = g.scaled(pow(pi, unsigned(gamma.n)));
        else
            out.s = int(-gamma.n);
        out.g = g;
        return out;
    }
    const KeyLevel& L = lv[k - 1];
    const FiniteField& Fk = *F[k];
    auto top = monomial(k, gamma);
    int r0 = int(top[k]);
    auto base = monomial(k - 1, gamma - L.mu * Rational(r0));
    auto ue = monomial(k - 1, L.mu * Rational(L.e));
    for (int l = 0; l < int(r.size()); ++l) {
        if (r[l].is_zero()) continue;
        int j = r0 + L.e * l;
        Rational g2 = gamma - L.mu * Rational(j);
        auto M = monomial(k - 1, g2);
        for (int i = 0; i < k; ++i) M[i] += int64_t(l) * ue[i] - base[i];
        FElem z = Fk.mul(r[l], Fk.inv(monomial_residue(k - 1, M)));
        LPoly b = lift(k - 1, g2, fl[k - 1].section(z));
        b.g = b.g * power(L.phi, j);
        add_into(out, std::move(b), pi);
    }
    return out;
}

BiPoly MacLaneChain::lift_key(int k, const FPoly& ps) const {
    int d = fpoly::deg(ps);
    if (d < 1) fail(ErrorCode::ContractViolation, "key lift of a constant");
    if (k == 0) {
        BiPoly g(p);
        for (auto& c : ps) g.c.push_back(c);
        g.normalize();
        return g;
    }
    const KeyLevel& L = lv[k - 1];
    Rational gamma = L.mu * Rational(int64_t(d) * L.e);
    auto ue = monomial(k - 1, L.mu * Rational(L.e));
    auto top = monomial(k - 1, gamma);
    std::vector<int64_t> Md(k);
    for (int i = 0; i < k; ++i) Md[i] = int64_t(d) * ue[i] - top[i];
    FElem cd = monomial_residue(k - 1, Md);
    FPoly target = fpoly::scale(*F[k], ps, cd);
    LPoly g = lift(k, gamma, target);
    BiPoly phi = g.g;
    if (g.s > 0) phi = div_exact(phi, pow(pi, unsigned(g.s)));
    if (phi.deg() != d * L.e * L.m || !phi.lc().is_one())
        fail(ErrorCode::ContractViolation, "key lift has the wrong shape");
    return phi;
}

MacLaneChain MacLaneChain::extended(const FPoly& psi_k, const BiPoly& phi, const Rational& mu) const {
    MacLaneChain c = *this;
    int k = depth();
    c.psi.push_back(psi_k);
    c.fl.push_back(flatten_tower(make_extension(F[k], psi_k)));
    c.F.push_back(c.fl.back().flat);
    KeyLevel L;
    L.phi = phi;
    L.mu = mu;
    L.e = int((mu * Rational(E[k])).d);
    L.m = phi.deg();
    c.lv.push_back(L);
    c.E.push_back(E[k] * L.e);
    return c;
}

MacLaneChain MacLaneChain::replaced(const BiPoly& phi, const Rational& mu) const {
    MacLaneChain c = *this;
    int k = depth();
    KeyLevel& L = c.lv[k - 1];
    L.phi = phi;
    L.mu = mu;
    L.e = int((mu * Rational(E[k - 1])).d);
    L.m = phi.deg();
    c.E[k] = E[k - 1] * L.e;
    return c;
}

}  // namespace rr
