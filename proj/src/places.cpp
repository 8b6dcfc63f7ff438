#include "rr/places.hpp"

#include <algorithm>
#include <mutex>

#include "rr/error.hpp"

namespace rr {

namespace {
int g_precision_cap = 4096;
}

void set_precision_cap(int cap) { g_precision_cap = cap; }
int precision_cap() { return g_precision_cap; }

std::string BasePrime::center() const {
    std::string s = str(), r;
    for (char c : s)
        if (c != ' ') r += c;
    return r;
}

bool base_prime_less(const BasePrime& a, const BasePrime& b) {
    if (a.infinite != b.infinite) return !a.infinite;
    if (a.infinite) return false;
    return poly_less(a.p, b.p);
}

struct PlaceData {
    Model model;
    bool infinite = false;
    BiPoly F;              // f or f_inf
    Poly pi;
    MacLaneChain chain;    // chain at the leaf
    FPoly psi;             // simple residual factor at the leaf
    BiPoly key;            // lift of psi
    int disc_val = 0;      // v_pi of the discriminant of F

    mutable std::mutex mtx;
    mutable MacLaneChain node;  // chain extended by the refined key
    mutable bool exact = false;
    mutable bool started = false;

    void start() const;
    void refine_once() const;
    // Constant C with v_0(c) >= v_k(c) - C for deg c < deg key.
    Rational slack() const;
    const BiPoly& current_key() const { return node.lv.back().phi; }
    Rational current_mu() const { return node.lv.back().mu; }
};

namespace {

Rational slope_at_zero(const MacLaneChain& ch, int k, const BiPoly& F, const BiPoly& phi, bool& exact) {
    auto cs = phi_expansion(F, phi);
    if (cs[0].is_zero()) {
        exact = true;
        return Rational::inf();
    }
    exact = false;
    return ch.value(k, cs[0]) - ch.value(k, cs[1]);
}

}  // namespace

void PlaceData::start() const {
    if (started) return;
    int k = chain.depth();
    bool ex = false;
    Rational mu = slope_at_zero(chain, k, F, key, ex);
    exact = ex;
    node = chain.extended(psi, key, ex ? Rational(0) : mu);
    if (ex) node.lv.back().mu = Rational::inf();
    started = true;
}

void PlaceData::refine_once() const {
    if (exact) return;
    int K = node.depth();
    Rational gamma = node.value(K, F);
    FPoly R = node.residual(K, F, gamma);
    size_t z = 0;
    while (z < R.size() && R[z].is_zero()) ++z;
    R.erase(R.begin(), R.begin() + long(z));
    if (fpoly::deg(R) != 1) fail(ErrorCode::ContractViolation, "refinement residual is not linear");
    FPoly ps = fpoly::monic(*node.F[K], R);
    BiPoly phi = node.lift_key(K, ps);
    bool ex = false;
    Rational mu = slope_at_zero(node, K - 1, F, phi, ex);
    if (ex) {
        node = node.replaced(phi, Rational(0));
        node.lv.back().mu = Rational::inf();
        exact = true;
        return;
    }
    if (mu <= current_mu()) fail(ErrorCode::ContractViolation, "refinement did not increase the slope");
    node = node.replaced(phi, mu);
}

Rational PlaceData::slack() const {
    Rational C(0);
    const auto& lv = chain.lv;
    for (size_t i = 0; i < lv.size(); ++i) {
        int next = i + 1 < lv.size() ? lv[i + 1].m : key.deg();
        C = C + Rational(next / lv[i].m - 1) * lv[i].mu;
    }
    return C;
}

namespace {

struct Leaf {
    MacLaneChain chain;
    FPoly psi;
    BiPoly key;
};

void explore(const MacLaneChain& ch, const BiPoly& f, std::vector<Leaf>& leaves) {
    int k = ch.depth();
    FPoly R;
    if (k == 0) {
        R = ch.residual(0, f, Rational(0));
    } else {
        R = ch.residual(k, f, ch.value(k, f));
        size_t z = 0;
        while (z < R.size() && R[z].is_zero()) ++z;
        R.erase(R.begin(), R.begin() + long(z));
    }
    const FiniteField& Fk = *ch.F[k];
    auto factors = factor_univariate(Fk, R);
    for (auto& fac : factors) {
        BiPoly phi = ch.lift_key(k, fac.poly);
        if (fac.mult == 1) {
            leaves.push_back({ch, fac.poly, phi});
            continue;
        }
        bool replace = k >= 1 && phi.deg() == ch.lv[k - 1].m;
        Rational thr = k == 0 ? Rational(0) : ch.value(k, phi);
        auto cs = phi_expansion(f, phi);
        std::vector<Rational> ys;
        for (auto& c : cs) ys.push_back(ch.value(k, c));
        int total = 0;
        int j0 = 0;
        if (ys[0].is_inf()) {
            // phi divides f exactly: it is a factor on its own.
            leaves.push_back({ch, fac.poly, phi});
            while (ys[j0].is_inf()) ++j0;
            total += j0;
        }
        auto sides = newton_polygon(ys);
        for (auto& s : sides) {
            Rational mu = -s.slope();
            if (mu <= thr) break;
            total += s.length();
            MacLaneChain child = replace ? ch.replaced(phi, mu) : ch.extended(fac.poly, phi, mu);
            explore(child, f, leaves);
        }
        if (total != fac.mult) fail(ErrorCode::ContractViolation, "principal polygon length mismatch");
    }
}

std::vector<std::vector<uint32_t>> sort_key(const BiPoly& phi) {
    // Negated non-leading coefficients; for x - c this is the root c.
    std::vector<std::vector<uint32_t>> k;
    for (int j = 0; j < phi.deg(); ++j) k.push_back((-phi.c[j]).c);
    return k;
}

}  // namespace

std::vector<std::string> Place::type_strings() const {
    std::vector<std::string> out;
    for (auto& k : type) out.push_back(base.infinite ? to_string(k, "u", "y") : to_string(k));
    return out;
}

std::vector<Place> decompose(const Model& model, const BasePrime& base) {
    uint32_t p = model->p;
    if (!base.infinite && (base.p.deg() < 1 || base.p.lc() != 1 || !is_irreducible(base.p)))
        fail(ErrorCode::InvalidInput, "base prime must be monic irreducible");
    const BiPoly& F = base.infinite ? model->f_inf : model->f;
    Poly pi = base.infinite ? Poly::x(p) : base.p;
    MacLaneChain root(p, pi);
    std::vector<Leaf> leaves;
    explore(root, F, leaves);

    Poly disc = base.infinite ? resultant_in_X(F, F.derivative()) : model->disc;
    int dv = valuation(disc, pi);

    std::vector<Place> places;
    int sum = 0;
    for (auto& L : leaves) {
        Place P;
        P.base = base;
        P.e = int(L.chain.ramification());
        P.f = L.chain.residue_degree() * fpoly::deg(L.psi);
        P.degree = P.f * base.degree();
        for (auto& lv : L.chain.lv) P.type.push_back(lv.phi);
        if (!P.type.empty() && L.key.deg() == L.chain.lv.back().m)
            P.type.back() = L.key;
        else
            P.type.push_back(L.key);
        auto d = std::make_shared<PlaceData>();
        d->model = model;
        d->infinite = base.infinite;
        d->F = F;
        d->pi = pi;
        d->chain = L.chain;
        d->psi = L.psi;
        d->key = L.key;
        d->disc_val = dv;
        P.data = d;
        P.lifted_factor = L.key;
        P.precision = 0;
        sum += P.e * P.f;
        places.push_back(std::move(P));
    }
    if (sum != model->n) fail(ErrorCode::ContractViolation, "sum of e*f differs from the degree");
    std::stable_sort(places.begin(), places.end(), [](const Place& a, const Place& b) {
        if (a.type.size() != b.type.size()) return a.type.size() < b.type.size();
        for (size_t i = 0; i < a.type.size(); ++i)
            if (a.type[i].deg() != b.type[i].deg()) return a.type[i].deg() < b.type[i].deg();
        for (size_t i = 0; i < a.type.size(); ++i) {
            auto ka = sort_key(a.type[i]), kb = sort_key(b.type[i]);
            if (ka != kb) return ka < kb;
        }
        return false;
    });
    for (size_t i = 0; i < places.size(); ++i) places[i].index = int(i);
    return places;
}

namespace {

// Refine the place until the key approximates the local factor modulo pi^N.
BiPoly approximant(const PlaceData& d, int N) {
    std::lock_guard<std::mutex> lock(d.mtx);
    d.start();
    Rational need = Rational(N) + d.slack();
    while (!d.exact && d.current_mu() < need) d.refine_once();
    BiPoly k = d.current_key();
    if (!d.exact) k = k.coeffs_mod(pow(d.pi, unsigned(N)));
    return k;
}

// v_pi of det of multiplication by H modulo Fh over A / pi^N; returns N if >= N.
int resultant_valuation(const BiPoly& H, const BiPoly& Fh, const Poly& pi, int N) {
    Poly mod = pow(pi, unsigned(N));
    int d = Fh.deg();
    uint32_t p = pi.p;
    std::vector<std::vector<Poly>> m;
    BiPoly row = divmod_monic(H, Fh).second.coeffs_mod(mod);
    for (int i = 0; i < d; ++i) {
        std::vector<Poly> r(d, Poly(p));
        for (int j = 0; j <= row.deg(); ++j) r[j] = row.c[j];
        m.push_back(r);
        BiPoly nxt = divmod_monic(row * BiPoly::X(p), Fh).second.coeffs_mod(mod);
        row = nxt;
    }
    int total = 0;
    std::vector<char> row_used(d, 0), col_used(d, 0);
    auto val = [&](const Poly& a) { return a.is_zero() ? N : std::min(N, valuation(a, pi)); };
    for (int step = 0; step < d; ++step) {
        int br = -1, bc = -1, bv = N;
        for (int i = 0; i < d; ++i) {
            if (row_used[i]) continue;
            for (int j = 0; j < d; ++j) {
                if (col_used[j]) continue;
                int v = val(m[i][j]);
                if (v < bv) { bv = v; br = i; bc = j; }
            }
        }
        if (br < 0) return N;
        total += bv;
        if (total >= N) return N;
        Poly pv = pow(pi, unsigned(bv));
        Poly unit = m[br][bc] / pv;
        Poly uinv = invmod(unit % mod, mod);
        for (int i = 0; i < d; ++i) {
            if (row_used[i] || i == br || m[i][bc].is_zero()) continue;
            Poly fac = ((m[i][bc] / pv) * uinv) % mod;
            for (int j = 0; j < d; ++j) {
                if (col_used[j] || m[br][j].is_zero()) continue;
                m[i][j] = (m[i][j] - fac * m[br][j]) % mod;
            }
        }
        row_used[br] = 1;
        col_used[bc] = 1;
    }
    return total;
}

// Rewrite H(t, x) at infinity: H = u^{-D} Ht(u, y). Returns Ht and D.
std::pair<BiPoly, int> to_infinity_chart(const BiPoly& H, int lambda) {
    int D = INT_MIN;
    for (int i = 0; i <= H.deg(); ++i)
        if (!H.c[i].is_zero()) D = std::max(D, H.c[i].deg() + lambda * i);
    BiPoly r(H.p);
    r.c.assign(H.c.size(), Poly(H.p));
    for (int i = 0; i <= H.deg(); ++i) {
        const Poly& c = H.c[i];
        if (c.is_zero()) continue;
        r.c[i] = c.reversed(c.deg()).shifted(D - c.deg() - lambda * i);
    }
    r.normalize();
    return {r, D};
}

int poly_valuation_resultant(const PlaceData& d, int e, int f, const BiPoly& H) {
    if (H.is_zero()) return kInfiniteValuation;
    int N = 2 * d.disc_val + 4;
    for (;;) {
        if (N > g_precision_cap) fail(ErrorCode::PrecisionCap, "valuation needs precision beyond the cap");
        BiPoly Fh = approximant(d, N);
        if (d.exact && divmod_monic(H, Fh).second.is_zero()) return kInfiniteValuation;
        if (Fh.deg() >= 1) {
            int r = resultant_valuation(H, Fh, d.pi, N);
            if (r < N - 2 || (d.exact && r < N)) {
                if (r % f != 0) fail(ErrorCode::ContractViolation, "resultant valuation not divisible by f");
                (void)e;
                return r / f;
            }
        }
        N *= 2;
    }
}

int poly_valuation_direct(const PlaceData& d, const BiPoly& H) {
    if (H.is_zero()) return kInfiniteValuation;
    std::lock_guard<std::mutex> lock(d.mtx);
    d.start();
    for (int iter = 0;; ++iter) {
        int K = d.node.depth();
        auto cs = phi_expansion(H, d.current_key());
        Rational v0 = cs[0].is_zero() ? Rational::inf() : d.node.value(K - 1, cs[0]);
        Rational rest = Rational::inf();
        if (!d.exact)
            for (int j = 1; j < int(cs.size()); ++j)
                if (!cs[j].is_zero()) rest = std::min(rest, d.node.value(K - 1, cs[j]) + d.current_mu() * Rational(j));
        if (v0 < rest) return int((v0 * Rational(d.node.E[K - 1])).n);
        if (d.exact) fail(ErrorCode::ContractViolation, "element vanishes at a place");
        if (Rational(g_precision_cap) < d.current_mu()) fail(ErrorCode::PrecisionCap, "valuation needs precision beyond the cap");
        d.refine_once();
    }
}

template <class PolyVal>
int element_valuation(const Place& P, const FFElement& b, PolyVal pv) {
    if (b.is_zero()) return kInfiniteValuation;
    auto [H, den] = b.cleared();
    const PlaceData& d = *P.data;
    if (!d.infinite) return pv(H) - P.e * valuation(den, d.pi);
    auto [Ht, D] = to_infinity_chart(H, d.model->lambda);
    return pv(Ht) - P.e * D + P.e * den.deg();
}

}  // namespace

const BiPoly& working_polynomial(const Place& place) { return place.data->F; }

Place lift_factor(const Place& place, int N) {
    if (N > g_precision_cap) fail(ErrorCode::PrecisionCap, "requested precision beyond the cap");
    Place r = place;
    if (N <= place.precision) return r;
    r.lifted_factor = approximant(*place.data, N);
    r.precision = N;
    return r;
}

int valuation_poly(const Place& place, const BiPoly& H) {
    const PlaceData& d = *place.data;
    BiPoly h = H.deg() >= d.model->n ? divmod_monic(H, d.model->f).second : H;
    FFElement b = FFElement::from_bipoly(d.model, h, Poly::constant(d.model->p, 1));
    return valuation(place, b);
}

int valuation_working(const Place& place, const BiPoly& H) {
    return poly_valuation_resultant(*place.data, place.e, place.f, H);
}

std::vector<uint32_t> residue_working(const Place& place, const BiPoly& H, int gamma) {
    const PlaceData& d = *place.data;
    std::lock_guard<std::mutex> lock(d.mtx);
    d.start();
    int k = d.chain.depth();
    Rational g(gamma, d.chain.ramification());
    while (!d.exact && d.current_mu() <= g) {
        if (Rational(g_precision_cap) < d.current_mu()) fail(ErrorCode::PrecisionCap, "residue needs precision beyond the cap");
        d.refine_once();
    }
    BiPoly a0 = divmod_monic(H, d.current_key()).second;
    const FiniteField& Fk = *d.node.F[k];
    int width = Fk.degree();
    int len = fpoly::deg(d.psi);
    std::vector<uint32_t> out(size_t(width * len), 0);
    if (a0.is_zero()) return out;
    FPoly R = d.node.residual(k, a0, g);
    if (int(R.size()) > len) fail(ErrorCode::ContractViolation, "residue polynomial too long");
    for (int i = 0; i < int(R.size()); ++i) {
        auto c = Fk.coords(R[i]);
        for (int j = 0; j < width; ++j) out[size_t(i * width + j)] = c[size_t(j)];
    }
    return out;
}

int valuation(const Place& place, const FFElement& b) {
    return element_valuation(place, b, [&](const BiPoly& H) {
        return poly_valuation_resultant(*place.data, place.e, place.f, H);
    });
}

int valuation_direct(const Place& place, const FFElement& b) {
    return element_valuation(place, b, [&](const BiPoly& H) { return poly_valuation_direct(*place.data, H); });
}

}  // namespace rr
