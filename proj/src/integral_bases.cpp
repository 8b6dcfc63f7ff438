#include "rr/integral_bases.hpp"

#include <algorithm>

#include "rr/field.hpp"
#include "rr/linalg.hpp"

namespace rr {

namespace {

constexpr long kBig = 1L << 40;
constexpr long kEnumerationBudget = 4000000;

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Poly uniformizer(const BasePrime& b) { return b.infinite ? Poly::x(b.p.p) : b.p; }

BiPoly one(uint32_t p) { return BiPoly::from_poly(Poly::constant(p, 1)); }

BiPoly x_power(uint32_t p, int i) {
    BiPoly r(p);
    r.c.assign(size_t(i + 1), Poly(p));
    r.c[size_t(i)] = Poly::constant(p, 1);
    return r;
}

// Reduce the coefficients below the leading one modulo m.
BiPoly reduce_lower(const BiPoly& h, const Poly& m) {
    BiPoly r = h;
    for (int j = 0; j < r.deg(); ++j) r.c[size_t(j)] = r.c[size_t(j)] % m;
    r.normalize();
    return r;
}

struct Atom {
    BiPoly poly;
    int deg = 0;
    std::vector<long> val;
};

class MaxMin {
public:
    MaxMin(const std::vector<Place>& places, const std::vector<int>& targets, int N)
        : places_(places), targets_(targets) {
        uint32_t p = places[0].base.p.p;
        n_ = working_polynomial(places[0]).deg();
        add_atom(BiPoly::X(p));
        for (auto& P : places) {
            for (auto& k : P.type) add_atom(k);
            add_atom(lift_factor(P, N).lifted_factor);
        }
    }

    LocalBasis run() {
        uint32_t p = places_[0].base.p.p;
        Poly pi = uniformizer(places_[0].base);
        LocalBasis lb;
        lb.base = places_[0].base;
        lb.h.push_back(one(p));
        lb.w.push_back(0);
        for (int i = 1; i < n_; ++i) {
            best_w_ = -kBig;
            best_.clear();
            std::vector<int> cnt(atoms_.size(), 0);
            std::vector<long> acc(places_.size(), 0);
            budget_ = kEnumerationBudget;
            search(0, i, cnt, acc);
            BiPoly h = one(p);
            for (size_t a = 0; a < atoms_.size(); ++a)
                for (int k = 0; k < best_[a]; ++k) h = h * atoms_[a].poly;
            int w = int(best_w_);
            h = w > 0 ? reduce_lower(h, pow(pi, unsigned(w))) : x_power(p, i);
            lb.h.push_back(h);
            lb.w.push_back(w);
        }
        return lb;
    }

private:
    const std::vector<Place>& places_;
    const std::vector<int>& targets_;
    int n_ = 0;
    std::vector<Atom> atoms_;
    long best_w_ = 0;
    std::vector<int> best_;
    long budget_ = 0;

    void add_atom(const BiPoly& a) {
        if (a.deg() < 1 || a.deg() >= n_) return;
        for (auto& b : atoms_)
            if (b.poly == a) return;
        Atom t;
        t.poly = a;
        t.deg = a.deg();
        for (auto& P : places_) {
            int v = valuation_working(P, a);
            t.val.push_back(v == kInfiniteValuation ? kBig : long(v));
        }
        atoms_.push_back(std::move(t));
    }

    void search(size_t a, int remaining, std::vector<int>& cnt, std::vector<long>& acc) {
        if (budget_ <= 0) return;
        if (remaining == 0) {
            --budget_;
            long w = kBig;
            for (size_t q = 0; q < places_.size(); ++q)
                w = std::min(w, floor_div(acc[q] + targets_[q], places_[q].e));
            if (w > best_w_) {
                best_w_ = w;
                best_ = cnt;
            }
            return;
        }
        if (a == atoms_.size()) return;
        const Atom& A = atoms_[a];
        int kmax = remaining / A.deg;
        for (int k = kmax; k >= 0; --k) {
            cnt[a] = k;
            for (size_t q = 0; q < places_.size(); ++q) acc[q] += long(k) * A.val[q];
            search(a + 1, remaining - k * A.deg, cnt, acc);
            for (size_t q = 0; q < places_.size(); ++q) acc[q] -= long(k) * A.val[q];
        }
        cnt[a] = 0;
    }
};

bool members(const std::vector<Place>& places, const std::vector<int>& targets, const LocalBasis& b) {
    for (size_t i = 0; i < b.h.size(); ++i)
        for (size_t q = 0; q < places.size(); ++q) {
            int v = valuation_working(places[q], b.h[i]);
            if (v != kInfiniteValuation && long(v) - long(places[q].e) * b.w[i] < -targets[q]) return false;
        }
    return true;
}

int disc_valuation(const BiPoly& F, const Poly& pi) {
    Poly d = resultant_in_X(F, F.derivative());
    return d.is_zero() ? 0 : valuation(d, pi);
}

}  // namespace

bool local_basis_saturated(const std::vector<Place>& places, const std::vector<int>& targets, const LocalBasis& b) {
    uint32_t p = places[0].base.p.p;
    Poly pi = uniformizer(places[0].base);
    int n = int(b.h.size());
    int dp = pi.deg();
    int W = b.w.back();
    std::vector<BiPoly> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < dp; ++j)
            gens.push_back(b.h[size_t(i)].scaled(Poly::constant(p, 1).shifted(j) * pow(pi, unsigned(W - b.w[size_t(i)]))));
    size_t N = gens.size();
    // current subspace of coefficient vectors
    std::vector<std::vector<uint32_t>> S;
    for (size_t k = 0; k < N; ++k) {
        std::vector<uint32_t> v(N, 0);
        v[k] = 1;
        S.push_back(v);
    }
    auto combine = [&](const std::vector<uint32_t>& c) {
        BiPoly g(p);
        for (size_t k = 0; k < N; ++k)
            if (c[k]) g += gens[k].scaled(Poly::constant(p, c[k]));
        return g;
    };
    for (size_t q = 0; q < places.size() && !S.empty(); ++q) {
        int e = places[q].e;
        int T = e * W - targets[q] + e;
        for (int gamma = T - e; gamma < T && !S.empty(); ++gamma) {
            std::vector<std::vector<uint32_t>> res;
            for (auto& s : S) res.push_back(residue_working(places[q], combine(s), gamma));
            size_t rows = res[0].size();
            MatFp m(rows, std::vector<uint32_t>(S.size(), 0));
            for (size_t c = 0; c < S.size(); ++c)
                for (size_t r = 0; r < rows; ++r) m[r][c] = res[c][r];
            auto ker = kernel_fp(m, p, int(S.size()));
            std::vector<std::vector<uint32_t>> next;
            PrimeField Fp(p);
            for (auto& kv : ker) {
                std::vector<uint32_t> v(N, 0);
                for (size_t l = 0; l < S.size(); ++l)
                    if (kv[l])
                        for (size_t k = 0; k < N; ++k) v[k] = Fp.add(v[k], Fp.mul(kv[l], S[l][k]));
                next.push_back(v);
            }
            S = std::move(next);
        }
    }
    return S.empty();
}

LocalBasis maxmin_local(const std::vector<Place>& places, const std::vector<int>& targets) {
    if (places.empty() || places.size() != targets.size())
        fail(ErrorCode::InvalidInput, "maxmin needs one target per place");
    for (int t : targets)
        if (t < 0) fail(ErrorCode::InvalidInput, "maxmin targets must be nonnegative");
    const BiPoly& F = working_polynomial(places[0]);
    int n = F.deg();
    Poly pi = uniformizer(places[0].base);
    int tmax = *std::max_element(targets.begin(), targets.end());
    int N = disc_valuation(F, pi) + n + 2 + tmax;
    for (int attempt = 0; attempt < 3; ++attempt, N *= 2) {
        if (N > precision_cap()) break;
        LocalBasis lb = MaxMin(places, targets, N).run();
        if (members(places, targets, lb) && local_basis_saturated(places, targets, lb)) return lb;
    }
    fail(ErrorCode::MaxMinIncomplete,
         "MaxMin candidates do not generate the local ideal at " + places[0].base.center());
}

namespace {

// Hermite reduction: the coefficient of x^j in g_i is reduced modulo den_i / den_j.
void hermite_reduce(std::vector<BiPoly>& g, const std::vector<Poly>& den) {
    for (size_t i = 1; i < g.size(); ++i) {
        g[i] = reduce_lower(g[i], den[i]);
        for (int j = int(i) - 1; j >= 0; --j) {
            Poly r = den[i] / den[size_t(j)];
            Poly c = g[i].coef(j);
            if (c.is_zero() || c.deg() < r.deg()) continue;
            Poly a = c / r;
            g[i] -= g[size_t(j)].scaled(a * r);
        }
        g[i].normalize();
    }
}

Poly crt(const std::vector<std::pair<Poly, Poly>>& rm, uint32_t p) {
    Poly x(p), m = Poly::constant(p, 1);
    for (auto& [r, mi] : rm) {
        if (mi.deg() < 1) continue;
        Poly diff = (r - x) % mi;
        Poly k = (diff * invmod(m % mi, mi)) % mi;
        x = x + m * k;
        m = m * mi;
    }
    return m.deg() < 1 ? x : x % m;
}

}  // namespace

std::vector<FFElement> TriangularBasisFinite::elements(const Model& m) const {
    std::vector<FFElement> out;
    for (size_t i = 0; i < g.size(); ++i) out.push_back(FFElement::from_bipoly(m, g[i], den[i]).scaled(q));
    return out;
}

FFElement from_infinity_chart(const Model& m, const BiPoly& h, int s) {
    uint32_t p = m->p;
    FFElement r(m);
    FFElement xp = FFElement::from_rat(m, RatFunc::constant(p, 1));
    FFElement x = FFElement::x(m);
    for (int b = 0; b <= h.deg(); ++b) {
        const Poly& c = h.c[size_t(b)];
        if (!c.is_zero()) {
            RatFunc cb = RatFunc(c.reversed(c.deg())) * RatFunc::t_power(p, s - c.deg() - m->lambda * b);
            r = r + xp.scaled(cb);
        }
        xp = xp * x;
    }
    return r;
}

std::vector<FFElement> TriangularBasisInfinity::elements(const Model& model) const {
    std::vector<FFElement> out;
    for (size_t i = 0; i < h.size(); ++i) out.push_back(from_infinity_chart(model, h[i], mi[i] - m));
    return out;
}

TriangularBasisFinite triangular_basis_finite(const PlaceTable& table, const Divisor& D) {
    return triangular_basis_finite(table, D, normalize(table, D));
}

TriangularBasisInfinity triangular_basis_infinity(const PlaceTable& table, const Divisor& D) {
    return triangular_basis_infinity(table, D, normalize(table, D));
}

TriangularBasisFinite triangular_basis_finite(const PlaceTable& table, const Divisor& D, const NormalizationData& nd) {
    const Model& model = table.model();
    uint32_t p = model->p;
    int n = model->n;
    std::vector<BasePrime> primes = table.discriminant_primes();
    for (auto& b : D.support_primes())
        if (!b.infinite) primes.push_back(b);
    std::sort(primes.begin(), primes.end(), base_prime_less);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<LocalBasis> locals;
    TriangularBasisFinite tb;
    tb.q = nd.q_I;
    for (auto& bp : primes) {
        const auto& ps = table.over(bp);
        std::vector<int> targets;
        for (auto& P : ps) targets.push_back(nd.star.at(key_of(P)));
        // k[t][x] is already maximal at q when v_q(disc) < 2
        bool trivial = std::all_of(targets.begin(), targets.end(), [](int t) { return t == 0; }) &&
                       valuation(model->disc, bp.p) < 2;
        if (trivial) continue;
        locals.push_back(maxmin_local(ps, targets));
        tb.primes.push_back(bp);
    }
    tb.g.push_back(one(p));
    tb.den.push_back(Poly::constant(p, 1));
    for (int i = 1; i < n; ++i) {
        Poly den = Poly::constant(p, 1);
        std::vector<Poly> mods;
        for (auto& lb : locals) {
            mods.push_back(pow(lb.base.p, unsigned(lb.w[size_t(i)])));
            den = den * mods.back();
        }
        BiPoly g = x_power(p, i);
        for (int j = 0; j < i; ++j) {
            std::vector<std::pair<Poly, Poly>> rm;
            for (size_t l = 0; l < locals.size(); ++l) rm.push_back({locals[l].h[size_t(i)].coef(j), mods[l]});
            g.c[size_t(j)] = crt(rm, p);
        }
        g.normalize();
        tb.g.push_back(g);
        tb.den.push_back(den);
    }
    hermite_reduce(tb.g, tb.den);
    for (auto& d : tb.den) tb.delta += d.deg();
    tb.exp = tb.den.back().deg();
    return tb;
}

TriangularBasisInfinity triangular_basis_infinity(const PlaceTable& table, const Divisor& D, const NormalizationData& nd) {
    (void)D;
    const Model& model = table.model();
    uint32_t p = model->p;
    const auto& ps = table.at_infinity();
    std::vector<int> targets;
    for (auto& P : ps) targets.push_back(nd.star.at(key_of(P)));
    LocalBasis lb = maxmin_local(ps, targets);
    TriangularBasisInfinity tb;
    tb.m = nd.m_inf;
    tb.mi = lb.w;
    std::vector<Poly> den;
    for (int w : lb.w) den.push_back(pow(Poly::x(p), unsigned(w)));
    tb.h = lb.h;
    hermite_reduce(tb.h, den);
    for (int w : tb.mi) tb.delta += w;
    tb.exp = tb.mi.back();
    return tb;
}

}  // namespace rr
