#include "rr/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "rr/error.hpp"
#include "rr/linalg.hpp"

namespace rr {

// ---------------------------------------------------------------- FiniteField

FiniteField::FiniteField(uint32_t p, Poly modulus) : p_(p), deg_(modulus.deg()), mod_(std::move(modulus)) {
    if (!is_prime(p)) fail(ErrorCode::InvalidInput, "characteristic " + std::to_string(p) + " is not prime");
    if (deg_ < 1 || mod_.lc() != 1) fail(ErrorCode::InvalidInput, "field modulus must be monic of positive degree");
}

Field FiniteField::prime(uint32_t p) {
    static std::mutex mu;
    static std::map<uint32_t, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    Field f = std::make_shared<const FiniteField>(p, Poly::x(p));
    cache.emplace(p, f);
    return f;
}

uint64_t FiniteField::order() const {
    uint64_t q = 1;
    for (int i = 0; i < deg_; ++i) {
        if (q > (uint64_t(1) << 62) / p_) return uint64_t(1) << 63;
        q *= p_;
    }
    return q;
}

FElem FiniteField::gen() const { return reduce(Poly::x(p_)); }

FElem FiniteField::reduce(const Poly& a) const {
    if (deg_ == 1) {
        uint32_t root = (p_ - mod_.c[0] % p_) % p_;
        return Poly::constant(p_, a.eval(root));
    }
    return a % mod_;
}

FElem FiniteField::mul(const FElem& a, const FElem& b) const {
    if (deg_ == 1) {
        if (a.is_zero() || b.is_zero()) return zero();
        return Poly::constant(p_, uint64_t(a.c[0]) * b.c[0] % p_);
    }
    return (a * b) % mod_;
}

FElem FiniteField::inv(const FElem& a) const {
    if (a.is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero field element");
    if (deg_ == 1) return Poly::constant(p_, PrimeField(p_).inv(a.c[0]));
    return invmod(a, mod_);
}

FElem FiniteField::pow(const FElem& a, uint64_t e) const {
    FElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

FElem FiniteField::pth_root(const FElem& a) const {
    FElem r = a;
    for (int i = 0; i + 1 < deg_; ++i) r = frobenius(r);
    return r;
}

std::vector<uint32_t> FiniteField::coords(const FElem& a) const {
    std::vector<uint32_t> v(deg_, 0);
    for (size_t i = 0; i < a.c.size() && int(i) < deg_; ++i) v[i] = a.c[i];
    return v;
}

FElem FiniteField::element(uint64_t idx) const {
    std::vector<uint32_t> v(deg_, 0);
    for (int i = 0; i < deg_ && idx; ++i) {
        v[i] = uint32_t(idx % p_);
        idx /= p_;
    }
    return from_coords(v);
}

// ---------------------------------------------------------------- FPoly

namespace fpoly {

void normalize(FPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const FPoly& a) { return int(a.size()) - 1; }

FPoly from_poly(const FiniteField& F, const Poly& a) {
    FPoly r;
    for (uint32_t c : a.c) r.push_back(F.from_int(c));
    normalize(r);
    return r;
}

FPoly add(const FiniteField& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    normalize(r);
    return r;
}

FPoly sub(const FiniteField& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    normalize(r);
    return r;
}

FPoly mul(const FiniteField& F, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    if (F.degree() == 1) {
        Poly pa(F.p()), pb(F.p());
        for (auto& e : a) pa.c.push_back(e.coef(0));
        for (auto& e : b) pb.c.push_back(e.coef(0));
        pa.normalize();
        pb.normalize();
        return from_poly(F, pa * pb);
    }
    // Multiply unreduced products and reduce each output coefficient once.
    std::vector<Poly> acc(a.size() + b.size() - 1, Poly(F.p()));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) acc[i + j] += a[i] * b[j];
    }
    FPoly r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = F.reduce(acc[i]);
    normalize(r);
    return r;
}

FPoly scale(const FiniteField& F, const FPoly& a, const FElem& s) {
    FPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
    normalize(r);
    return r;
}

std::pair<FPoly, FPoly> divmod(const FiniteField& F, const FPoly& a, const FPoly& b) {
    if (b.empty()) fail(ErrorCode::InvalidInput, "polynomial division by zero");
    FPoly r = a;
    normalize(r);
    int db = deg(b);
    if (deg(r) < db) return {{}, r};
    FElem il = F.inv(b.back());
    FPoly q(size_t(deg(r) - db + 1), F.zero());
    for (int i = deg(r); i >= db; --i) {
        if (r[i].is_zero()) continue;
        FElem m = F.mul(r[i], il);
        q[i - db] = m;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(m, b[j]));
    }
    normalize(q);
    normalize(r);
    return {q, r};
}

FPoly rem(const FiniteField& F, const FPoly& a, const FPoly& b) { return divmod(F, a, b).second; }

FPoly monic(const FiniteField& F, const FPoly& a) {
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

FPoly gcd(const FiniteField& F, FPoly a, FPoly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        FPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

FPoly derivative(const FiniteField& F, const FPoly& a) {
    FPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], F.from_int(int64_t(i % F.p()))));
    normalize(r);
    return r;
}

FPoly powmod(const FiniteField& F, const FPoly& a, uint64_t e, const FPoly& m) {
    FPoly r = rem(F, {F.one()}, m), b = rem(F, a, m);
    while (e) {
        if (e & 1) r = rem(F, mul(F, r, b), m);
        e >>= 1;
        if (e) b = rem(F, mul(F, b, b), m);
    }
    return r;
}

FPoly frobenius_mod(const FiniteField& F, const FPoly& a, const FPoly& m) {
    FPoly r = rem(F, a, m);
    for (int i = 0; i < F.degree(); ++i) r = powmod(F, r, F.p(), m);
    return r;
}

FElem eval(const FiniteField& F, const FPoly& a, const FElem& v) {
    FElem r = F.zero();
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, v), a[i]);
    return r;
}

bool less(const FPoly& a, const FPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i].c;
        const auto& y = b[i].c;
        size_t n = std::max(x.size(), y.size());
        for (size_t k = 0; k < n; ++k) {
            uint32_t u = k < x.size() ? x[k] : 0, w = k < y.size() ? y[k] : 0;
            if (u != w) return u < w;
        }
    }
    return false;
}

std::string to_string(const FiniteField& F, const FPoly& a, const std::string& var, const std::string& gen) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(a); i >= 0; --i) {
        if (a[i].is_zero()) continue;
        std::string cs = to_string(a[i], gen);
        bool simple = a[i].deg() == 0;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << (simple ? cs : "(" + cs + ")");
            continue;
        }
        if (!a[i].is_one()) os << (simple ? cs : "(" + cs + ")") << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    (void)F;
    return os.str();
}

}  // namespace fpoly

// ---------------------------------------------------------------- factorization

namespace {

uint64_t g_seed = 0x5eed1234abcdULL;
std::mutex g_seed_mu;

using namespace fpoly;

FPoly pth_root_poly(const FiniteField& F, const FPoly& c) {
    FPoly r;
    uint32_t p = F.p();
    for (size_t i = 0; i < c.size(); i += p) r.push_back(F.pth_root(c[i]));
    normalize(r);
    return r;
}

void squarefree(const FiniteField& F, const FPoly& f, int mult, std::vector<Factor>& out) {
    if (deg(f) <= 0) return;
    FPoly d = derivative(F, f);
    FPoly c = gcd(F, f, d);
    FPoly w = divmod(F, f, c).first;
    int i = 1;
    while (deg(w) > 0) {
        FPoly y = gcd(F, w, c);
        FPoly z = divmod(F, w, y).first;
        if (deg(z) > 0) out.push_back({monic(F, z), i * mult});
        ++i;
        w = y;
        c = divmod(F, c, y).first;
    }
    if (deg(c) > 0) squarefree(F, pth_root_poly(F, c), mult * int(F.p()), out);
}

std::vector<std::pair<FPoly, int>> distinct_degree(const FiniteField& F, FPoly g) {
    std::vector<std::pair<FPoly, int>> out;
    FPoly X = {F.zero(), F.one()};
    FPoly h = X;
    for (int i = 1; 2 * i <= deg(g); ++i) {
        h = frobenius_mod(F, h, g);
        FPoly d = gcd(F, g, sub(F, h, X));
        if (deg(d) > 0) {
            out.push_back({d, i});
            g = divmod(F, g, d).first;
            h = rem(F, h, g);
        }
    }
    if (deg(g) > 0) out.push_back({g, deg(g)});
    return out;
}

void equal_degree(const FiniteField& F, const FPoly& g, int d, std::mt19937_64& rng, std::vector<FPoly>& out) {
    int n = deg(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    uint32_t p = F.p();
    int k = F.degree() * d;  // splitting works in F_{p^k}
    for (;;) {
        FPoly a;
        for (int i = 0; i < n; ++i) {
            std::vector<uint32_t> co(F.degree());
            for (auto& v : co) v = uint32_t(rng() % p);
            a.push_back(F.from_coords(co));
        }
        normalize(a);
        if (deg(a) <= 0) continue;
        FPoly b;
        if (p == 2) {
            FPoly t = a;
            b = a;
            for (int j = 1; j < k; ++j) {
                t = rem(F, mul(F, t, t), g);
                b = add(F, b, t);
            }
        } else {
            FPoly t = a, s = a;
            for (int j = 1; j < k; ++j) {
                t = powmod(F, t, p, g);
                s = rem(F, mul(F, s, t), g);
            }
            b = powmod(F, s, (p - 1) / 2, g);
            b = sub(F, b, {F.one()});
        }
        FPoly e = gcd(F, g, b);
        if (deg(e) > 0 && deg(e) < n) {
            equal_degree(F, e, d, rng, out);
            equal_degree(F, divmod(F, g, e).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

void set_factor_seed(uint64_t seed) {
    std::lock_guard<std::mutex> lock(g_seed_mu);
    g_seed = seed;
}

uint64_t factor_seed() {
    std::lock_guard<std::mutex> lock(g_seed_mu);
    return g_seed;
}

std::vector<Factor> factor_univariate(const FiniteField& F, const FPoly& g0) {
    FPoly g = g0;
    normalize(g);
    if (g.empty()) fail(ErrorCode::InvalidInput, "cannot factor the zero polynomial");
    std::vector<Factor> out;
    if (deg(g) == 0) return out;
    std::vector<Factor> sf;
    squarefree(F, monic(F, g), 1, sf);
    std::mt19937_64 rng(factor_seed());
    for (auto& [h, m] : sf) {
        for (auto& [part, d] : distinct_degree(F, h)) {
            std::vector<FPoly> irr;
            equal_degree(F, monic(F, part), d, rng, irr);
            for (auto& q : irr) out.push_back({monic(F, q), m});
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (less(a.poly, b.poly)) return true;
        if (less(b.poly, a.poly)) return false;
        return a.mult < b.mult;
    });
    return out;
}

std::vector<std::pair<Poly, int>> factor_poly(const Poly& g) {
    Field F = FiniteField::prime(g.p);
    std::vector<std::pair<Poly, int>> out;
    for (auto& f : factor_univariate(*F, fpoly::from_poly(*F, g))) {
        Poly q(g.p);
        for (auto& e : f.poly) q.c.push_back(e.coef(0));
        q.normalize();
        out.push_back({q, f.mult});
    }
    return out;
}

bool is_irreducible(const FiniteField& F, const FPoly& g) {
    if (fpoly::deg(g) < 1) return false;
    auto fs = factor_univariate(F, g);
    return fs.size() == 1 && fs[0].mult == 1;
}

bool is_irreducible(const Poly& g) {
    if (g.deg() < 1) return false;
    auto fs = factor_poly(g);
    return fs.size() == 1 && fs[0].second == 1;
}

// ---------------------------------------------------------------- towers

ExtensionField make_extension(Field base, FPoly modulus) {
    fpoly::normalize(modulus);
    if (modulus.empty() || !modulus.back().is_one())
        fail(ErrorCode::InvalidInput, "extension modulus must be monic");
    if (!is_irreducible(*base, modulus)) fail(ErrorCode::NotIrreducible, "extension modulus is reducible");
    return {std::move(base), std::move(modulus)};
}

namespace {

std::vector<uint32_t> tower_coords(const ExtensionField& E, const TowerElem& a) {
    int db = E.base->degree(), de = E.degree();
    std::vector<uint32_t> v(size_t(db * de), 0);
    for (int j = 0; j < de && j < int(a.size()); ++j) {
        auto c = E.base->coords(a[j]);
        for (int i = 0; i < db; ++i) v[j * db + i] = c[i];
    }
    return v;
}

TowerElem tower_from_coords(const ExtensionField& E, const std::vector<uint32_t>& v) {
    int db = E.base->degree(), de = E.degree();
    TowerElem a;
    for (int j = 0; j < de; ++j) {
        std::vector<uint32_t> c(v.begin() + j * db, v.begin() + (j + 1) * db);
        a.push_back(E.base->from_coords(c));
    }
    fpoly::normalize(a);
    return a;
}

}  // namespace

FElem Flattening::embed(const TowerElem& a) const {
    auto v = matvec_fp(from_tower, tower_coords(tower, a), flat->p());
    return flat->from_coords(v);
}

TowerElem Flattening::section(const FElem& a) const {
    auto v = matvec_fp(to_tower, flat->coords(a), flat->p());
    return tower_from_coords(tower, v);
}

FElem Flattening::embed_base(const FElem& b) const {
    TowerElem t = {b};
    fpoly::normalize(t);
    return embed(t);
}

FElem Flattening::generator_image() const {
    if (tower.degree() == 1) {
        // Y is the root of the linear modulus, an element of the base.
        return embed_base(tower.base->neg(tower.modulus[0]));
    }
    TowerElem y = {tower.base->zero(), tower.base->one()};
    return embed(y);
}

Flattening flatten_tower(const Field& F) {
    Flattening fl;
    fl.flat = F;
    fl.tower = {F, {F->zero(), F->one()}};
    fpoly::normalize(fl.tower.modulus);
    int d = F->degree();
    fl.to_tower.assign(d, std::vector<uint32_t>(d, 0));
    for (int i = 0; i < d; ++i) fl.to_tower[i][i] = 1;
    fl.from_tower = fl.to_tower;
    fl.gamma_c = F->zero();
    return fl;
}

Flattening flatten_tower(const ExtensionField& E) {
    const FiniteField& B = *E.base;
    uint32_t p = B.p();
    int D = E.absolute_degree();
    if (E.degree() == 1) {
        Flattening fl = flatten_tower(E.base);
        fl.tower = E;
        return fl;
    }
    auto mulmod = [&](const TowerElem& a, const TowerElem& b) { return fpoly::rem(B, fpoly::mul(B, a, b), E.modulus); };
    // Candidate primitive elements: Y + c*w for c = 0, 1, ..., then Y + a for all base elements a.
    std::vector<FElem> shifts;
    FElem w = B.gen();
    for (uint32_t c = 0; c < p; ++c) shifts.push_back(B.mul(B.from_int(c), w));
    for (uint64_t i = 0; i < B.order() && i < 4096; ++i) shifts.push_back(B.element(i));
    for (const FElem& c : shifts) {
        TowerElem gamma = {c, B.one()};
        fpoly::normalize(gamma);
        MatFp cols;  // cols[j] = coords of gamma^j
        TowerElem pw = {B.one()};
        for (int j = 0; j <= D; ++j) {
            cols.push_back(tower_coords(E, pw));
            pw = mulmod(pw, gamma);
        }
        MatFp m(D, std::vector<uint32_t>(D));
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) m[i][j] = cols[j][i];
        auto inv = inverse_fp(m, p);
        if (!inv) continue;
        // gamma^D = sum a_j gamma^j
        auto a = matvec_fp(*inv, cols[D], p);
        Poly mod(p);
        mod.c.assign(D + 1, 0);
        PrimeField Fp(p);
        for (int j = 0; j < D; ++j) mod.c[j] = Fp.neg(a[j]);
        mod.c[D] = 1;
        mod.normalize();
        Flattening fl;
        fl.flat = std::make_shared<const FiniteField>(p, mod);
        fl.tower = E;
        fl.to_tower = m;
        fl.from_tower = *inv;
        fl.gamma_c = c;
        return fl;
    }
    fail(ErrorCode::InvalidInput, "no primitive element found while flattening tower");
}

}  // namespace rr
