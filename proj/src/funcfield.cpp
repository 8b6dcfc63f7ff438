#include "rr/funcfield.hpp"

#include <algorithm>
#include <sstream>

#include "rr/error.hpp"
#include "rr/field.hpp"

namespace rr {

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& n, const Poly& d) {
    if (d.is_zero()) fail(ErrorCode::InvalidInput, "rational function with zero denominator");
    uint32_t p = d.p;
    if (n.is_zero()) {
        num = Poly(p);
        den = Poly::constant(p, 1);
        return;
    }
    Poly g = gcd(n, d);
    num = g.is_one() ? n : n / g;
    den = g.is_one() ? d : d / g;
    num.p = den.p = p;
    uint32_t il = PrimeField(p).inv(den.lc());
    if (il != 1) {
        num = num.scaled(il);
        den = den.scaled(il);
    }
}

RatFunc RatFunc::t_power(uint32_t p, int k) {
    if (k >= 0) return RatFunc(Poly::monomial(p, 1, k));
    return RatFunc(Poly::constant(p, 1), Poly::monomial(p, 1, -k));
}

int RatFunc::valuation(const Poly& q) const {
    if (is_zero()) fail(ErrorCode::InvalidInput, "valuation of zero");
    return rr::valuation(num, q) - rr::valuation(den, q);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero rational function");
    return RatFunc(den, num);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den == b.den) return RatFunc(a.num + b.num, a.den);
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.prime() ? a.prime() : b.prime());
    // Cross-cancel before multiplying.
    Poly g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
    Poly an = g1.is_one() ? a.num : a.num / g1, bd = g1.is_one() ? b.den : b.den / g1;
    Poly bn = g2.is_one() ? b.num : b.num / g2, ad = g2.is_one() ? a.den : a.den / g2;
    RatFunc r;
    r.num = an * bn;
    r.den = ad * bd;
    uint32_t il = PrimeField(r.den.p).inv(r.den.lc());
    if (il != 1) {
        r.num = r.num.scaled(il);
        r.den = r.den.scaled(il);
    }
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }

RatFunc RatFunc::inverted_variable() const {
    if (is_zero()) return *this;
    int dn = num.deg(), dd = den.deg();
    Poly n = num.reversed(dn), d = den.reversed(dd);
    if (dd >= dn)
        n = n.shifted(dd - dn);
    else
        d = d.shifted(dn - dd);
    return RatFunc(n, d);
}

std::string to_string(const RatFunc& a, const std::string& var) {
    if (a.is_poly()) return to_string(a.num, var);
    std::string n = to_string(a.num, var), d = to_string(a.den, var);
    bool nsimple = a.num.c.size() <= 1 || a.num.low_deg() == a.num.deg();
    bool dsimple = a.den.low_deg() == a.den.deg() && a.den.lc() == 1;
    std::string ns = nsimple && n[0] != '-' ? n : "(" + n + ")";
    if (nsimple && n[0] == '-') ns = n.find(' ') == std::string::npos ? n : "(" + n + ")";
    return ns + "/" + (dsimple ? d : "(" + d + ")");
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(uint32_t prime, std::vector<Poly> coeffs) : p(prime), c(std::move(coeffs)) {
    for (auto& q : c) q.p = p;
    normalize();
}

void BiPoly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int BiPoly::deg_t() const {
    int d = -1;
    for (auto& q : c) d = std::max(d, q.deg());
    return d;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    if (!p) p = o.p;
    if (o.c.size() > c.size()) c.resize(o.c.size(), Poly(p));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    normalize();
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    if (!p) p = o.p;
    if (o.c.size() > c.size()) c.resize(o.c.size(), Poly(p));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    normalize();
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    uint32_t p = a.p ? a.p : b.p;
    BiPoly r(p);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Poly(p));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            if (!b.c[j].is_zero()) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& q : r.c) q = -q;
    return r;
}

BiPoly BiPoly::scaled(const Poly& s) const {
    BiPoly r(p);
    if (s.is_zero()) return r;
    for (auto& q : c) r.c.push_back(q * s);
    r.normalize();
    return r;
}

BiPoly BiPoly::derivative() const {
    BiPoly r(p);
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i].scaled(uint32_t(i % p)));
    r.normalize();
    return r;
}

BiPoly BiPoly::coeffs_mod(const Poly& m) const {
    BiPoly r(p);
    for (auto& q : c) r.c.push_back(q % m);
    r.normalize();
    return r;
}

Poly BiPoly::eval_x(const Poly& v) const {
    Poly r(p);
    for (size_t i = c.size(); i-- > 0;) r = r * v + c[i];
    return r;
}

Poly BiPoly::eval_t(uint32_t v) const {
    Poly r(p);
    for (auto& q : c) r.c.push_back(q.eval(v));
    r.normalize();
    return r;
}

Poly BiPoly::content() const {
    Poly g(p);
    for (auto& q : c) {
        g = gcd(g, q);
        if (g.is_one()) break;
    }
    return g;
}

std::pair<BiPoly, BiPoly> divmod_monic(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero() || !b.lc().is_one()) fail(ErrorCode::InvalidInput, "divisor must be monic in X");
    uint32_t p = b.p;
    BiPoly r = a;
    r.p = p;
    BiPoly q(p);
    int db = b.deg();
    if (r.deg() < db) return {q, r};
    q.c.assign(size_t(r.deg() - db + 1), Poly(p));
    for (int i = r.deg(); i >= db; --i) {
        if (i >= int(r.c.size()) || r.c[i].is_zero()) continue;
        Poly m = r.c[i];
        q.c[i - db] = m;
        for (int j = 0; j <= db; ++j)
            if (!b.c[j].is_zero()) r.c[i - db + j] -= m * b.c[j];
    }
    q.normalize();
    r.normalize();
    return {q, r};
}

BiPoly prem(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidInput, "pseudo-remainder by zero");
    uint32_t p = b.p;
    BiPoly r = a;
    r.p = p;
    int db = b.deg();
    if (r.deg() < db) return r;
    int steps = r.deg() - db + 1;
    const Poly& lb = b.lc();
    while (!r.is_zero() && r.deg() >= db) {
        Poly lr = r.lc();
        int sh = r.deg() - db;
        BiPoly nr(p);
        nr.c.assign(r.c.size(), Poly(p));
        for (size_t i = 0; i < r.c.size(); ++i) nr.c[i] = r.c[i] * lb;
        for (int j = 0; j <= db; ++j) nr.c[j + sh] -= lr * b.c[j];
        nr.normalize();
        r = std::move(nr);
        --steps;
    }
    if (steps > 0) r = r.scaled(pow(lb, unsigned(steps)));
    return r;
}

BiPoly div_exact(const BiPoly& a, const Poly& d) {
    if (d.is_one()) return a;
    BiPoly r(a.p);
    for (auto& q : a.c) {
        auto [qq, rem] = divmod(q, d);
        if (!rem.is_zero()) fail(ErrorCode::ContractViolation, "inexact division of bivariate polynomial");
        r.c.push_back(qq);
    }
    r.normalize();
    return r;
}

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorCode::ContractViolation, "inexact division in subresultant sequence");
    return q;
}

}  // namespace

Poly resultant_in_X(const BiPoly& h, const BiPoly& g) {
    uint32_t p = h.p ? h.p : g.p;
    if (h.deg() <= 0 && g.deg() <= 0) fail(ErrorCode::InvalidInput, "resultant of two X-constant polynomials");
    if (h.is_zero() || g.is_zero()) return Poly(p);
    BiPoly A = h, B = g;
    A.p = B.p = p;
    int s = 1;
    if (A.deg() < B.deg()) {
        std::swap(A, B);
        if ((A.deg() & 1) && (B.deg() & 1)) s = -s;
    }
    if (B.deg() == 0) {
        Poly r = pow(B.lc(), unsigned(A.deg()));
        return s < 0 ? -r : r;
    }
    Poly gg = Poly::constant(p, 1), hh = Poly::constant(p, 1);
    for (;;) {
        int delta = A.deg() - B.deg();
        if ((A.deg() & 1) && (B.deg() & 1)) s = -s;
        BiPoly R = prem(A, B);
        A = std::move(B);
        if (R.is_zero()) return Poly(p);
        B = div_exact(R, gg * pow(hh, unsigned(delta)));
        gg = A.lc();
        if (delta == 0) {
            // h unchanged
        } else {
            hh = exact_div(pow(gg, unsigned(delta)), pow(hh, unsigned(delta - 1)));
        }
        if (B.deg() == 0) break;
    }
    int da = A.deg();
    Poly r = exact_div(pow(B.lc(), unsigned(da)), pow(hh, unsigned(da - 1)));
    return s < 0 ? -r : r;
}

std::string to_string(const BiPoly& a, const std::string& tv, const std::string& xv) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = a.deg(); i >= 0; --i) {
        const Poly& q = a.c[i];
        if (q.is_zero()) continue;
        std::string cs = to_string(q, tv);
        std::string mono = i == 0 ? "" : (i == 1 ? xv : xv + "^" + std::to_string(i));
        bool single = q.low_deg() == q.deg();  // a single term
        std::string term;
        bool neg = false;
        if (i == 0) {
            term = cs;
        } else if (single) {
            if (cs[0] == '-') {
                neg = true;
                cs = cs.substr(1);
            }
            term = cs == "1" ? mono : cs + "*" + mono;
        } else {
            term = "(" + cs + ")*" + mono;
        }
        if (i == 0 && !term.empty() && term[0] == '-' && single) {
            neg = true;
            term = term.substr(1);
        }
        if (first)
            os << (neg ? "-" : "") << term;
        else
            os << (neg ? " - " : " + ") << (i == 0 && !single ? "(" + term + ")" : term);
        first = false;
    }
    return os.str();
}

Poly squarefree_part(const Poly& a) {
    if (a.is_zero()) fail(ErrorCode::InvalidInput, "squarefree part of zero");
    Poly r = Poly::constant(a.p, 1);
    for (auto& [q, m] : factor_poly(a)) r *= q;
    return r;
}

// ---------------------------------------------------------------- CurveModel

int compute_lambda(const BiPoly& f) {
    int n = f.deg(), lam = 0;
    for (int i = 0; i < n; ++i) {
        if (f.c[i].is_zero()) continue;
        int d = f.c[i].deg(), k = n - i;
        lam = std::max(lam, (d + k - 1) / k);
    }
    return lam;
}

BiPoly infinity_polynomial(const BiPoly& f, int lambda) {
    int n = f.deg();
    BiPoly r(f.p);
    r.c.assign(n + 1, Poly(f.p));
    for (int i = 0; i <= n; ++i) {
        const Poly& ci = f.c[i];
        if (ci.is_zero()) continue;
        int e = (n - i) * lambda - ci.deg();
        r.c[i] = ci.reversed(ci.deg()).shifted(e);
    }
    r.normalize();
    return r;
}

std::shared_ptr<const CurveModel> CurveModel::make(const BiPoly& f) {
    if (f.is_zero() || f.deg() < 1) fail(ErrorCode::InvalidInput, "curve polynomial must have positive degree in x");
    if (!f.lc().is_one()) fail(ErrorCode::NotMonic, "curve polynomial must be monic in x");
    auto m = std::make_shared<CurveModel>();
    m->p = f.p;
    m->f = f;
    m->n = f.deg();
    m->disc = resultant_in_X(f, f.derivative());
    if (m->disc.is_zero()) fail(ErrorCode::InvalidInput, "curve polynomial is not separable in x");
    m->disc_sf = squarefree_part(m->disc);
    m->lambda = compute_lambda(f);
    m->f_inf = infinity_polynomial(f, m->lambda);
    return m;
}

int CurveModel::total_degree() const {
    int d = 0;
    for (int i = 0; i <= n; ++i)
        if (!f.c[i].is_zero()) d = std::max(d, i + f.c[i].deg());
    return d;
}

// ---------------------------------------------------------------- FFElement

FFElement::FFElement(Model m) : model(std::move(m)) {
    coords.assign(model->n, RatFunc(model->p));
}

FFElement::FFElement(Model m, std::vector<RatFunc> cs) : model(std::move(m)), coords(std::move(cs)) {
    if (int(coords.size()) != model->n) fail(ErrorCode::InvalidInput, "element has wrong number of coordinates");
}

FFElement FFElement::from_rat(Model m, const RatFunc& a) {
    FFElement r(m);
    r.coords[0] = a;
    return r;
}

FFElement FFElement::x(Model m) {
    if (m->n == 1) return from_bipoly(m, BiPoly::X(m->p), Poly::constant(m->p, 1));
    FFElement r(m);
    r.coords[1] = RatFunc::constant(m->p, 1);
    return r;
}

FFElement FFElement::from_bipoly(Model m, const BiPoly& H, const Poly& d) {
    BiPoly R = H.deg() >= m->n ? divmod_monic(H, m->f).second : H;
    FFElement r(m);
    for (int i = 0; i <= R.deg(); ++i) r.coords[i] = RatFunc(R.c[i], d);
    return r;
}

bool FFElement::is_zero() const {
    for (auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

bool FFElement::is_one() const {
    if (!coords[0].is_one()) return false;
    for (size_t i = 1; i < coords.size(); ++i)
        if (!coords[i].is_zero()) return false;
    return true;
}

namespace {

void check_same(const FFElement& a, const FFElement& b) {
    if (a.model != b.model && !(a.model && b.model && a.model->f == b.model->f))
        fail(ErrorCode::InvalidInput, "elements belong to different curve models");
}

}  // namespace

FFElement operator+(const FFElement& a, const FFElement& b) {
    check_same(a, b);
    FFElement r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.coords[i] + b.coords[i];
    return r;
}

FFElement operator-(const FFElement& a, const FFElement& b) {
    check_same(a, b);
    FFElement r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] = a.coords[i] - b.coords[i];
    return r;
}

FFElement FFElement::operator-() const {
    FFElement r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

FFElement FFElement::scaled(const RatFunc& s) const {
    FFElement r = *this;
    for (auto& c : r.coords) c = c * s;
    return r;
}

std::pair<BiPoly, Poly> FFElement::cleared() const {
    uint32_t p = model->p;
    Poly d = Poly::constant(p, 1);
    for (auto& c : coords)
        if (!c.den.is_one()) d = d / gcd(d, c.den) * c.den;
    BiPoly H(p);
    for (auto& c : coords) H.c.push_back(c.den.is_one() ? c.num * d : c.num * (d / c.den));
    H.normalize();
    return {H, d};
}

FFElement operator*(const FFElement& a, const FFElement& b) {
    check_same(a, b);
    auto [Ha, da] = a.cleared();
    auto [Hb, db] = b.cleared();
    return FFElement::from_bipoly(a.model, Ha * Hb, da * db);
}

FFElement element_mul(const FFElement& a, const FFElement& b) { return a * b; }

FFElement FFElement::inv() const {
    if (is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero element");
    // Extended Euclid in K[X] with rational coefficients.
    using RP = std::vector<RatFunc>;
    uint32_t p = model->p;
    auto norm = [](RP& v) { while (!v.empty() && v.back().is_zero()) v.pop_back(); };
    auto sub_mul = [&](const RP& a, const RP& q, const RP& b) {
        RP r = a;
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i].is_zero()) continue;
            for (size_t j = 0; j < b.size(); ++j) {
                if (i + j >= r.size()) r.resize(i + j + 1, RatFunc(p));
                r[i + j] = r[i + j] - q[i] * b[j];
            }
        }
        norm(r);
        return r;
    };
    auto divmodr = [&](const RP& a, const RP& b) {
        RP r = a, q;
        int db = int(b.size()) - 1;
        RatFunc il = b.back().inv();
        if (int(r.size()) - 1 >= db) q.assign(r.size() - db, RatFunc(p));
        while (!r.empty() && int(r.size()) - 1 >= db) {
            int sh = int(r.size()) - 1 - db;
            RatFunc m = r.back() * il;
            q[sh] = m;
            for (int j = 0; j <= db; ++j) r[sh + j] = r[sh + j] - m * b[j];
            r.pop_back();
            norm(r);
        }
        norm(q);
        return std::make_pair(q, r);
    };
    RP r0, r1 = coords, s0, s1 = {RatFunc::constant(p, 1)};
    for (auto& c : model->f.c) r0.push_back(RatFunc(c));
    norm(r1);
    while (!r1.empty()) {
        auto [q, r] = divmodr(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RP s2 = sub_mul(s0, q, s1);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) fail(ErrorCode::InvalidInput, "element not invertible (reducible curve?)");
    RatFunc il = r0[0].inv();
    FFElement res(model);
    for (size_t i = 0; i < s0.size() && int(i) < model->n; ++i) res.coords[i] = s0[i] * il;
    return res;
}

FFElement operator/(const FFElement& a, const FFElement& b) { return a * b.inv(); }

FFElement FFElement::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FFElement r = from_rat(model, RatFunc::constant(model->p, 1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string to_string(const FFElement& a) {
    std::ostringstream os;
    bool first = true;
    for (int i = int(a.coords.size()) - 1; i >= 0; --i) {
        if (a.coords[i].is_zero()) continue;
        std::string cs = to_string(a.coords[i]);
        std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
        if (!first) os << " + ";
        first = false;
        if (i == 0)
            os << "(" << cs << ")";
        else if (a.coords[i].is_one())
            os << mono;
        else
            os << "(" << cs << ")*" << mono;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace rr
