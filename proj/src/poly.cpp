#include "rr/poly.hpp"

#include <algorithm>
#include <sstream>

#include "rr/error.hpp"

namespace rr {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::ContractViolation: return "ContractViolation";
        case ErrorCode::UnknownPlace: return "UnknownPlace";
        case ErrorCode::MaxMinIncomplete: return "MaxMinIncomplete";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotMonic: return "NotMonic";
        case ErrorCode::PrecisionCap: return "PrecisionCap";
        case ErrorCode::Syntax: return "Syntax";
    }
    return "Unknown";
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(uint32_t prime) : p(prime) {}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
    uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return uint32_t(r);
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a % p == 0) fail(ErrorCode::InvalidInput, "division by zero in F_p");
    return pow(a, p - 2);
}

uint32_t PrimeField::from_int(int64_t v) const {
    int64_t r = v % int64_t(p);
    if (r < 0) r += p;
    return uint32_t(r);
}

Poly::Poly(uint32_t prime, std::vector<uint32_t> coeffs) : p(prime), c(std::move(coeffs)) {
    for (auto& v : c) v %= p;
    normalize();
}

Poly Poly::constant(uint32_t prime, int64_t v) {
    Poly r(prime);
    uint32_t x = PrimeField(prime).from_int(v);
    if (x) r.c.push_back(x);
    return r;
}

Poly Poly::monomial(uint32_t prime, uint32_t coef, int deg) {
    Poly r(prime);
    coef %= prime;
    if (coef == 0) return r;
    r.c.assign(deg + 1, 0);
    r.c[deg] = coef;
    return r;
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int Poly::low_deg() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) return int(i);
    return -1;
}

Poly& Poly::operator+=(const Poly& o) {
    if (p == 0) p = o.p;
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0);
    for (size_t i = 0; i < o.c.size(); ++i) {
        uint32_t s = c[i] + o.c[i];
        c[i] = s >= p ? s - p : s;
    }
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (p == 0) p = o.p;
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0);
    for (size_t i = 0; i < o.c.size(); ++i) c[i] = c[i] >= o.c[i] ? c[i] - o.c[i] : c[i] + p - o.c[i];
    normalize();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    uint32_t p = a.p ? a.p : b.p;
    Poly r(p);
    if (a.c.empty() || b.c.empty()) return r;
    size_t n = a.c.size(), m = b.c.size();
    std::vector<uint64_t> acc(n + m - 1, 0);
    // Accumulate in 64 bits and reduce periodically to avoid overflow.
    const uint64_t pp = uint64_t(p) * p;
    const size_t batch = pp == 0 ? 1 : std::max<uint64_t>(1, (~uint64_t(0)) / pp - 1);
    for (size_t i = 0; i < n; ++i) {
        uint64_t ai = a.c[i];
        if (!ai) continue;
        for (size_t j = 0; j < m; ++j) acc[i + j] += ai * b.c[j];
        if ((i + 1) % batch == 0)
            for (auto& v : acc) v %= p;
    }
    r.c.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r.c[i] = uint32_t(acc[i] % p);
    r.normalize();
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = v ? p - v : 0;
    return r;
}

Poly Poly::scaled(uint32_t s) const {
    Poly r = *this;
    s %= p;
    for (auto& v : r.c) v = uint32_t(uint64_t(v) * s % p);
    r.normalize();
    return r;
}

Poly Poly::shifted(int k) const {
    Poly r = *this;
    if (r.c.empty() || k == 0) return r;
    r.c.insert(r.c.begin(), size_t(k), 0u);
    return r;
}

Poly Poly::monic() const {
    if (c.empty()) return *this;
    return scaled(PrimeField(p).inv(c.back()));
}

Poly Poly::derivative() const {
    Poly r(p);
    if (c.size() <= 1) return r;
    r.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = uint32_t(uint64_t(c[i]) * (i % p) % p);
    r.normalize();
    return r;
}

uint32_t Poly::eval(uint32_t v) const {
    uint64_t r = 0;
    for (size_t i = c.size(); i-- > 0;) r = (r * v + c[i]) % p;
    return uint32_t(r);
}

Poly Poly::reversed(int d) const {
    Poly r(p);
    if (c.empty()) return r;
    r.c.assign(size_t(d) + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) r.c[size_t(d) - i] = c[i];
    r.normalize();
    return r;
}

Poly Poly::truncated(int n) const {
    Poly r = *this;
    if (int(r.c.size()) > n) r.c.resize(std::max(n, 0));
    r.normalize();
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidInput, "polynomial division by zero");
    uint32_t p = b.p;
    PrimeField F(p);
    Poly q(p), r = a;
    r.p = p;
    if (a.deg() < b.deg()) return {q, r};
    uint32_t il = F.inv(b.lc());
    int db = b.deg();
    q.c.assign(size_t(a.deg() - db + 1), 0);
    for (int i = a.deg(); i >= db; --i) {
        uint32_t co = r.c[i];
        if (!co) continue;
        uint32_t m = F.mul(co, il);
        q.c[i - db] = m;
        for (int j = 0; j <= db; ++j) r.c[i - db + j] = F.sub(r.c[i - db + j], F.mul(m, b.c[j]));
    }
    q.normalize();
    r.normalize();
    return {q, r};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

XGcd xgcd(const Poly& a, const Poly& b) {
    uint32_t p = a.p ? a.p : b.p;
    Poly r0 = a, r1 = b, s0 = Poly::constant(p, 1), s1(p), t0(p), t1 = Poly::constant(p, 1);
    r0.p = r1.p = p;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    uint32_t il = PrimeField(p).inv(r0.lc());
    return {r0.scaled(il), s0.scaled(il), t0.scaled(il)};
}

Poly powmod(const Poly& a, uint64_t e, const Poly& m) {
    Poly r = Poly::constant(m.p, 1) % m, b = a % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return r;
}

Poly pow(const Poly& a, unsigned e) {
    Poly r = Poly::constant(a.p, 1), b = a;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Poly invmod(const Poly& a, const Poly& m) {
    XGcd g = xgcd(a % m, m);
    if (!g.g.is_one()) fail(ErrorCode::InvalidInput, "polynomial not invertible modulo modulus");
    return g.s % m;
}

int valuation(const Poly& a, const Poly& q) {
    if (a.is_zero()) fail(ErrorCode::InvalidInput, "valuation of zero polynomial");
    int v = 0;
    Poly cur = a;
    for (;;) {
        auto [qq, r] = divmod(cur, q);
        if (!r.is_zero()) return v;
        cur = std::move(qq);
        ++v;
    }
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

std::string to_string(const Poly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    PrimeField F(a.p);
    std::ostringstream os;
    bool first = true;
    for (int i = a.deg(); i >= 0; --i) {
        int64_t v = F.to_signed(a.c[i]);
        if (v == 0) continue;
        bool neg = v < 0;
        int64_t m = neg ? -v : v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (i == 0) {
            os << m;
            continue;
        }
        if (m != 1) os << m << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace rr
