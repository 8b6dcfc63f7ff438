#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rr {

// Arithmetic modulo a prime p < 2^31.
struct PrimeField {
    uint32_t p = 0;

    PrimeField() = default;
    explicit PrimeField(uint32_t prime);

    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return uint32_t(uint64_t(a) * b % p); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;
    uint32_t from_int(int64_t v) const;
    // Symmetric representative in (-p/2, p/2].
    int64_t to_signed(uint32_t a) const { return a > p / 2 ? int64_t(a) - int64_t(p) : int64_t(a); }
};

bool is_prime(uint64_t n);

// Dense univariate polynomial over F_p, coefficients low to high, no trailing zeros.
class Poly {
public:
    uint32_t p = 0;
    std::vector<uint32_t> c;

    Poly() = default;
    explicit Poly(uint32_t prime) : p(prime) {}
    Poly(uint32_t prime, std::vector<uint32_t> coeffs);

    static Poly constant(uint32_t prime, int64_t v);
    static Poly monomial(uint32_t prime, uint32_t coef, int deg);
    static Poly x(uint32_t prime) { return monomial(prime, 1, 1); }

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    uint32_t lc() const { return c.empty() ? 0 : c.back(); }
    uint32_t coef(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : 0; }
    void normalize();
    // Lowest index with nonzero coefficient (t-adic valuation); -1 for zero.
    int low_deg() const;

    PrimeField field() const { return PrimeField(p); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(uint32_t s) const;
    Poly shifted(int k) const;  // multiply by x^k, k >= 0
    Poly monic() const;
    Poly derivative() const;
    uint32_t eval(uint32_t v) const;
    // x^deg * P(1/x) for a given bound deg >= deg(P).
    Poly reversed(int d) const;
    Poly truncated(int n) const;  // mod x^n
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact or floor quotient
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
// Returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd { Poly g, s, t; };
XGcd xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& a, uint64_t e, const Poly& m);
Poly pow(const Poly& a, unsigned e);
// Inverse of a modulo m; throws if not invertible.
Poly invmod(const Poly& a, const Poly& m);
// Multiplicity of the irreducible q in a (a nonzero).
int valuation(const Poly& a, const Poly& q);
// Lexicographic comparison on coefficient vectors after degree.
bool poly_less(const Poly& a, const Poly& b);

std::string to_string(const Poly& a, const std::string& var = "t");

}  // namespace rr
