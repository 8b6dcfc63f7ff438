#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "rr/error.hpp"

namespace rr {

// Exact rational with 64-bit parts; d == 0 encodes +infinity.
struct Rational {
    int64_t n = 0, d = 1;

    Rational() = default;
    Rational(int64_t v) : n(v), d(1) {}  // NOLINT implicit
    Rational(int64_t num, int64_t den) : n(num), d(den) {
        if (den == 0) fail(ErrorCode::InvalidInput, "rational with zero denominator");
        reduce();
    }
    static Rational inf() {
        Rational r;
        r.n = 1;
        r.d = 0;
        return r;
    }
    bool is_inf() const { return d == 0; }
    bool is_integer() const { return d == 1; }

    void reduce() {
        if (d < 0) { n = -n; d = -d; }
        int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return Rational(a.n * b.d + b.n * a.d, a.d * b.d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.is_inf()) return inf();
        if (b.is_inf()) fail(ErrorCode::ContractViolation, "subtracting infinity");
        return Rational(a.n * b.d - b.n * a.d, a.d * b.d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.is_inf() || b.is_inf()) return inf();
        return Rational(a.n * b.n, a.d * b.d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_inf() || b.n == 0) fail(ErrorCode::ContractViolation, "bad rational division");
        if (a.is_inf()) return inf();
        return Rational(a.n * b.d, a.d * b.n);
    }
    Rational operator-() const {
        if (is_inf()) fail(ErrorCode::ContractViolation, "negating infinity");
        return Rational(-n, d);
    }
    friend bool operator==(const Rational& a, const Rational& b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.is_inf()) return false;
        if (b.is_inf()) return true;
        return a.n * b.d < b.n * a.d;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Floor and ceiling of a finite value.
    int64_t floor() const {
        int64_t q = n / d;
        return (n % d != 0 && n < 0) ? q - 1 : q;
    }
    int64_t ceil() const { return -Rational(-n, d).floor(); }

    std::string str() const {
        if (is_inf()) return "inf";
        return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
    }
};

}  // namespace rr
