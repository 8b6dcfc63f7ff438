#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rr/poly.hpp"

namespace rr {

// Element of k(t) in canonical form: monic denominator, coprime to the numerator.
class RatFunc {
public:
    Poly num, den;

    RatFunc() = default;
    explicit RatFunc(uint32_t p) : num(p), den(Poly::constant(p, 1)) {}
    explicit RatFunc(const Poly& n) : num(n), den(Poly::constant(n.p, 1)) {}
    RatFunc(const Poly& n, const Poly& d);  // reduces to canonical form

    static RatFunc constant(uint32_t p, int64_t v) { return RatFunc(Poly::constant(p, v)); }
    static RatFunc t_power(uint32_t p, int k);  // t^k, k may be negative

    uint32_t prime() const { return den.p; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_poly() const { return den.is_one(); }
    // deg(num) - deg(den); callers must not pass zero.
    int degree() const { return num.deg() - den.deg(); }
    int height() const { return num.deg() + den.deg(); }
    // Valuation at a monic irreducible polynomial q.
    int valuation(const Poly& q) const;
    // Valuation at infinity, i.e. -degree().
    int valuation_inf() const { return -degree(); }

    RatFunc inv() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const { RatFunc r = *this; r.num = -r.num; return r; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Substitute t -> 1/t.
    RatFunc inverted_variable() const;
};

std::string to_string(const RatFunc& a, const std::string& var = "t");

// Polynomial in k[t][X], dense in X, coefficients low to high.
class BiPoly {
public:
    uint32_t p = 0;
    std::vector<Poly> c;

    BiPoly() = default;
    explicit BiPoly(uint32_t prime) : p(prime) {}
    BiPoly(uint32_t prime, std::vector<Poly> coeffs);
    static BiPoly from_poly(const Poly& a) { return BiPoly(a.p, {a}); }
    static BiPoly X(uint32_t p) { return BiPoly(p, {Poly(p), Poly::constant(p, 1)}); }

    int deg() const { return int(c.size()) - 1; }
    int deg_t() const;
    bool is_zero() const { return c.empty(); }
    const Poly& lc() const { return c.back(); }
    Poly coef(int i) const { return i >= 0 && i < int(c.size()) ? c[i] : Poly(p); }
    void normalize();

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly operator-() const;
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c == b.c; }
    BiPoly scaled(const Poly& s) const;
    BiPoly derivative() const;
    // Reduce every coefficient modulo m.
    BiPoly coeffs_mod(const Poly& m) const;
    // Substitute X = value in k[t].
    Poly eval_x(const Poly& v) const;
    // Substitute t = value in k.
    Poly eval_t(uint32_t v) const;
    // Content: gcd of all coefficients (monic), zero for zero.
    Poly content() const;
};

// Division by a polynomial monic in X: a = q*b + r with deg r < deg b.
std::pair<BiPoly, BiPoly> divmod_monic(const BiPoly& a, const BiPoly& b);
// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r.
BiPoly prem(const BiPoly& a, const BiPoly& b);
// Exact division of every coefficient by d.
BiPoly div_exact(const BiPoly& a, const Poly& d);

// Res_X(h, g) computed by the subresultant PRS.
Poly resultant_in_X(const BiPoly& h, const BiPoly& g);

std::string to_string(const BiPoly& a, const std::string& tv = "t", const std::string& xv = "x");

// Squarefree part of a nonzero polynomial (monic).
Poly squarefree_part(const Poly& a);

// Affine plane curve f(t, X) = 0 with f monic and separable in X.
struct CurveModel {
    uint32_t p = 0;
    BiPoly f;
    int n = 0;
    Poly disc;            // Res_X(f, f') up to sign
    Poly disc_sf;         // squarefree part of disc
    int lambda = 0;
    BiPoly f_inf;         // t^{-n lambda} f(t^lambda Y) as a polynomial in u = 1/t and Y

    static std::shared_ptr<const CurveModel> make(const BiPoly& f);
    // Degree of f as a bivariate polynomial.
    int total_degree() const;
};

using Model = std::shared_ptr<const CurveModel>;

int compute_lambda(const BiPoly& f);
BiPoly infinity_polynomial(const BiPoly& f, int lambda);

// Element of L = k(t)[x]/(f), coordinates on 1, x, ..., x^{n-1}.
class FFElement {
public:
    Model model;
    std::vector<RatFunc> coords;

    FFElement() = default;
    explicit FFElement(Model m);  // zero
    FFElement(Model m, std::vector<RatFunc> cs);
    static FFElement from_rat(Model m, const RatFunc& a);
    static FFElement x(Model m);
    // Element H/d with H in k[t][X] reduced modulo f.
    static FFElement from_bipoly(Model m, const BiPoly& H, const Poly& d);

    bool is_zero() const;
    bool is_one() const;

    friend FFElement operator+(const FFElement& a, const FFElement& b);
    friend FFElement operator-(const FFElement& a, const FFElement& b);
    friend FFElement operator*(const FFElement& a, const FFElement& b);
    friend FFElement operator/(const FFElement& a, const FFElement& b);
    FFElement operator-() const;
    FFElement scaled(const RatFunc& s) const;
    FFElement inv() const;
    FFElement pow(long e) const;
    friend bool operator==(const FFElement& a, const FFElement& b) { return a.coords == b.coords; }

    // Common denominator form: this = H / d, d monic.
    std::pair<BiPoly, Poly> cleared() const;
};

FFElement element_mul(const FFElement& a, const FFElement& b);
std::string to_string(const FFElement& a);

// Parsers for the text grammar; errors are ErrorCode::Syntax with a column.
Poly parse_tpoly(uint32_t p, const std::string& text, int line = 0);
BiPoly parse_bipoly(uint32_t p, const std::string& text, int line = 0);
// Element of L; division by nonzero elements is allowed.
FFElement parse_element(const Model& m, const std::string& text);

}  // namespace rr
