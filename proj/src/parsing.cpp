#include <string>

#include "rr/funcfield.hpp"
#include "rr/parse.hpp"

namespace rr {

namespace {

struct TPolyOps {
    uint32_t p;
    Poly constant(int64_t v) { return Poly::constant(p, v); }
    Poly variable(const std::string& n) {
        if (n != "t") fail(ErrorCode::Syntax, "unknown variable '" + n + "'");
        return Poly::x(p);
    }
    Poly add(const Poly& a, const Poly& b) { return a + b; }
    Poly sub(const Poly& a, const Poly& b) { return a - b; }
    Poly mul(const Poly& a, const Poly& b) { return a * b; }
    Poly div(const Poly& a, const Poly& b) {
        if (b.is_zero()) fail(ErrorCode::InvalidInput, "division by zero");
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) fail(ErrorCode::Syntax, "division is not exact");
        return q;
    }
    Poly neg(const Poly& a) { return -a; }
    Poly pow(const Poly& a, long e) {
        if (e < 0) fail(ErrorCode::Syntax, "negative exponent");
        return rr::pow(a, unsigned(e));
    }
};

struct BiPolyOps {
    uint32_t p;
    BiPoly constant(int64_t v) { return BiPoly::from_poly(Poly::constant(p, v)); }
    BiPoly variable(const std::string& n) {
        if (n == "t") return BiPoly::from_poly(Poly::x(p));
        if (n == "x") return BiPoly::X(p);
        fail(ErrorCode::Syntax, "unknown variable '" + n + "'");
    }
    BiPoly add(const BiPoly& a, const BiPoly& b) { return a + b; }
    BiPoly sub(const BiPoly& a, const BiPoly& b) { return a - b; }
    BiPoly mul(const BiPoly& a, const BiPoly& b) { return a * b; }
    BiPoly div(const BiPoly& a, const BiPoly& b) {
        if (b.deg() != 0 || b.lc().deg() != 0) fail(ErrorCode::Syntax, "only division by a nonzero constant is allowed");
        return a.scaled(Poly::constant(p, PrimeField(p).inv(b.lc().c[0])));
    }
    BiPoly neg(const BiPoly& a) { return -a; }
    BiPoly pow(const BiPoly& a, long e) {
        if (e < 0) fail(ErrorCode::Syntax, "negative exponent");
        BiPoly r = constant(1), b = a;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
};

struct ElementOps {
    Model m;
    FFElement constant(int64_t v) { return FFElement::from_rat(m, RatFunc::constant(m->p, v)); }
    FFElement variable(const std::string& n) {
        if (n == "t") return FFElement::from_rat(m, RatFunc(Poly::x(m->p)));
        if (n == "x") return FFElement::x(m);
        fail(ErrorCode::Syntax, "unknown variable '" + n + "'");
    }
    FFElement add(const FFElement& a, const FFElement& b) { return a + b; }
    FFElement sub(const FFElement& a, const FFElement& b) { return a - b; }
    FFElement mul(const FFElement& a, const FFElement& b) { return a * b; }
    FFElement div(const FFElement& a, const FFElement& b) {
        if (b.is_zero()) fail(ErrorCode::InvalidInput, "division by zero");
        return a / b;
    }
    FFElement neg(const FFElement& a) { return -a; }
    FFElement pow(const FFElement& a, long e) {
        if (e < 0 && a.is_zero()) fail(ErrorCode::InvalidInput, "division by zero");
        return a.pow(e);
    }
};

}  // namespace

Poly parse_tpoly(uint32_t p, const std::string& text, int line) {
    TPolyOps ops{p};
    return parse_expression(ops, text, line);
}

BiPoly parse_bipoly(uint32_t p, const std::string& text, int line) {
    BiPolyOps ops{p};
    return parse_expression(ops, text, line);
}

FFElement parse_element(const Model& m, const std::string& text) {
    ElementOps ops{m};
    return parse_expression(ops, text);
}

}  // namespace rr
