#pragma once

#include <climits>
#include <memory>
#include <string>
#include <vector>

#include "rr/funcfield.hpp"
#include "rr/maclane.hpp"

namespace rr {

// A prime of k[t], or the prime 1/t at infinity.
struct BasePrime {
    bool infinite = false;
    Poly p;  // monic irreducible in t; for infinity the uniformizer u = 1/t written as t

    static BasePrime finite(const Poly& q) { return {false, q}; }
    static BasePrime at_infinity(uint32_t prime) { return {true, Poly::x(prime)}; }
    int degree() const { return infinite ? 1 : p.deg(); }
    std::string str() const { return infinite ? "inf" : to_string(p); }
    // Center as written in place ids: no spaces.
    std::string center() const;
    friend bool operator==(const BasePrime& a, const BasePrime& b) { return a.infinite == b.infinite && a.p == b.p; }
};

// Total order on base primes: finite ones by degree then coefficients, infinity last.
bool base_prime_less(const BasePrime& a, const BasePrime& b);

struct PlaceData;

struct Place {
    BasePrime base;
    int index = 0;
    int e = 1, f = 1;
    int degree = 1;              // f * deg p, or f at infinity
    std::vector<BiPoly> type;    // key polynomials; at infinity in u = 1/t and y = x t^-lambda
    BiPoly lifted_factor;        // local factor modulo p^precision
    int precision = 0;
    std::shared_ptr<const PlaceData> data;

    std::string id() const { return "[" + base.center() + ";" + std::to_string(index) + "]"; }
    std::vector<std::string> type_strings() const;
};

constexpr int kInfiniteValuation = INT_MAX;

// Guard on adaptive precision (number of pi-adic digits).
void set_precision_cap(int cap);
int precision_cap();

std::vector<Place> decompose(const Model& model, const BasePrime& base);
Place lift_factor(const Place& place, int N);

// v_P(b) through resultants of the lifted factor at adaptive precision.
int valuation(const Place& place, const FFElement& b);
// v_P(b) by expanding along the refined key polynomial (no resultants).
int valuation_direct(const Place& place, const FFElement& b);
// Valuation of a polynomial H(t, x) reduced mod f.
int valuation_poly(const Place& place, const BiPoly& H);

// Valuation of H written in the coordinates of the working polynomial:
// (t, x) at finite places, (u, y) at infinity.
int valuation_working(const Place& place, const BiPoly& H);
// Reduction of {H integral : v(H) >= gamma} into the residue field, as F_p coordinates
// (length f * deg p). F_p-linear in H; zero exactly when v(H) > gamma.
std::vector<uint32_t> residue_working(const Place& place, const BiPoly& H, int gamma);

// The polynomial and precision data used at a place (f or f at infinity).
const BiPoly& working_polynomial(const Place& place);

}  // namespace rr
