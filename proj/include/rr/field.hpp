#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rr/poly.hpp"

namespace rr {

// Element of a finite field F_p[z]/(modulus): a Poly in z of degree < deg.
using FElem = Poly;

// A finite field given as a single extension of its prime field.
class FiniteField {
public:
    FiniteField(uint32_t p, Poly modulus);  // modulus monic irreducible over F_p
    static std::shared_ptr<const FiniteField> prime(uint32_t p);

    uint32_t p() const { return p_; }
    int degree() const { return deg_; }
    const Poly& modulus() const { return mod_; }
    // Number of elements, saturated at 2^63.
    uint64_t order() const;

    FElem zero() const { return Poly(p_); }
    FElem one() const { return Poly::constant(p_, 1); }
    FElem from_int(int64_t v) const { return Poly::constant(p_, v); }
    FElem gen() const;  // class of z
    FElem reduce(const Poly& a) const;

    FElem add(const FElem& a, const FElem& b) const { return a + b; }
    FElem sub(const FElem& a, const FElem& b) const { return a - b; }
    FElem neg(const FElem& a) const { return -a; }
    FElem mul(const FElem& a, const FElem& b) const;
    FElem inv(const FElem& a) const;
    FElem pow(const FElem& a, uint64_t e) const;
    FElem frobenius(const FElem& a) const { return pow(a, p_); }
    FElem pth_root(const FElem& a) const;
    bool is_zero(const FElem& a) const { return a.is_zero(); }

    // Element from / to coordinate vector of length degree().
    FElem from_coords(const std::vector<uint32_t>& v) const { return Poly(p_, v); }
    std::vector<uint32_t> coords(const FElem& a) const;

    // Enumerate elements by index 0..order-1 (base-p digits).
    FElem element(uint64_t idx) const;

private:
    uint32_t p_;
    int deg_;
    Poly mod_;
};

using Field = std::shared_ptr<const FiniteField>;

// Univariate polynomial over a finite field, coefficients low to high.
using FPoly = std::vector<FElem>;

namespace fpoly {
void normalize(FPoly& a);
int deg(const FPoly& a);
FPoly from_poly(const FiniteField& F, const Poly& a);  // coefficients from F_p
FPoly add(const FiniteField& F, const FPoly& a, const FPoly& b);
FPoly sub(const FiniteField& F, const FPoly& a, const FPoly& b);
FPoly mul(const FiniteField& F, const FPoly& a, const FPoly& b);
FPoly scale(const FiniteField& F, const FPoly& a, const FElem& s);
std::pair<FPoly, FPoly> divmod(const FiniteField& F, const FPoly& a, const FPoly& b);
FPoly rem(const FiniteField& F, const FPoly& a, const FPoly& b);
FPoly monic(const FiniteField& F, const FPoly& a);
FPoly gcd(const FiniteField& F, FPoly a, FPoly b);
FPoly derivative(const FiniteField& F, const FPoly& a);
FPoly powmod(const FiniteField& F, const FPoly& a, uint64_t e, const FPoly& m);
FPoly frobenius_mod(const FiniteField& F, const FPoly& a, const FPoly& m);  // a^q mod m
FElem eval(const FiniteField& F, const FPoly& a, const FElem& v);
bool less(const FPoly& a, const FPoly& b);
std::string to_string(const FiniteField& F, const FPoly& a, const std::string& var = "X",
                      const std::string& gen = "z");
}  // namespace fpoly

struct Factor {
    FPoly poly;
    int mult;
};

// Seed for the equal-degree splitting sequence.
void set_factor_seed(uint64_t seed);
uint64_t factor_seed();

// Complete factorization into monic irreducibles with multiplicities.
std::vector<Factor> factor_univariate(const FiniteField& F, const FPoly& g);
// Convenience for F_p polynomials.
std::vector<std::pair<Poly, int>> factor_poly(const Poly& g);
bool is_irreducible(const FiniteField& F, const FPoly& g);
bool is_irreducible(const Poly& g);

// Finite extension base[Y]/(modulus) given as a one-step tower.
struct ExtensionField {
    Field base;
    FPoly modulus;  // monic irreducible over base
    int degree() const { return fpoly::deg(modulus); }
    int absolute_degree() const { return base->degree() * degree(); }
};

// Elements of an ExtensionField: FPoly over base of degree < degree().
using TowerElem = FPoly;

struct Flattening {
    Field flat;                   // single extension of F_p
    ExtensionField tower;         // the source tower
    std::vector<std::vector<uint32_t>> to_tower;    // columns: coords of gamma^j in the tower
    std::vector<std::vector<uint32_t>> from_tower;  // inverse matrix
    FElem gamma_c;                // primitive element is Y + c*w with this c

    FElem embed(const TowerElem& a) const;      // tower -> flat
    TowerElem section(const FElem& a) const;    // flat -> tower
    FElem embed_base(const FElem& b) const;     // base field -> flat
    FElem generator_image() const;              // image of Y in flat
};

ExtensionField make_extension(Field base, FPoly modulus);
Flattening flatten_tower(const ExtensionField& E);
// Trivial flattening of an already flat field (identity maps).
Flattening flatten_tower(const Field& F);

}  // namespace rr
