#pragma once

#include <vector>

#include "rr/field.hpp"
#include "rr/funcfield.hpp"
#include "rr/rational.hpp"

namespace rr {

// Element g / pi^s of A[1/pi][x].
struct LPoly {
    BiPoly g;
    int s = 0;
};

// One augmentation step [v_{i-1}; phi_i, mu_i].
struct KeyLevel {
    BiPoly phi;
    Rational mu;
    int e = 1;  // relative ramification: denominator of mu over the previous value group
    int m = 1;  // deg phi
};

// Coefficients of g in base phi: g = sum c_j phi^j with deg c_j < deg phi.
std::vector<BiPoly> phi_expansion(const BiPoly& g, const BiPoly& phi);

struct NewtonSide {
    int j1, j2;
    Rational y1, y2;
    Rational slope() const { return (y2 - y1) / Rational(j2 - j1); }
    int length() const { return j2 - j1; }
};

// Lower convex hull of the finite points (j, y_j).
std::vector<NewtonSide> newton_polygon(const std::vector<Rational>& ys);

// Inductive (MacLane) valuation on A[x] over the base prime pi of A = F_p[t],
// together with the residue fields F_0 = A/pi, F_{i+1} = F_i[Y]/psi_i.
class MacLaneChain {
public:
    uint32_t p = 0;
    Poly pi;
    std::vector<KeyLevel> lv;       // lv[i] is level i+1
    std::vector<FPoly> psi;         // psi[i] over F[i]; lv[i].phi lifts psi[i]
    std::vector<Field> F;           // F[0..depth]
    std::vector<Flattening> fl;     // fl[i] : F[i][Y]/psi[i] -> F[i+1]
    std::vector<int64_t> E;         // E[i] = e_1 ... e_i

    MacLaneChain() = default;
    MacLaneChain(uint32_t p, const Poly& pi);

    int depth() const { return int(lv.size()); }
    int64_t ramification() const { return E.back(); }
    // [F_depth : F_0]
    int residue_degree() const { return F.back()->degree() / F[0]->degree(); }

    Rational value(int k, const BiPoly& g) const;
    Rational value(const BiPoly& g) const { return value(depth(), g); }
    // Residual polynomial of g at level k for a value gamma <= v_k(g).
    FPoly residual(int k, const BiPoly& g, const Rational& gamma) const;
    // A key polynomial for v_k whose residual polynomial is a multiple of psi.
    BiPoly lift_key(int k, const FPoly& psi) const;

    // Append level depth()+1: psi over F[depth], phi a lift of psi.
    MacLaneChain extended(const FPoly& psi_k, const BiPoly& phi, const Rational& mu) const;
    // Replace the last level's key and slope.
    MacLaneChain replaced(const BiPoly& phi, const Rational& mu) const;

    // Exponents (pi, phi_1, ..., phi_k) of the unit monomial of value gamma.
    std::vector<int64_t> monomial(int k, const Rational& gamma) const;
    // Residue in F[j+1] of a value-zero monomial in pi, phi_1, ..., phi_j.
    FElem monomial_residue(int j, std::vector<int64_t> b) const;
    LPoly lift(int k, const Rational& gamma, const FPoly& r) const;
    FElem y(int i) const { return fl[i].generator_image(); }
};

}  // namespace rr
