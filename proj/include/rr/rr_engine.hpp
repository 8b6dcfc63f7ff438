#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rr/integral_bases.hpp"
#include "rr/polymat.hpp"

namespace rr {

// Compressed basis: L(D + r D_inf) is spanned by t^j b_i, 0 <= j <= d_i + r.
struct CompressedBasis {
    Divisor divisor;
    std::vector<FFElement> b;
    std::vector<int> d;

    // dim L(D + r D_inf)
    long dimension(int r = 0) const;
};

// Intermediate data of one run, kept for inspection and tests.
struct RRTrace {
    TriangularBasisFinite finite;
    TriangularBasisInfinity infinite;
    PolyMatrix Mt;       // p_{n-1} M*, over k[t]
    PolyMatrix Nt;       // u^e N*, over k[u] (variable printed as t)
    PolyMatrix Nt_red;   // row reduced Nt, over k[u]
    PolyMatrix P;        // Mt * Nt_red^{-1}, over k[t]
    PolyMatrix P_red;
    PolyMatrix Mt_red;   // U * Mt
    std::vector<int> rdeg_P, rdeg_P_red;
    int delta = 0;
    bool fast_path = false;
};

CompressedBasis riemann_roch(const PlaceTable& table, const Divisor& D, RRTrace* trace = nullptr);

// Flat k-basis {t^j b_i : 0 <= j <= d_i + r}.
std::vector<FFElement> expand_basis(const CompressedBasis& cb, int r = 0);

// Dimension over F_p of the span of the given elements.
int k_rank(const std::vector<FFElement>& elems);

struct Membership {
    bool member = true;
    std::vector<PlaceKey> violations;  // places with v_P(b) + n_P < 0
};

// b in L(D), checked at every place where b or D can contribute.
Membership contains(const PlaceTable& table, const Divisor& D, const FFElement& b);

struct CurveInvariants {
    int delta_finite = 0;
    int delta_infinite = 0;
    int delta_curve = 0;
    long rho = 0;                 // dim L(0)
    std::optional<int> genus;     // withheld when rho > 1
    bool plane_model = false;     // lambda = 1 and total degree n
};

CurveInvariants curve_invariants(const PlaceTable& table);

// Homogeneous polynomial in X0, X1, X2 over F_p.
struct TriPoly {
    uint32_t p = 0;
    std::map<std::array<int, 3>, uint32_t> c;  // exponent -> nonzero coefficient

    int degree() const;
    bool homogeneous() const;
    uint32_t eval(const std::array<uint32_t, 3>& x) const;
};

TriPoly parse_tripoly(uint32_t p, const std::string& text, int line = 0);
std::string to_string(const TriPoly& F);

struct PreparedCurve {
    Model model;
    // Original coordinates X = T * Y, then t = Y1/Y0 and x = Y2/Y0 (or swapped).
    std::array<std::array<uint32_t, 3>, 3> T{};
    bool swapped = false;
    bool identity = true;
};

// Projective transform and variable choice making the affine equation monic and separable in x.
PreparedCurve prepare_curve(const TriPoly& F);

// Exact test: f has no factor of smaller positive degree in k[t][x].
bool is_irreducible_curve(const Model& m);

}  // namespace rr
