#pragma once

#include <vector>

#include "rr/divisors.hpp"

namespace rr {

// Local triangular basis h_i / pi^w_i at one base prime, in working coordinates.
struct LocalBasis {
    BasePrime base;
    std::vector<BiPoly> h;  // monic, deg h_i = i
    std::vector<int> w;     // nondecreasing
};

// MaxMin search for the ideal {b : v_P(b) >= -target_P for P over the prime}.
// targets are indexed like places and must be >= 0. The result is certified
// (membership and saturation); MaxMinIncomplete if certification fails.
LocalBasis maxmin_local(const std::vector<Place>& places, const std::vector<int>& targets);

// True when the A_p-span of h_i / pi^w_i is the whole local ideal; assumes membership.
bool local_basis_saturated(const std::vector<Place>& places, const std::vector<int>& targets, const LocalBasis& b);

// Triangular A-basis of I(D): q * g_i / p_i.
struct TriangularBasisFinite {
    RatFunc q;
    std::vector<BiPoly> g;    // monic in x, deg g_i = i, deg_t g_i < deg p_i
    std::vector<Poly> den;    // p_0 = 1 | p_1 | ... | p_{n-1}, monic
    int delta = 0;            // sum deg p_i
    int exp = 0;              // deg p_{n-1}
    std::vector<BasePrime> primes;

    std::vector<FFElement> elements(const Model& m) const;
};

// Triangular A_inf-basis of I_inf(D): u^m * h_i / u^{m_i}, h_i in k[u][y].
struct TriangularBasisInfinity {
    int m = 0;
    std::vector<BiPoly> h;    // monic in y, deg h_i = i, deg_u h_i < m_i
    std::vector<int> mi;      // 0 = m_0 <= m_1 <= ... <= m_{n-1}
    int delta = 0;
    int exp = 0;

    std::vector<FFElement> elements(const Model& m) const;
};

TriangularBasisFinite triangular_basis_finite(const PlaceTable& table, const Divisor& D);
TriangularBasisInfinity triangular_basis_infinity(const PlaceTable& table, const Divisor& D);

// Same, from precomputed normalization data.
TriangularBasisFinite triangular_basis_finite(const PlaceTable& table, const Divisor& D, const NormalizationData& nd);
TriangularBasisInfinity triangular_basis_infinity(const PlaceTable& table, const Divisor& D, const NormalizationData& nd);

// Element of L from a polynomial in u = 1/t and y = x t^-lambda, times t^s.
FFElement from_infinity_chart(const Model& m, const BiPoly& h, int s);

}  // namespace rr
