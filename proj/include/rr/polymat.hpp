#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "rr/poly.hpp"

namespace rr {

// Dense matrix over F_p[t].
class PolyMatrix {
public:
    uint32_t p = 0;
    int rows = 0, cols = 0;
    std::vector<std::vector<Poly>> a;

    PolyMatrix() = default;
    PolyMatrix(uint32_t prime, int r, int c) : p(prime), rows(r), cols(c), a(r, std::vector<Poly>(c, Poly(prime))) {}
    static PolyMatrix identity(uint32_t p, int n);
    static PolyMatrix diagonal(const std::vector<Poly>& d);

    Poly& operator()(int i, int j) { return a[i][j]; }
    const Poly& operator()(int i, int j) const { return a[i][j]; }
    bool square() const { return rows == cols; }
    // Maximum entry degree, -1 for the zero matrix.
    int degree() const;
    bool is_zero() const;
    PolyMatrix transposed() const;
    PolyMatrix scaled(const Poly& s) const;
    // Divide every entry by d; throws ContractViolation if inexact.
    PolyMatrix divided(const Poly& d) const;

    friend bool operator==(const PolyMatrix& x, const PolyMatrix& y) { return x.a == y.a; }
    friend bool operator!=(const PolyMatrix& x, const PolyMatrix& y) { return !(x == y); }
};

constexpr int kNegInf = INT_MIN;

PolyMatrix matmul(const PolyMatrix& e, const PolyMatrix& f);
inline PolyMatrix operator*(const PolyMatrix& e, const PolyMatrix& f) { return matmul(e, f); }

// Fraction-free Bareiss elimination.
Poly determinant(const PolyMatrix& e);

// Shifted row degrees max_j(deg e_ij + s_j); kNegInf for a zero row.
std::vector<int> rdeg(const PolyMatrix& e, const std::vector<int>& shift = {});
// Sum of row degrees ignoring zero rows.
long rdeg_sum(const std::vector<int>& d);
// Leading coefficient matrix has full row rank.
bool is_row_reduced(const PolyMatrix& e, const std::vector<int>& shift = {});

struct RowReduction {
    PolyMatrix R, U;  // R = U * E
};

// Weak Popov style reduction with unimodular transform; lowest row index wins ties.
RowReduction row_reduce(const PolyMatrix& e, const std::optional<std::vector<int>>& shift = std::nullopt);

// t^d * F^{-1}, which must be polynomial of degree <= d.
PolyMatrix inverse_row_reduced(const PolyMatrix& f, int d);

std::string to_string(const PolyMatrix& m);

}  // namespace rr
