#include "rr/polymat.hpp"

#include <algorithm>
#include <sstream>

#include "rr/error.hpp"
#include "rr/linalg.hpp"

namespace rr {

PolyMatrix PolyMatrix::identity(uint32_t p, int n) {
    PolyMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = Poly::constant(p, 1);
    return m;
}

PolyMatrix PolyMatrix::diagonal(const std::vector<Poly>& d) {
    uint32_t p = d.empty() ? 0 : d[0].p;
    int n = int(d.size());
    PolyMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = d[i];
    return m;
}

int PolyMatrix::degree() const {
    int d = -1;
    for (auto& r : a)
        for (auto& e : r) d = std::max(d, e.deg());
    return d;
}

bool PolyMatrix::is_zero() const {
    for (auto& r : a)
        for (auto& e : r)
            if (!e.is_zero()) return false;
    return true;
}

PolyMatrix PolyMatrix::transposed() const {
    PolyMatrix m(p, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.a[j][i] = a[i][j];
    return m;
}

PolyMatrix PolyMatrix::scaled(const Poly& s) const {
    PolyMatrix m = *this;
    for (auto& r : m.a)
        for (auto& e : r) e = e * s;
    return m;
}

PolyMatrix PolyMatrix::divided(const Poly& d) const {
    PolyMatrix m = *this;
    for (auto& r : m.a)
        for (auto& e : r) {
            auto [q, rem] = divmod(e, d);
            if (!rem.is_zero()) fail(ErrorCode::ContractViolation, "matrix entry not divisible");
            e = q;
        }
    return m;
}

PolyMatrix matmul(const PolyMatrix& e, const PolyMatrix& f) {
    if (e.cols != f.rows) fail(ErrorCode::InvalidInput, "matrix dimension mismatch");
    uint32_t p = e.p ? e.p : f.p;
    PolyMatrix r(p, e.rows, f.cols);
    for (int i = 0; i < e.rows; ++i)
        for (int k = 0; k < e.cols; ++k) {
            const Poly& x = e.a[i][k];
            if (x.is_zero()) continue;
            for (int j = 0; j < f.cols; ++j)
                if (!f.a[k][j].is_zero()) r.a[i][j] += x * f.a[k][j];
        }
    return r;
}

namespace {

Poly exact(const Poly& a, const Poly& b) {
    if (b.is_one()) return a;
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorCode::ContractViolation, "inexact division in fraction-free elimination");
    return q;
}

}  // namespace

Poly determinant(const PolyMatrix& e) {
    if (!e.square()) fail(ErrorCode::InvalidInput, "determinant of a non-square matrix");
    int n = e.rows;
    uint32_t p = e.p;
    if (n == 0) return Poly::constant(p, 1);
    auto m = e.a;
    Poly prev = Poly::constant(p, 1);
    bool neg = false;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { s = i; break; }
            if (s < 0) return Poly(p);
            std::swap(m[k], m[s]);
            neg = !neg;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) m[i][j] = exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = Poly(p);
        }
        prev = m[k][k];
    }
    Poly d = m[n - 1][n - 1];
    return neg ? -d : d;
}

std::vector<int> rdeg(const PolyMatrix& e, const std::vector<int>& shift) {
    std::vector<int> d(e.rows, kNegInf);
    for (int i = 0; i < e.rows; ++i)
        for (int j = 0; j < e.cols; ++j)
            if (!e.a[i][j].is_zero())
                d[i] = std::max(d[i], e.a[i][j].deg() + (shift.empty() ? 0 : shift[j]));
    return d;
}

long rdeg_sum(const std::vector<int>& d) {
    long s = 0;
    for (int x : d)
        if (x != kNegInf) s += x;
    return s;
}

bool is_row_reduced(const PolyMatrix& e, const std::vector<int>& shift) {
    auto d = rdeg(e, shift);
    MatFp lm(e.rows, std::vector<uint32_t>(e.cols, 0));
    for (int i = 0; i < e.rows; ++i) {
        if (d[i] == kNegInf) return false;
        for (int j = 0; j < e.cols; ++j) {
            int s = shift.empty() ? 0 : shift[j];
            lm[i][j] = e.a[i][j].coef(d[i] - s);
        }
    }
    return rank_fp(lm, e.p) == e.rows;
}

RowReduction row_reduce(const PolyMatrix& e, const std::optional<std::vector<int>>& shift) {
    int n = e.rows, m = e.cols;
    uint32_t p = e.p;
    std::vector<int> s = shift ? *shift : std::vector<int>(m, 0);
    if (int(s.size()) != m) fail(ErrorCode::InvalidInput, "shift has wrong length");
    PolyMatrix R = e, U = PolyMatrix::identity(p, n);
    PrimeField F(p);

    // Shifted degree and leading position (rightmost column attaining it).
    auto lead = [&](int i, int& deg, int& pos) {
        deg = kNegInf;
        pos = -1;
        for (int j = 0; j < m; ++j) {
            if (R.a[i][j].is_zero()) continue;
            int dj = R.a[i][j].deg() + s[j];
            if (dj >= deg) {
                deg = dj;
                pos = j;
            }
        }
    };
    std::vector<int> deg(n), pos(n);
    for (int i = 0; i < n; ++i) {
        lead(i, deg[i], pos[i]);
        if (pos[i] < 0) fail(ErrorCode::SingularMatrix, "zero row in row reduction");
    }
    for (;;) {
        // Find a collision of leading positions.
        int ri = -1, rk = -1;
        for (int j = 0; j < m && ri < 0; ++j) {
            int best = -1;
            for (int i = 0; i < n; ++i)
                if (pos[i] == j && (best < 0 || deg[i] < deg[best])) best = i;
            if (best < 0) continue;
            for (int i = 0; i < n; ++i)
                if (i != best && pos[i] == j) {
                    ri = i;
                    rk = best;
                    break;
                }
        }
        if (ri < 0) break;
        int j = pos[ri];
        int sh = deg[ri] - deg[rk];
        uint32_t c = F.mul(R.a[ri][j].lc(), F.inv(R.a[rk][j].lc()));
        for (int col = 0; col < m; ++col)
            if (!R.a[rk][col].is_zero()) R.a[ri][col] -= R.a[rk][col].scaled(c).shifted(sh);
        for (int col = 0; col < n; ++col)
            if (!U.a[rk][col].is_zero()) U.a[ri][col] -= U.a[rk][col].scaled(c).shifted(sh);
        lead(ri, deg[ri], pos[ri]);
        if (pos[ri] < 0) fail(ErrorCode::SingularMatrix, "matrix is singular");
    }
    return {R, U};
}

PolyMatrix inverse_row_reduced(const PolyMatrix& f, int d) {
    if (!f.square()) fail(ErrorCode::InvalidInput, "inverse of a non-square matrix");
    int n = f.rows;
    uint32_t p = f.p;
    // Fraction-free Gauss-Jordan on [F | I]: ends with det*I | det*F^{-1}.
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(2 * n, Poly(p)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m[i][j] = f.a[i][j];
        m[i][n + i] = Poly::constant(p, 1);
    }
    Poly prev = Poly::constant(p, 1);
    for (int k = 0; k < n; ++k) {
        if (m[k][k].is_zero()) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { sw = i; break; }
            if (sw < 0) fail(ErrorCode::SingularMatrix, "matrix is singular");
            std::swap(m[k], m[sw]);
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = 0; j < 2 * n; ++j) {
                if (j == k) continue;
                m[i][j] = exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            }
            m[i][k] = Poly(p);
        }
        prev = m[k][k];
    }
    Poly det = prev;
    // Rows above the last pivot carry det as well; scale row i by det / m[i][i].
    PolyMatrix res(p, n, n);
    Poly td = Poly::monomial(p, 1, d);
    for (int i = 0; i < n; ++i) {
        if (m[i][i] != det) fail(ErrorCode::ContractViolation, "fraction-free inversion lost the determinant");
        for (int j = 0; j < n; ++j) {
            auto [q, r] = divmod(m[i][n + j] * td, det);
            if (!r.is_zero()) fail(ErrorCode::ContractViolation, "scaled inverse is not polynomial");
            if (q.deg() > d) fail(ErrorCode::ContractViolation, "scaled inverse exceeds the degree bound");
            res.a[i][j] = q;
        }
    }
    if (matmul(f, res) != PolyMatrix::identity(p, n).scaled(td))
        fail(ErrorCode::ContractViolation, "inverse check failed");
    return res;
}

std::string to_string(const PolyMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows; ++i) {
        os << "[";
        for (int j = 0; j < m.cols; ++j) os << (j ? ", " : "") << to_string(m.a[i][j]);
        os << "]\n";
    }
    return os.str();
}

}  // namespace rr
