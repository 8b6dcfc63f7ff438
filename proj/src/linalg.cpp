#include "rr/linalg.hpp"

#include <utility>

#include "rr/poly.hpp"

namespace rr {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(MatFp& m, uint32_t p, int cols) {
    PrimeField F(p);
    std::vector<int> piv;
    int r = 0, rows = int(m.size());
    for (int c = 0; c < cols && r < rows; ++c) {
        int s = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c]) { s = i; break; }
        if (s < 0) continue;
        std::swap(m[r], m[s]);
        uint32_t iv = F.inv(m[r][c]);
        for (auto& v : m[r]) v = F.mul(v, iv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !m[i][c]) continue;
            uint32_t f = m[i][c];
            for (size_t j = 0; j < m[r].size(); ++j)
                if (m[r][j]) m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

int rank_fp(MatFp m, uint32_t p) {
    if (m.empty()) return 0;
    return int(rref(m, p, int(m[0].size())).size());
}

std::optional<MatFp> inverse_fp(const MatFp& m, uint32_t p) {
    int n = int(m.size());
    MatFp a(n, std::vector<uint32_t>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = m[i][j] % p;
        a[i][n + i] = 1;
    }
    auto piv = rref(a, p, n);
    if (int(piv.size()) < n) return std::nullopt;
    MatFp r(n, std::vector<uint32_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = a[i][n + j];
    return r;
}

std::vector<std::vector<uint32_t>> kernel_fp(MatFp m, uint32_t p, int cols) {
    PrimeField F(p);
    auto piv = rref(m, p, cols);
    std::vector<char> is_piv(cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<std::vector<uint32_t>> ker;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<uint32_t> v(cols, 0);
        v[fc] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(m[r][fc]);
        ker.push_back(std::move(v));
    }
    return ker;
}

std::vector<uint32_t> matvec_fp(const MatFp& m, const std::vector<uint32_t>& v, uint32_t p) {
    std::vector<uint32_t> r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        uint64_t s = 0;
        for (size_t j = 0; j < v.size(); ++j) s = (s + uint64_t(m[i][j]) * v[j]) % p;
        r[i] = uint32_t(s);
    }
    return r;
}

}  // namespace rr
