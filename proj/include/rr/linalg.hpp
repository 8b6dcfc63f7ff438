#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace rr {

// Dense matrices over F_p stored row-major as nested vectors.
using MatFp = std::vector<std::vector<uint32_t>>;

int rank_fp(MatFp m, uint32_t p);
// Inverse of a square matrix, or nullopt if singular.
std::optional<MatFp> inverse_fp(const MatFp& m, uint32_t p);
// Basis of the right kernel {v : m v = 0}.
std::vector<std::vector<uint32_t>> kernel_fp(MatFp m, uint32_t p, int cols);
std::vector<uint32_t> matvec_fp(const MatFp& m, const std::vector<uint32_t>& v, uint32_t p);

}  // namespace rr
