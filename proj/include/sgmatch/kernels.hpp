#pragma once

// Data-parallel inner loops used by the assignment solver and the Frank-Wolfe
// matcher. Every backend must produce bit-identical results to the scalar
// reference: elementwise operations are evaluated without FMA contraction and
// reductions follow the canonical four-lane order described at `dot`.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sgmatch::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view to_string(Backend b);

struct RelaxResult {
    double delta;     // smallest reduced cost over unused columns
    std::size_t col;  // first column attaining it, or n when every column is used
};

struct KernelTable {
    Backend backend;

    /// C[rows x cols] += A[rows x inner] * B[inner x cols], all row-major with the given strides.
    /// Each output element accumulates over k in increasing order.
    void (*gemm_acc)(const double* a, std::size_t lda, const double* b, std::size_t ldb, double* c,
                     std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols);

    /// Sum of x[i] * y[i]. Elements of the largest multiple-of-four prefix go to lane i % 4,
    /// the lanes combine as (l0 + l1) + (l2 + l3), then the tail is added left to right.
    double (*dot)(const double* x, const double* y, std::size_t n);

    /// y[i] = lambda * x[i] + (1 - lambda) * y[i]
    void (*lerp)(double* y, const double* x, double lambda, std::size_t n);

    /// Hungarian relaxation of one row over n columns:
    /// for unused j, cur = cost[j] - u - v[j]; if cur < minv[j] then minv[j] = cur, way[j] = from.
    /// Returns the minimum of minv over unused columns with first-index tie-breaking.
    RelaxResult (*lap_relax)(const double* cost, double u, const double* v, double* minv,
                             std::int64_t* way, const std::uint8_t* used, std::int64_t from,
                             std::size_t n);

    /// v[j] -= delta for used columns, minv[j] -= delta for unused ones.
    void (*lap_shift)(double* v, double* minv, const std::uint8_t* used, double delta,
                      std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the backend was not compiled in or the CPU lacks the instructions.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Backends usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

/// The table used by the library. Chosen on first use: the SGMATCH_KERNELS environment
/// variable (scalar | avx2 | neon) if set, otherwise the widest supported backend.
const KernelTable& active();

/// Throws std::invalid_argument if the backend is unavailable.
void select(Backend b);

}  // namespace sgmatch::kernels
