#include <limits>

#include "kernels_impl.hpp"

namespace sgmatch::kernels {
namespace {

void gemm_acc(const double* a, std::size_t lda, const double* b, std::size_t ldb, double* c,
              std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        double* ci = c + i * ldc;
        const double* ai = a + i * lda;
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = ai[k];
            const double* bk = b + k * ldb;
            for (std::size_t j = 0; j < cols; ++j) ci[j] = ci[j] + aik * bk[j];
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t blocked = n - n % 4;
    for (std::size_t i = 0; i < blocked; i += 4)
        for (std::size_t l = 0; l < 4; ++l) lane[l] = lane[l] + x[i + l] * y[i + l];
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) sum = sum + x[i] * y[i];
    return sum;
}

void lerp(double* y, const double* x, double lambda, std::size_t n) {
    const double keep = 1.0 - lambda;
    for (std::size_t i = 0; i < n; ++i) y[i] = lambda * x[i] + keep * y[i];
}

RelaxResult lap_relax(const double* cost, double u, const double* v, double* minv,
                      std::int64_t* way, const std::uint8_t* used, std::int64_t from,
                      std::size_t n) {
    RelaxResult best{std::numeric_limits<double>::infinity(), n};
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost[j] - u - v[j];
        if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = from;
        }
        if (minv[j] < best.delta) {
            best.delta = minv[j];
            best.col = j;
        }
    }
    return best;
}

void lap_shift(double* v, double* minv, const std::uint8_t* used, double delta, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j])
            v[j] = v[j] - delta;
        else
            minv[j] = minv[j] - delta;
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{Backend::scalar, gemm_acc, dot, lerp, lap_relax, lap_shift};
    return table;
}

}  // namespace sgmatch::kernels
