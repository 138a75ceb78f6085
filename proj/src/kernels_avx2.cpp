// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.
#include <immintrin.h>

#include <limits>

#include "kernels_impl.hpp"

namespace sgmatch::kernels {
namespace {

// Four 4-wide column panels per pass keep 16 accumulators in registers.
void gemm_acc(const double* a, std::size_t lda, const double* b, std::size_t ldb, double* c,
              std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* ai = a + i * lda;
        double* ci = c + i * ldc;
        std::size_t j = 0;
        for (; j + 16 <= cols; j += 16) {
            __m256d c0 = _mm256_loadu_pd(ci + j);
            __m256d c1 = _mm256_loadu_pd(ci + j + 4);
            __m256d c2 = _mm256_loadu_pd(ci + j + 8);
            __m256d c3 = _mm256_loadu_pd(ci + j + 12);
            for (std::size_t k = 0; k < inner; ++k) {
                const __m256d aik = _mm256_broadcast_sd(ai + k);
                const double* bk = b + k * ldb + j;
                c0 = _mm256_add_pd(c0, _mm256_mul_pd(aik, _mm256_loadu_pd(bk)));
                c1 = _mm256_add_pd(c1, _mm256_mul_pd(aik, _mm256_loadu_pd(bk + 4)));
                c2 = _mm256_add_pd(c2, _mm256_mul_pd(aik, _mm256_loadu_pd(bk + 8)));
                c3 = _mm256_add_pd(c3, _mm256_mul_pd(aik, _mm256_loadu_pd(bk + 12)));
            }
            _mm256_storeu_pd(ci + j, c0);
            _mm256_storeu_pd(ci + j + 4, c1);
            _mm256_storeu_pd(ci + j + 8, c2);
            _mm256_storeu_pd(ci + j + 12, c3);
        }
        for (; j + 4 <= cols; j += 4) {
            __m256d c0 = _mm256_loadu_pd(ci + j);
            for (std::size_t k = 0; k < inner; ++k) {
                const __m256d aik = _mm256_broadcast_sd(ai + k);
                c0 = _mm256_add_pd(c0, _mm256_mul_pd(aik, _mm256_loadu_pd(b + k * ldb + j)));
            }
            _mm256_storeu_pd(ci + j, c0);
        }
        for (; j < cols; ++j) {
            double acc = ci[j];
            for (std::size_t k = 0; k < inner; ++k) acc = acc + ai[k] * b[k * ldb + j];
            ci[j] = acc;
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t blocked = n - n % 4;
    for (std::size_t i = 0; i < blocked; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocked; i < n; ++i) sum = sum + x[i] * y[i];
    return sum;
}

void lerp(double* y, const double* x, double lambda, std::size_t n) {
    const double keep = 1.0 - lambda;
    const __m256d l = _mm256_set1_pd(lambda);
    const __m256d k = _mm256_set1_pd(keep);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_mul_pd(l, _mm256_loadu_pd(x + i)),
                                        _mm256_mul_pd(k, _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = lambda * x[i] + keep * y[i];
}

// 0x00 / 0x01 bytes -> all-ones 64-bit lanes where the byte is set.
inline __m256d used_mask(const std::uint8_t* used) {
    std::int32_t packed;
    __builtin_memcpy(&packed, used, sizeof(packed));
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
}

RelaxResult lap_relax(const double* cost, double u, const double* v, double* minv,
                      std::int64_t* way, const std::uint8_t* used, std::int64_t from,
                      std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    const __m256d uu = _mm256_set1_pd(u);
    const __m256d vinf = _mm256_set1_pd(inf);
    const __m256i vfrom = _mm256_set1_epi64x(from);
    __m256d best = vinf;
    __m256i best_idx = _mm256_set1_epi64x(static_cast<std::int64_t>(n));
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i step = _mm256_set1_epi64x(4);

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d is_used = used_mask(used + j);
        const __m256d cur =
            _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(cost + j), uu), _mm256_loadu_pd(v + j));
        __m256d mv = _mm256_loadu_pd(minv + j);
        const __m256d better = _mm256_andnot_pd(is_used, _mm256_cmp_pd(cur, mv, _CMP_LT_OQ));
        mv = _mm256_blendv_pd(mv, cur, better);
        _mm256_storeu_pd(minv + j, mv);
        const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(way + j));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(way + j),
                            _mm256_castpd_si256(_mm256_blendv_pd(
                                _mm256_castsi256_pd(w), _mm256_castsi256_pd(vfrom), better)));

        const __m256d cand = _mm256_blendv_pd(mv, vinf, is_used);
        const __m256d lt = _mm256_cmp_pd(cand, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, cand, lt);
        best_idx = _mm256_castpd_si256(_mm256_blendv_pd(_mm256_castsi256_pd(best_idx),
                                                        _mm256_castsi256_pd(idx), lt));
        idx = _mm256_add_epi64(idx, step);
    }

    alignas(32) double lane_val[4];
    alignas(32) std::int64_t lane_idx[4];
    _mm256_store_pd(lane_val, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), best_idx);
    RelaxResult out{inf, n};
    for (int l = 0; l < 4; ++l) {
        const auto li = static_cast<std::size_t>(lane_idx[l]);
        if (lane_val[l] < out.delta || (lane_val[l] == out.delta && li < out.col)) {
            out.delta = lane_val[l];
            out.col = li;
        }
    }
    for (; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost[j] - u - v[j];
        if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = from;
        }
        if (minv[j] < out.delta) {
            out.delta = minv[j];
            out.col = j;
        }
    }
    return out;
}

void lap_shift(double* v, double* minv, const std::uint8_t* used, double delta, std::size_t n) {
    const __m256d d = _mm256_set1_pd(delta);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d is_used = used_mask(used + j);
        const __m256d vv = _mm256_loadu_pd(v + j);
        const __m256d mv = _mm256_loadu_pd(minv + j);
        _mm256_storeu_pd(v + j, _mm256_blendv_pd(vv, _mm256_sub_pd(vv, d), is_used));
        _mm256_storeu_pd(minv + j, _mm256_blendv_pd(_mm256_sub_pd(mv, d), mv, is_used));
    }
    for (; j < n; ++j) {
        if (used[j])
            v[j] = v[j] - delta;
        else
            minv[j] = minv[j] - delta;
    }
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
    static const KernelTable table{Backend::avx2, gemm_acc, dot, lerp, lap_relax, lap_shift};
    return table;
}

}  // namespace sgmatch::kernels
