// AArch64 only. Two float64x2 registers emulate the four canonical lanes.
#include <arm_neon.h>

#include <limits>

#include "kernels_impl.hpp"

namespace sgmatch::kernels {
namespace {

void gemm_acc(const double* a, std::size_t lda, const double* b, std::size_t ldb, double* c,
              std::size_t ldc, std::size_t rows, std::size_t inner, std::size_t cols) {
    for (std::size_t i = 0; i < rows; ++i) {
        const double* ai = a + i * lda;
        double* ci = c + i * ldc;
        std::size_t j = 0;
        for (; j + 8 <= cols; j += 8) {
            float64x2_t c0 = vld1q_f64(ci + j);
            float64x2_t c1 = vld1q_f64(ci + j + 2);
            float64x2_t c2 = vld1q_f64(ci + j + 4);
            float64x2_t c3 = vld1q_f64(ci + j + 6);
            for (std::size_t k = 0; k < inner; ++k) {
                const float64x2_t aik = vdupq_n_f64(ai[k]);
                const double* bk = b + k * ldb + j;
                c0 = vaddq_f64(c0, vmulq_f64(aik, vld1q_f64(bk)));
                c1 = vaddq_f64(c1, vmulq_f64(aik, vld1q_f64(bk + 2)));
                c2 = vaddq_f64(c2, vmulq_f64(aik, vld1q_f64(bk + 4)));
                c3 = vaddq_f64(c3, vmulq_f64(aik, vld1q_f64(bk + 6)));
            }
            vst1q_f64(ci + j, c0);
            vst1q_f64(ci + j + 2, c1);
            vst1q_f64(ci + j + 4, c2);
            vst1q_f64(ci + j + 6, c3);
        }
        for (; j < cols; ++j) {
            double acc = ci[j];
            for (std::size_t k = 0; k < inner; ++k) acc = acc + ai[k] * b[k * ldb + j];
            ci[j] = acc;
        }
    }
}

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    const std::size_t blocked = n - n % 4;
    for (std::size_t i = 0; i < blocked; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double sum = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
                 (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = blocked; i < n; ++i) sum = sum + x[i] * y[i];
    return sum;
}

void lerp(double* y, const double* x, double lambda, std::size_t n) {
    const double keep = 1.0 - lambda;
    const float64x2_t l = vdupq_n_f64(lambda);
    const float64x2_t k = vdupq_n_f64(keep);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vmulq_f64(l, vld1q_f64(x + i)), vmulq_f64(k, vld1q_f64(y + i))));
    for (; i < n; ++i) y[i] = lambda * x[i] + keep * y[i];
}

inline uint64x2_t used_mask(const std::uint8_t* used) {
    const uint64_t lanes[2] = {used[0] ? ~0ull : 0ull, used[1] ? ~0ull : 0ull};
    return vld1q_u64(lanes);
}

RelaxResult lap_relax(const double* cost, double u, const double* v, double* minv,
                      std::int64_t* way, const std::uint8_t* used, std::int64_t from,
                      std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    const float64x2_t uu = vdupq_n_f64(u);
    const float64x2_t vinf = vdupq_n_f64(inf);
    const int64x2_t vfrom = vdupq_n_s64(from);
    float64x2_t best = vinf;
    int64x2_t best_idx = vdupq_n_s64(static_cast<std::int64_t>(n));
    const int64_t start[2] = {0, 1};
    int64x2_t idx = vld1q_s64(start);
    const int64x2_t step = vdupq_n_s64(2);

    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const uint64x2_t is_used = used_mask(used + j);
        const float64x2_t cur = vsubq_f64(vsubq_f64(vld1q_f64(cost + j), uu), vld1q_f64(v + j));
        float64x2_t mv = vld1q_f64(minv + j);
        const uint64x2_t better = vbicq_u64(vcltq_f64(cur, mv), is_used);
        mv = vbslq_f64(better, cur, mv);
        vst1q_f64(minv + j, mv);
        vst1q_s64(way + j, vbslq_s64(better, vfrom, vld1q_s64(way + j)));
        const float64x2_t cand = vbslq_f64(is_used, vinf, mv);
        const uint64x2_t lt = vcltq_f64(cand, best);
        best = vbslq_f64(lt, cand, best);
        best_idx = vbslq_s64(lt, idx, best_idx);
        idx = vaddq_s64(idx, step);
    }

    RelaxResult out{inf, n};
    for (int l = 0; l < 2; ++l) {
        const double lv = l == 0 ? vgetq_lane_f64(best, 0) : vgetq_lane_f64(best, 1);
        const auto li = static_cast<std::size_t>(l == 0 ? vgetq_lane_s64(best_idx, 0)
                                                        : vgetq_lane_s64(best_idx, 1));
        if (lv < out.delta || (lv == out.delta && li < out.col)) {
            out.delta = lv;
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
    const float64x2_t d = vdupq_n_f64(delta);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const uint64x2_t is_used = used_mask(used + j);
        const float64x2_t vv = vld1q_f64(v + j);
        const float64x2_t mv = vld1q_f64(minv + j);
        vst1q_f64(v + j, vbslq_f64(is_used, vsubq_f64(vv, d), vv));
        vst1q_f64(minv + j, vbslq_f64(is_used, mv, vsubq_f64(mv, d)));
    }
    for (; j < n; ++j) {
        if (used[j])
            v[j] = v[j] - delta;
        else
            minv[j] = minv[j] - delta;
    }
}

}  // namespace

const KernelTable& neon_table_unchecked() {
    static const KernelTable table{Backend::neon, gemm_acc, dot, lerp, lap_relax, lap_shift};
    return table;
}

}  // namespace sgmatch::kernels
