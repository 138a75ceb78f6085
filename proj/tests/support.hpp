#pragma once

// Test-only reference computations. None of these call the solvers they are used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sgmatch/graph.hpp"
#include "sgmatch/matrix.hpp"
#include "sgmatch/rng.hpp"

namespace sgmatch::testing {

inline Matrix random_int_matrix(std::size_t r, std::size_t c, int lo, int hi, rng::Stream& st) {
    Matrix m(r, c);
    for (double& v : m.values()) v = lo + static_cast<int>(st.below(std::uint64_t(hi - lo + 1)));
    return m;
}

inline Matrix random_real_matrix(std::size_t r, std::size_t c, double lo, double hi, rng::Stream& st) {
    Matrix m(r, c);
    for (double& v : m.values()) v = lo + (hi - lo) * st.uniform();
    return m;
}

inline Graph random_graph(std::size_t order, double p, rng::Stream& st) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = i + 1; j < order; ++j)
            if (st.bernoulli(p)) edges.push_back({i, j});
    return Graph(order, edges);
}

/// Max of sum_i m(i, perm[i]) over all permutations, by std::next_permutation.
inline double brute_force_lap(const Matrix& m) {
    std::vector<std::size_t> perm(m.rows());
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e300;
    do {
        double v = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) v += m(i, perm[i]);
        best = std::max(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Max of trace(M^T X) over c x d partial permutations with e ones: every injective map from an
/// e-subset of rows (bitmask) into columns.
inline double brute_force_glap(const Matrix& m, std::size_t e) {
    const std::size_t c = m.rows(), d = m.cols();
    double best = -1e300;
    std::vector<std::size_t> rows;
    std::vector<char> used(d, 0);
    auto assign = [&](auto&& self, std::size_t idx, double acc) -> void {
        if (idx == rows.size()) {
            best = std::max(best, acc);
            return;
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j]) continue;
            used[j] = 1;
            self(self, idx + 1, acc + m(rows[idx], j));
            used[j] = 0;
        }
    };
    for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
        if (std::size_t(__builtin_popcount(mask)) != e) continue;
        rows.clear();
        for (std::size_t i = 0; i < c; ++i)
            if (mask & (1u << i)) rows.push_back(i);
        assign(assign, 0, 0.0);
    }
    return best;
}

/// Plain triple-loop product, independent of the kernel layer.
inline Matrix naive_multiply(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            long double acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += (long double)a(i, k) * b(k, j);
            c(i, j) = double(acc);
        }
    return c;
}

inline double naive_trace(const Matrix& a) {
    long double t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return double(t);
}

/// I_s (+) X as an explicit m x n matrix.
inline Matrix direct_sum_identity(std::size_t s, const Matrix& x) {
    Matrix out(s + x.rows(), s + x.cols());
    for (std::size_t i = 0; i < s; ++i) out(i, i) = 1.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) out(s + i, s + j) = x(i, j);
    return out;
}

/// trace A Y B Y^T with explicit products.
inline double naive_quadratic_trace(const Matrix& a, const Matrix& y, const Matrix& b) {
    return naive_trace(naive_multiply(naive_multiply(naive_multiply(a, y), b), y.transposed()));
}

/// Random point of D_{c,d,e}: a convex combination of `terms` random partial permutations.
inline Matrix random_substochastic(std::size_t c, std::size_t d, std::size_t e, std::size_t terms,
                                   rng::Stream& st) {
    Matrix z(c, d);
    std::vector<double> w(terms);
    double total = 0;
    for (double& x : w) total += (x = st.uniform() + 1e-3);
    std::vector<std::size_t> rows(c), cols(d);
    for (std::size_t t = 0; t < terms; ++t) {
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        st.shuffle(std::span(rows));
        st.shuffle(std::span(cols));
        for (std::size_t i = 0; i < e; ++i) z(rows[i], cols[i]) += w[t] / total;
    }
    return z;
}

}  // namespace sgmatch::testing
