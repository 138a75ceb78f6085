#include "sgmatch/glap.hpp"

#include <algorithm>
#include <string>

#include "sgmatch/lap.hpp"

namespace sgmatch {

PartialPermutation::PartialPermutation(std::size_t rows, std::size_t cols, std::vector<Pair> pairs)
    : rows_(rows), cols_(cols), pairs_(std::move(pairs)) {
    std::vector<char> row_seen(rows, 0), col_seen(cols, 0);
    for (const auto& [r, c] : pairs_) {
        if (r >= rows || c >= cols)
            throw IndexError("partial permutation pair (" + std::to_string(r) + ", " +
                             std::to_string(c) + ") outside " + std::to_string(rows) + "x" +
                             std::to_string(cols));
        if (row_seen[r]++ || col_seen[c]++)
            throw DomainError("partial permutation repeats a row or column index");
    }
    std::sort(pairs_.begin(), pairs_.end());
}

Matrix PartialPermutation::to_matrix() const {
    Matrix x(rows_, cols_);
    for (const auto& [r, c] : pairs_) x(r, c) = 1.0;
    return x;
}

double PartialPermutation::inner(ConstMatrixView m) const {
    double sum = 0.0;
    for (const auto& [r, c] : pairs_) sum += m(r, c);
    return sum;
}

Matrix pad_matrix(ConstMatrixView m, std::size_t e) {
    const std::size_t c = m.rows, d = m.cols;
    if (e == 0 || e > std::min(c, d))
        throw ParameterError("pad_matrix: need 1 <= e <= min(c, d), got e=" + std::to_string(e) +
                             " for " + std::to_string(c) + "x" + std::to_string(d));
    require_finite(m, "pad_matrix");

    double lo = m(0, 0), hi = m(0, 0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            lo = std::min(lo, m(i, j));
            hi = std::max(hi, m(i, j));
        }
    lo -= 1.0;
    hi += 1.0;

    const std::size_t size = c + d - e;
    Matrix out(size, size, hi);
    for (std::size_t i = 0; i < c; ++i) std::copy_n(m.row(i), d, out.data() + i * size);
    for (std::size_t i = c; i < size; ++i)
        for (std::size_t j = d; j < size; ++j) out(i, j) = lo;
    return out;
}

PartialPermutation solve_glap(ConstMatrixView m, std::size_t e) {
    const Matrix padded = pad_matrix(m, e);
    const Assignment full = solve_lap(padded);
    std::vector<PartialPermutation::Pair> pairs;
    pairs.reserve(e);
    for (std::size_t i = 0; i < m.rows; ++i)
        if (full.target[i] < m.cols) pairs.emplace_back(i, full.target[i]);
    // The corner block is never assigned, so exactly e pairs land in the upper-left block.
    if (pairs.size() != e)
        throw DomainError("solve_glap: padded assignment yielded " + std::to_string(pairs.size()) +
                          " pairs, expected " + std::to_string(e));
    return PartialPermutation(m.rows, m.cols, std::move(pairs));
}

}  // namespace sgmatch
