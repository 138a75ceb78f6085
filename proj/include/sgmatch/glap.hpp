#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sgmatch/matrix.hpp"

namespace sgmatch {

/// A c x d 0/1 matrix with at most one 1 per row and column, stored as its e (row, col)
/// pairs sorted by row.
class PartialPermutation {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    PartialPermutation() = default;
    /// Validates ranges and injectivity; sorts the pairs by row.
    PartialPermutation(std::size_t rows, std::size_t cols, std::vector<Pair> pairs);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }

    Matrix to_matrix() const;

    /// trace(M^T X) for this X.
    double inner(ConstMatrixView m) const;

    friend bool operator==(const PartialPermutation&, const PartialPermutation&) = default;
    friend auto operator<=>(const PartialPermutation&, const PartialPermutation&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Pair> pairs_;
};

/// Padded square profit matrix whose assignment problem contains the size-e generalized
/// problem in its upper-left c x d block:
///
///     [ M              hi * 1(c, c-e) ]
///     [ hi * 1(d-e, d) lo * 1(d-e, c-e) ]
///
/// with lo = min(M) - 1 and hi = max(M) + 1. Returns M unchanged when e = c = d.
/// Throws ParameterError unless 1 <= e <= min(c, d).
Matrix pad_matrix(ConstMatrixView m, std::size_t e);

/// argmax of trace(M^T X) over c x d partial permutations with exactly e ones.
PartialPermutation solve_glap(ConstMatrixView m, std::size_t e);

inline Matrix pad_matrix(const Matrix& m, std::size_t e) { return pad_matrix(m.view(), e); }
inline PartialPermutation solve_glap(const Matrix& m, std::size_t e) { return solve_glap(m.view(), e); }

}  // namespace sgmatch
