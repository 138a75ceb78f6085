#pragma once

#include <cstddef>
#include <vector>

#include "sgmatch/matrix.hpp"

namespace sgmatch {

/// Full assignment of rows to columns: target[i] is the column given to row i.
struct Assignment {
    std::vector<std::size_t> target;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Sum of profit(i, target[i]).
double assignment_value(ConstMatrixView profit, const Assignment& a);

/// Maximizes sum_i profit(i, target[i]) over all permutations.
///
/// Shortest augmenting path Hungarian method on the negated matrix, O(r^3). Rows are inserted
/// in increasing order and each Dijkstra step settles the lowest-indexed column among those
/// with minimal reduced cost, so ties resolve deterministically. The method keeps dual
/// feasibility by construction and needs no comparison tolerance.
///
/// Throws DimensionError for non-square input and DomainError for NaN/infinite entries.
Assignment solve_lap(ConstMatrixView profit);

inline Assignment solve_lap(const Matrix& profit) { return solve_lap(profit.view()); }

}  // namespace sgmatch
