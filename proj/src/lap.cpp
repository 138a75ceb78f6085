#include "sgmatch/lap.hpp"

#include <cstdint>
#include <limits>
#include <string>

#include "sgmatch/kernels.hpp"

namespace sgmatch {

double assignment_value(ConstMatrixView profit, const Assignment& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.target.size(); ++i) sum += profit(i, a.target[i]);
    return sum;
}

Assignment solve_lap(ConstMatrixView profit) {
    if (profit.rows != profit.cols)
        throw DimensionError("solve_lap: profit matrix is " + std::to_string(profit.rows) + "x" +
                             std::to_string(profit.cols));
    require_finite(profit, "solve_lap");
    const std::size_t n = profit.rows;
    if (n == 0) return {};

    const auto& k = kernels::active();
    const double inf = std::numeric_limits<double>::infinity();

    Matrix cost(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cost(i, j) = -profit(i, j);

    // 1-based potentials and matching; column 0 is the virtual source of each augmentation.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0);
    std::vector<std::int64_t> way(n + 1, 0);
    std::vector<std::uint8_t> used(n + 1);
    std::vector<std::size_t> used_cols;
    used_cols.reserve(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        used_cols.clear();
        do {
            used[j0] = 1;
            used_cols.push_back(j0);
            const std::size_t i0 = p[j0];
            const auto r = k.lap_relax(cost.row(i0 - 1), u[i0], v.data() + 1, minv.data() + 1,
                                       way.data() + 1, used.data() + 1,
                                       static_cast<std::int64_t>(j0), n);
            const double delta = r.delta;
            const std::size_t j1 = r.col + 1;
            for (std::size_t j : used_cols) u[p[j]] += delta;
            v[0] -= delta;
            k.lap_shift(v.data() + 1, minv.data() + 1, used.data() + 1, delta, n);
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const auto j1 = static_cast<std::size_t>(way[j0]);
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    Assignment out;
    out.target.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) out.target[p[j] - 1] = j - 1;
    return out;
}

}  // namespace sgmatch
