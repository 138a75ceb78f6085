#include "sgmatch/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgmatch/kernels.hpp"
#include "sgmatch/rng.hpp"

namespace sgmatch {

SignedAdjacency build_signed_adjacency(std::span<const Edge> edges, std::size_t order,
                                       double diag_value) {
    if (diag_value != -1.0 && diag_value != 0.0)
        throw DomainError("signed adjacency diagonal must be -1 or 0");
    SignedAdjacency out;
    out.diag_ = diag_value;
    out.entries_ = Matrix(order, order, -1.0);
    for (const Edge& e : edges) {
        if (e.u >= order || e.v >= order)
            throw IndexError("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             "} outside order " + std::to_string(order));
        if (e.u == e.v) throw DomainError("self-loop at vertex " + std::to_string(e.u));
        out.entries_(e.u, e.v) = out.entries_(e.v, e.u) = 1.0;
    }
    for (std::size_t i = 0; i < order; ++i) out.entries_(i, i) = diag_value;
    return out;
}

namespace {

void gemm_into(Matrix& c, ConstMatrixView a, ConstMatrixView b) {
    c = Matrix(a.rows, b.cols);
    if (a.rows && b.cols && a.cols)
        kernels::active().gemm_acc(a.data, a.stride, b.data, b.stride, c.data(), c.cols(), a.rows,
                                   a.cols, b.cols);
}

// Seed/nonseed partition of A and B, plus everything that does not depend on the iterate.
struct Blocks {
    std::size_t s, c, d;
    ConstMatrixView a22, b22;
    Matrix seed_term;  // A21 B12
    double constant;   // trace A11 B11

    Blocks(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t seeds)
        : s(seeds), c(a.order() - seeds), d(b.order() - seeds) {
        const Matrix& ea = a.entries();
        const Matrix& eb = b.entries();
        a22 = ea.block(s, s, c, c);
        b22 = eb.block(s, s, d, d);
        gemm_into(seed_term, ea.block(s, 0, c, s), eb.block(0, s, s, d));
        constant = 0.0;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) constant += ea(i, j) * eb(i, j);
    }

    // A22 X B22
    Matrix quadratic(const Matrix& x) const {
        Matrix t, p;
        gemm_into(t, a22, x.view());
        gemm_into(p, t.view(), b22);
        return p;
    }

    // sum over pairs (r, c), (r', c') of A22(r, r') B22(c, c')
    double quadratic(const PartialPermutation& x) const {
        double sum = 0.0;
        for (const auto& [r, cc] : x.pairs())
            for (const auto& [r2, c2] : x.pairs()) sum += a22(r, r2) * b22(cc, c2);
        return sum;
    }

    void check(const Matrix& x, const char* what) const {
        if (x.rows() != c || x.cols() != d)
            throw DimensionError(std::string(what) + ": expected " + std::to_string(c) + "x" +
                                 std::to_string(d) + " nonseed block, got " +
                                 std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
};

void check_seeds(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t s) {
    if (s > a.order() || s > b.order())
        throw DimensionError("seed count exceeds graph order");
}

double relaxed_objective(const Blocks& blk, const Matrix& z, const Matrix& p) {
    return blk.constant + 2.0 * frobenius_dot(blk.seed_term, z) + frobenius_dot(p, z);
}

std::size_t signed_disagreements(const SignedAdjacency& a, const SignedAdjacency& b,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& phi) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j)
            if (a(phi[i].first, phi[j].first) != b(phi[i].second, phi[j].second)) ++count;
    return count;
}

struct Run {
    Matrix z;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

Run frank_wolfe(const Blocks& blk, Matrix z, std::size_t e, double tol, std::size_t max_iters,
                const SolverOptions& opts, std::size_t start) {
    const auto& k = kernels::active();
    Run run;
    Matrix xstar(blk.c, blk.d);
    if (opts.on_iterate) opts.on_iterate(start, 0, z);
    while (run.iterations < max_iters) {
        const Matrix p = blk.quadratic(z);
        Matrix grad = p;
        for (std::size_t i = 0; i < grad.values().size(); ++i)
            grad.data()[i] = blk.seed_term.data()[i] + p.data()[i];
        run.trace.push_back(relaxed_objective(blk, z, p));

        const PartialPermutation vertex = solve_glap(grad, e);

        // Direction D = X* - Z; the sparse X* keeps every coefficient O(c d + e^2).
        const double zz = frobenius_dot(z, z);
        const double pz = frobenius_dot(p, z);
        const double gz = frobenius_dot(grad, z);
        const double curvature = blk.quadratic(vertex) - 2.0 * vertex.inner(p.view()) + pz;
        const double slope = 2.0 * (vertex.inner(grad.view()) - gz);
        const double lambda = best_step({curvature, slope});
        const double dist_sq = std::max(0.0, zz - 2.0 * vertex.inner(z.view()) + double(e));

        std::fill(xstar.values().begin(), xstar.values().end(), 0.0);
        for (const auto& [r, c] : vertex.pairs()) xstar(r, c) = 1.0;
        k.lerp(z.data(), xstar.data(), lambda, z.values().size());
        ++run.iterations;
        if (opts.on_iterate) opts.on_iterate(start, run.iterations, z);

        if (lambda * std::sqrt(dist_sq) <= tol) {
            run.converged = true;
            break;
        }
    }
    run.trace.push_back(relaxed_objective(blk, z, blk.quadratic(z)));
    run.z = std::move(z);
    return run;
}

Matrix random_start(std::size_t c, std::size_t d, std::size_t e, std::uint64_t seed) {
    rng::Stream stream(seed);
    std::vector<std::size_t> rows(c), cols(d);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    stream.shuffle(std::span(rows));
    stream.shuffle(std::span(cols));
    const double flat = double(e) / (double(c) * double(d));
    Matrix z(c, d, 0.5 * flat);
    for (std::size_t i = 0; i < e; ++i) z(rows[i], cols[i]) += 0.5;
    return z;
}

}  // namespace

double objective(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& x,
                 std::size_t s) {
    check_seeds(a, b, s);
    const Blocks blk(a, b, s);
    blk.check(x, "objective");
    return relaxed_objective(blk, x, blk.quadratic(x));
}

Matrix gradient_step_matrix(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& z,
                            std::size_t s) {
    check_seeds(a, b, s);
    const Blocks blk(a, b, s);
    blk.check(z, "gradient_step_matrix");
    Matrix m = blk.quadratic(z);
    for (std::size_t i = 0; i < m.values().size(); ++i) m.data()[i] += blk.seed_term.data()[i];
    return m;
}

LineCoefficients line_coefficients(const SignedAdjacency& a, const SignedAdjacency& b,
                                   const Matrix& z, const Matrix& xstar, std::size_t s) {
    check_seeds(a, b, s);
    const Blocks blk(a, b, s);
    blk.check(z, "line_search");
    blk.check(xstar, "line_search");
    Matrix dir = xstar;
    for (std::size_t i = 0; i < dir.values().size(); ++i) dir.data()[i] -= z.data()[i];
    Matrix grad = blk.quadratic(z);
    for (std::size_t i = 0; i < grad.values().size(); ++i)
        grad.data()[i] += blk.seed_term.data()[i];
    return {frobenius_dot(blk.quadratic(dir), dir), 2.0 * frobenius_dot(grad, dir)};
}

double best_step(LineCoefficients c) {
    if (c.curvature < 0.0) return std::clamp(-c.slope / (2.0 * c.curvature), 0.0, 1.0);
    return c.curvature + c.slope >= 0.0 ? 1.0 : 0.0;
}

double line_search(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& z,
                   const Matrix& xstar, std::size_t s) {
    return best_step(line_coefficients(a, b, z, xstar, s));
}

PartialPermutation project_to_partial_permutation(const Matrix& z, std::size_t e) {
    return solve_glap(z, e);
}

bool is_substochastic(const Matrix& z, double mass, double tol) {
    std::vector<double> col(z.cols(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < z.cols(); ++j) {
            const double v = z(i, j);
            if (!(v >= -tol)) return false;
            row += v;
            col[j] += v;
        }
        if (row > 1.0 + tol) return false;
        total += row;
    }
    for (double c : col)
        if (c > 1.0 + tol) return false;
    return std::abs(total - mass) <= tol;
}

MatchResult ssgm(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k, std::size_t s,
                 const SolverOptions& opts) {
    const std::size_t m = a.order(), n = b.order();
    if (s > k) throw ParameterError("ssgm: more seeds than core vertices");
    if (k > std::min(m, n)) throw ParameterError("ssgm: K exceeds min(m, n)");
    if (a.diag_value() != b.diag_value())
        throw ParameterError("ssgm: adjacency matrices use different diagonal values");
    if (opts.max_iters < 1) throw ParameterError("ssgm: max_iters must be at least 1");
    if (opts.tol < 0.0) throw ParameterError("ssgm: negative tolerance");

    MatchResult out;
    for (std::size_t i = 0; i < s; ++i) out.phi.emplace_back(i, i);

    const std::size_t e = k - s;
    if (e > 0) {
        const Blocks blk(a, b, s);
        const double tol = opts.tol > 0.0 ? opts.tol : 1e-6 * std::sqrt(double(e));
        const double flat = double(e) / (double(blk.c) * double(blk.d));

        Run best;
        double best_value = 0.0;
        const std::size_t starts = std::max<std::size_t>(1, opts.restarts);
        for (std::size_t r = 0; r < starts; ++r) {
            Matrix z0 = r == 0 ? Matrix(blk.c, blk.d, flat)
                               : random_start(blk.c, blk.d, e, rng::derive(opts.restart_seed, {r}));
            Run run = frank_wolfe(blk, std::move(z0), e, tol, opts.max_iters, opts, r);
            const PartialPermutation x = project_to_partial_permutation(run.z, e);
            const double value = relaxed_objective(blk, x.to_matrix(), blk.quadratic(x.to_matrix()));
            if (r == 0 || value > best_value) {
                best_value = value;
                best = std::move(run);
            }
        }
        const PartialPermutation x = project_to_partial_permutation(best.z, e);
        for (const auto& [r, c] : x.pairs()) out.phi.emplace_back(s + r, s + c);
        out.iterations = best.iterations;
        out.converged = best.converged;
        out.objective_trace = std::move(best.trace);
        out.objective = best_value;
    } else {
        out.objective = objective(a, b, Matrix(m - s, n - s), s);
    }

    std::sort(out.phi.begin(), out.phi.end());
    for (const auto& [g, h] : out.phi) {
        out.omega.push_back(g);
        out.lambda.push_back(h);
    }
    std::sort(out.lambda.begin(), out.lambda.end());
    out.disagreements = signed_disagreements(a, b, out.phi);
    return out;
}

MatchResult ssgm(const Graph& g, const Graph& h, std::size_t k, std::size_t s,
                 const SolverOptions& opts) {
    return ssgm(build_signed_adjacency(g, opts.diag_value), build_signed_adjacency(h, opts.diag_value),
                k, s, opts);
}

std::size_t count_disagreements(const Graph& g, const Graph& h,
                                std::span<const std::pair<std::size_t, std::size_t>> phi) {
    std::vector<char> seen_g(g.order(), 0), seen_h(h.order(), 0);
    for (const auto& [v, w] : phi) {
        if (v >= g.order() || w >= h.order()) throw IndexError("count_disagreements: vertex out of range");
        if (seen_g[v]++ || seen_h[w]++) throw DomainError("count_disagreements: phi is not injective");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j)
            if (g.adjacent(phi[i].first, phi[j].first) != h.adjacent(phi[i].second, phi[j].second))
                ++count;
    return count;
}

}  // namespace sgmatch
