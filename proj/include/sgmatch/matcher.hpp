#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sgmatch/glap.hpp"
#include "sgmatch/graph.hpp"
#include "sgmatch/matrix.hpp"

namespace sgmatch {

/// Symmetric matrix with +1 for edges, -1 for non-edges and a common diagonal value.
class SignedAdjacency {
public:
    SignedAdjacency() = default;

    std::size_t order() const noexcept { return entries_.rows(); }
    double diag_value() const noexcept { return diag_; }
    const Matrix& entries() const noexcept { return entries_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    friend SignedAdjacency build_signed_adjacency(std::span<const Edge>, std::size_t, double);

private:
    Matrix entries_;
    double diag_ = -1.0;
};

/// Throws DomainError on a self-loop or a diagonal value other than -1 or 0, IndexError on an
/// out-of-range endpoint.
SignedAdjacency build_signed_adjacency(std::span<const Edge> edges, std::size_t order,
                                       double diag_value = -1.0);

inline SignedAdjacency build_signed_adjacency(const Graph& g, double diag_value = -1.0) {
    return build_signed_adjacency(g.edges(), g.order(), diag_value);
}

struct SolverOptions {
    /// Frobenius threshold on the iterate change; 0 selects 1e-6 * sqrt(K - s).
    double tol = 0.0;
    std::size_t max_iters = 100;
    /// Diagonal used when the matcher builds signed matrices from graphs.
    double diag_value = -1.0;
    /// Number of Frank-Wolfe starts. The first is the flat matrix; later ones average it
    /// with a random partial permutation drawn from `restart_seed`.
    std::size_t restarts = 1;
    std::uint64_t restart_seed = 0;
    /// Called with (start, iteration, Z) for every iterate, Z_0 included.
    std::function<void(std::size_t, std::size_t, const Matrix&)> on_iterate;
};

struct MatchResult {
    std::vector<std::size_t> omega;   // sorted G vertices
    std::vector<std::size_t> lambda;  // sorted H vertices
    std::vector<std::pair<std::size_t, std::size_t>> phi;  // (g, h), sorted by g
    double objective = 0.0;
    std::size_t disagreements = 0;
    std::size_t iterations = 0;
    bool converged = true;
    /// Relaxed objective at every iterate Z_0, Z_1, ... of the returned start.
    std::vector<double> objective_trace;
};

/// trace A (I_s + X) B (I_s + X)^T evaluated blockwise, X of shape (m-s) x (n-s).
double objective(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& x,
                 std::size_t s);

/// A21 B12 + A22 Z B22: half the gradient of the relaxed objective at Z.
Matrix gradient_step_matrix(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& z,
                            std::size_t s);

/// g(lambda) - g(0) = curvature * lambda^2 + slope * lambda along Z + lambda (X* - Z).
struct LineCoefficients {
    double curvature;
    double slope;
};

LineCoefficients line_coefficients(const SignedAdjacency& a, const SignedAdjacency& b,
                                   const Matrix& z, const Matrix& xstar, std::size_t s);

/// Maximizer of curvature * l^2 + slope * l over [0, 1]. Concave: clamped vertex. Otherwise the
/// better endpoint, preferring 1 on ties.
double best_step(LineCoefficients c);

/// Exact maximizer over [0, 1] of the relaxed objective on the segment from Z to X*.
double line_search(const SignedAdjacency& a, const SignedAdjacency& b, const Matrix& z,
                   const Matrix& xstar, std::size_t s);

/// Nearest (Frobenius) partial permutation with e ones, found as argmax trace Z^T X.
PartialPermutation project_to_partial_permutation(const Matrix& z, std::size_t e);

/// Nonnegative within tol, row and column sums at most 1 + tol, total within tol of mass.
bool is_substochastic(const Matrix& z, double mass, double tol = 1e-9);

/// Seeded subgraph-subgraph matching by Frank-Wolfe. Seeds are vertices 0..s-1 of both graphs,
/// aligned identically. Throws ParameterError unless s <= K <= min(m, n) and both matrices
/// share a diagonal value.
MatchResult ssgm(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k, std::size_t s,
                 const SolverOptions& opts = {});

MatchResult ssgm(const Graph& g, const Graph& h, std::size_t k, std::size_t s,
                 const SolverOptions& opts = {});

/// Unordered pairs {v, v'} of phi's domain whose adjacency differs across phi.
/// Throws DomainError if phi is not injective.
std::size_t count_disagreements(const Graph& g, const Graph& h,
                                std::span<const std::pair<std::size_t, std::size_t>> phi);

}  // namespace sgmatch
