#pragma once

#include <cstddef>
#include <cstdint>
#include <array>
#include <utility>
#include <vector>

#include "sgmatch/graph.hpp"
#include "sgmatch/matcher.hpp"

namespace sgmatch::model {

/// Either one value for every pair or a dense symmetric table indexed by latent vertex ids.
class PairTable {
public:
    PairTable(double value = 0.0) : scalar_(value) {}
    /// `values` is size x size; only entries (i, j) with i < j are read.
    PairTable(std::size_t size, std::vector<double> values);

    bool is_scalar() const noexcept { return size_ == 0; }
    std::size_t size() const noexcept { return size_; }
    double operator()(std::size_t i, std::size_t j) const {
        if (size_ == 0) return scalar_;
        return i < j ? values_[i * size_ + j] : values_[j * size_ + i];
    }

private:
    double scalar_ = 0.0;
    std::size_t size_ = 0;
    std::vector<double> values_;
};

/// Correlated Bernoulli graph pair: latent vertices 0..K-1 form the shared core, 0..s-1 are seeds.
struct CorrelatedPairSpec {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t s = 0;
    PairTable edge_prob{0.5};    // over pairs of 0..max(m, n)-1
    PairTable correlation{0.0};  // over core pairs of 0..K-1
    std::uint64_t rng_seed = 0;

    /// Throws ParameterError when counts or probabilities are inconsistent.
    void validate() const;
};

struct GraphPair {
    Graph g;
    Graph h;
    /// Core correspondence after relabeling, (g vertex, h vertex) sorted by g vertex.
    std::vector<std::pair<std::size_t, std::size_t>> true_alignment;
    std::vector<std::size_t> core_g;  // sorted
    std::vector<std::size_t> core_h;  // sorted
    std::size_t s = 0;                // seeds are (i, i) for i < s
};

struct MatchabilityDiagnostics {
    double q = 0.0;
    double epsilon = 0.0;
    /// epsilon > 0, i.e. rho_ij > (1 - 2q)^2 for every core pair.
    bool theorem1_applicable = false;
    /// q is 0 or 1/2, outside the open interval the consistency result assumes.
    bool q_on_boundary = false;
};

/// Core pairs use three independent draws Y ~ Bern(p), Yh ~ Bern(rho + (1 - rho) p),
/// Yt ~ Bern((1 - rho) p): G gets Y and H gets Y ? Yh : Yt. Other pairs are independent
/// Bern(p) in each graph. Nonseed vertices of G and of H are then relabeled uniformly.
///
/// Randomness: pair {i, j} reads the stream (rng_seed, 1, i, j); the relabelings read
/// (rng_seed, 2, 0) and (rng_seed, 2, 1).
GraphPair sample_pair(const CorrelatedPairSpec& spec);

/// The sampled pair before relabeling, latent ids kept. Same draws as sample_pair.
GraphPair sample_pair_unrelabeled(const CorrelatedPairSpec& spec);

MatchabilityDiagnostics diagnostics(const CorrelatedPairSpec& spec);

/// Joint law of (edge in G, edge in H) for a core pair: {11, 10, 01, 00}.
std::array<double, 4> joint_edge_probabilities(double p, double rho);

/// Fraction of nonseed core vertices of G that `result` maps to their true partner; vertices
/// missing from the recovered core count as misses. Returns 1 when K = s.
double match_ratio(const MatchResult& result, const GraphPair& pair);

}  // namespace sgmatch::model
