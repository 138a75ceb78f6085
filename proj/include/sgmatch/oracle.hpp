#pragma once

// Exhaustive solvers for tiny instances. They refuse (BudgetExceeded) rather than truncate.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sgmatch/glap.hpp"
#include "sgmatch/graph_model.hpp"
#include "sgmatch/matcher.hpp"

namespace sgmatch::oracle {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// |Pi_{c,d,e}| = C(c, e) C(d, e) e!, as a double so that huge counts do not wrap.
double count_partial_permutations(std::size_t c, std::size_t d, std::size_t e);

using PairList = std::span<const PartialPermutation::Pair>;

/// Calls visit once per element of Pi_{c,d,e}, pairs sorted by row. Rows are chosen in
/// increasing order and columns in increasing order of first use, so the visiting order is
/// lexicographic in the pair lists.
void for_each_partial_permutation(std::size_t c, std::size_t d, std::size_t e,
                                  const std::function<void(PairList)>& visit,
                                  std::uint64_t budget = kDefaultBudget);

std::vector<PartialPermutation> enumerate_partial_permutations(
    std::size_t c, std::size_t d, std::size_t e, std::uint64_t budget = kDefaultBudget);

struct MatchOptimum {
    long long value = 0;
    std::vector<PartialPermutation> argmax;  // lexicographic order
};

/// Exact max of trace A X B X^T over Pi_{m,n,K} and every maximizer.
MatchOptimum brute_force_match(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k,
                               std::uint64_t budget = kDefaultBudget);

struct PQOptimum {
    long long value = 0;
    std::vector<std::pair<PartialPermutation, PartialPermutation>> argmax;
};

/// Exact max of trace A P B Q^T over ordered pairs (P, Q); the budget bounds |Pi|^2.
PQOptimum brute_force_pq(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k,
                         std::uint64_t budget = kDefaultBudget);

struct Theorem1Options {
    std::size_t trials = 100;
    bool check_pq = false;
    double diag_value = 0.0;
    std::uint64_t budget = kDefaultBudget;
    std::size_t threads = 1;
};

struct Theorem1Report {
    std::size_t trials = 0;
    std::size_t recovered = 0;     // argmax over Pi is exactly the true core alignment
    std::size_t recovered_pq = 0;  // argmax over Pi x Pi is exactly (truth, truth); 0 unless checked
    double frequency() const { return trials ? double(recovered) / double(trials) : 0.0; }
    double frequency_pq() const { return trials ? double(recovered_pq) / double(trials) : 0.0; }
};

/// Samples `trials` pairs from spec (trial t uses seed derive(spec.rng_seed, {t})) and counts how
/// often the exact optimum is unique and equals the latent core alignment.
Theorem1Report verify_theorem1(const model::CorrelatedPairSpec& spec, const Theorem1Options& opts);

}  // namespace sgmatch::oracle
