#include "sgmatch/oracle.hpp"

#include <cmath>
#include <string>

#include "sgmatch/parallel.hpp"
#include "sgmatch/rng.hpp"

namespace sgmatch::oracle {

double count_partial_permutations(std::size_t c, std::size_t d, std::size_t e) {
    if (e > std::min(c, d)) return 0.0;
    double count = 1.0;
    for (std::size_t i = 0; i < e; ++i) count *= double(c - i) / double(i + 1);  // C(c, e)
    count = std::round(count);
    for (std::size_t i = 0; i < e; ++i) count *= double(d - i);  // d! / (d - e)!
    return count;
}

namespace {

void check_request(std::size_t c, std::size_t d, std::size_t e, double count, std::uint64_t budget) {
    if (e > std::min(c, d))
        throw ParameterError("partial permutation size " + std::to_string(e) + " exceeds min(" +
                             std::to_string(c) + ", " + std::to_string(d) + ")");
    if (count > double(budget)) throw BudgetExceeded(count, budget);
}

// Depth-first walk over rows; push(r, col) / pop() bracket each choice and leaf() fires once per
// complete element.
template <class Push, class Pop, class Leaf>
class Walker {
public:
    Walker(std::size_t c, std::size_t d, std::size_t e, Push push, Pop pop, Leaf leaf)
        : c_(c), d_(d), e_(e), col_used_(d, 0), push_(push), pop_(pop), leaf_(leaf) {}

    void run() { step(0, 0); }

private:
    void step(std::size_t row, std::size_t picked) {
        if (picked == e_) {
            leaf_();
            return;
        }
        if (row == c_) return;
        for (std::size_t col = 0; col < d_; ++col) {
            if (col_used_[col]) continue;
            col_used_[col] = 1;
            push_(row, col);
            step(row + 1, picked + 1);
            pop_();
            col_used_[col] = 0;
        }
        if (c_ - row - 1 >= e_ - picked) step(row + 1, picked);
    }

    std::size_t c_, d_, e_;
    std::vector<char> col_used_;
    Push push_;
    Pop pop_;
    Leaf leaf_;
};

template <class Push, class Pop, class Leaf>
void walk(std::size_t c, std::size_t d, std::size_t e, Push push, Pop pop, Leaf leaf) {
    Walker<Push, Pop, Leaf>(c, d, e, push, pop, leaf).run();
}

std::vector<long long> integer_entries(const SignedAdjacency& a) {
    std::vector<long long> out(a.order() * a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) out[i * a.order() + j] = std::llround(a(i, j));
    return out;
}

}  // namespace

void for_each_partial_permutation(std::size_t c, std::size_t d, std::size_t e,
                                  const std::function<void(PairList)>& visit, std::uint64_t budget) {
    check_request(c, d, e, count_partial_permutations(c, d, e), budget);
    std::vector<PartialPermutation::Pair> stack;
    stack.reserve(e);
    walk(
        c, d, e, [&](std::size_t r, std::size_t col) { stack.emplace_back(r, col); },
        [&] { stack.pop_back(); }, [&] { visit(PairList(stack)); });
}

std::vector<PartialPermutation> enumerate_partial_permutations(std::size_t c, std::size_t d,
                                                               std::size_t e, std::uint64_t budget) {
    std::vector<PartialPermutation> out;
    for_each_partial_permutation(
        c, d, e,
        [&](PairList pairs) {
            out.emplace_back(c, d, std::vector<PartialPermutation::Pair>(pairs.begin(), pairs.end()));
        },
        budget);
    return out;
}

MatchOptimum brute_force_match(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k,
                               std::uint64_t budget) {
    const std::size_t m = a.order(), n = b.order();
    check_request(m, n, k, count_partial_permutations(m, n, k), budget);
    const auto ea = integer_entries(a), eb = integer_entries(b);

    MatchOptimum best;
    bool any = false;
    std::vector<PartialPermutation::Pair> stack;
    std::vector<long long> partial{0};
    walk(
        m, n, k,
        [&](std::size_t r, std::size_t c) {
            long long add = ea[r * m + r] * eb[c * n + c];
            for (const auto& [r2, c2] : stack) add += 2 * ea[r * m + r2] * eb[c * n + c2];
            stack.emplace_back(r, c);
            partial.push_back(partial.back() + add);
        },
        [&] {
            stack.pop_back();
            partial.pop_back();
        },
        [&] {
            const long long v = partial.back();
            if (!any || v > best.value) {
                any = true;
                best.value = v;
                best.argmax.clear();
            }
            if (v == best.value) best.argmax.emplace_back(m, n, stack);
        });
    return best;
}

PQOptimum brute_force_pq(const SignedAdjacency& a, const SignedAdjacency& b, std::size_t k,
                         std::uint64_t budget) {
    const std::size_t m = a.order(), n = b.order();
    const double count = count_partial_permutations(m, n, k);
    check_request(m, n, k, count * count, budget);
    const auto all = enumerate_partial_permutations(m, n, k, budget);
    const auto ea = integer_entries(a), eb = integer_entries(b);

    PQOptimum best;
    bool any = false;
    for (const auto& p : all)
        for (const auto& q : all) {
            long long v = 0;
            for (const auto& [r, c] : p.pairs())
                for (const auto& [r2, c2] : q.pairs()) v += ea[r * m + r2] * eb[c * n + c2];
            if (!any || v > best.value) {
                any = true;
                best.value = v;
                best.argmax.clear();
            }
            if (v == best.value) best.argmax.emplace_back(p, q);
        }
    return best;
}

Theorem1Report verify_theorem1(const model::CorrelatedPairSpec& spec, const Theorem1Options& opts) {
    spec.validate();
    const double count = count_partial_permutations(spec.m, spec.n, spec.k);
    check_request(spec.m, spec.n, spec.k, count, opts.budget);
    if (opts.check_pq) check_request(spec.m, spec.n, spec.k, count * count, opts.budget);

    std::vector<char> hit(opts.trials, 0), hit_pq(opts.trials, 0);
    parallel_for(opts.trials, opts.threads, [&](std::size_t t) {
        model::CorrelatedPairSpec trial = spec;
        trial.rng_seed = rng::derive(spec.rng_seed, {t});
        const model::GraphPair pair = model::sample_pair(trial);
        const PartialPermutation truth(spec.m, spec.n, pair.true_alignment);
        const auto a = build_signed_adjacency(pair.g, opts.diag_value);
        const auto b = build_signed_adjacency(pair.h, opts.diag_value);
        const auto opt = brute_force_match(a, b, spec.k, opts.budget);
        hit[t] = opt.argmax.size() == 1 && opt.argmax.front() == truth;
        if (opts.check_pq) {
            const auto pq = brute_force_pq(a, b, spec.k, opts.budget);
            hit_pq[t] = pq.argmax.size() == 1 && pq.argmax.front().first == truth &&
                        pq.argmax.front().second == truth;
        }
    });

    Theorem1Report report;
    report.trials = opts.trials;
    for (std::size_t t = 0; t < opts.trials; ++t) {
        report.recovered += hit[t];
        report.recovered_pq += hit_pq[t];
    }
    return report;
}

}  // namespace sgmatch::oracle
