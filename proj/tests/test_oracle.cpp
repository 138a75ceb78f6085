#include <doctest.h>

#include <cmath>
#include <set>

#include "sgmatch/error.hpp"
#include "sgmatch/oracle.hpp"
#include "support.hpp"

using namespace sgmatch;
using namespace sgmatch::testing;

namespace {

double factorial(std::size_t n) { return n <= 1 ? 1.0 : double(n) * factorial(n - 1); }

double binom(std::size_t n, std::size_t k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace

TEST_CASE("count_partial_permutations") {
    CHECK(oracle::count_partial_permutations(3, 4, 2) == 36.0);
    CHECK(oracle::count_partial_permutations(5, 5, 5) == 120.0);
    CHECK(oracle::count_partial_permutations(4, 2, 0) == 1.0);
    CHECK(oracle::count_partial_permutations(2, 4, 3) == 0.0);
    for (std::size_t c = 0; c <= 6; ++c)
        for (std::size_t d = 0; d <= 6; ++d)
            for (std::size_t e = 0; e <= std::min(c, d); ++e)
                CHECK(oracle::count_partial_permutations(c, d, e) ==
                      binom(c, e) * binom(d, e) * factorial(e));
}

TEST_CASE("enumeration is complete, distinct and lexicographic") {
    for (std::size_t c = 0; c <= 4; ++c)
        for (std::size_t d = 0; d <= 4; ++d)
            for (std::size_t e = 0; e <= std::min(c, d); ++e) {
                const auto all = oracle::enumerate_partial_permutations(c, d, e);
                CHECK(double(all.size()) == oracle::count_partial_permutations(c, d, e));
                std::set<std::vector<PartialPermutation::Pair>> distinct;
                for (std::size_t i = 0; i < all.size(); ++i) {
                    CHECK(all[i].size() == e);
                    distinct.insert(all[i].pairs());
                    if (i > 0) CHECK(all[i - 1].pairs() < all[i].pairs());
                }
                CHECK(distinct.size() == all.size());
            }
}

TEST_CASE("budget refusal") {
    CHECK_THROWS_AS(oracle::enumerate_partial_permutations(3, 4, 2, 35), BudgetExceeded);
    CHECK_NOTHROW(oracle::enumerate_partial_permutations(3, 4, 2, 36));
    try {
        oracle::enumerate_partial_permutations(12, 12, 12, 1000);
        FAIL("expected refusal");
    } catch (const BudgetExceeded& e) {
        CHECK(e.cardinality() == factorial(12));
        CHECK(e.budget() == 1000);
    }
    CHECK_THROWS_AS(oracle::enumerate_partial_permutations(2, 4, 3), ParameterError);

    rng::Stream st(1);
    const auto a = build_signed_adjacency(random_graph(6, 0.5, st));
    CHECK_THROWS_AS(oracle::brute_force_match(a, a, 6, 719), BudgetExceeded);
    CHECK_THROWS_AS(oracle::brute_force_pq(a, a, 4, 360 * 360 - 1), BudgetExceeded);
}

TEST_CASE("brute_force_match on a path") {
    const Graph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
    const auto a = build_signed_adjacency(path);
    const auto opt = oracle::brute_force_match(a, a, 3);
    CHECK(opt.value == 9);
    REQUIRE(opt.argmax.size() == 2);  // identity and reversal
    CHECK(opt.argmax[0] == PartialPermutation(3, 3, {{0, 0}, {1, 1}, {2, 2}}));
    CHECK(opt.argmax[1] == PartialPermutation(3, 3, {{0, 2}, {1, 1}, {2, 0}}));
}

TEST_CASE("brute_force_match agrees with explicit traces") {
    rng::Stream st(2);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 1 + st.below(5), n = 1 + st.below(5);
        const std::size_t k = st.below(std::min(m, n) + 1);
        const double diag = st.bernoulli(0.5) ? -1.0 : 0.0;
        const auto a = build_signed_adjacency(random_graph(m, 0.5, st), diag);
        const auto b = build_signed_adjacency(random_graph(n, 0.5, st), diag);
        const auto opt = oracle::brute_force_match(a, b, k);

        double best = -1e300;
        std::vector<PartialPermutation> maxima;
        for (const auto& x : oracle::enumerate_partial_permutations(m, n, k)) {
            const double v = naive_quadratic_trace(a.entries(), x.to_matrix(), b.entries());
            if (v > best) {
                best = v;
                maxima.clear();
            }
            if (v == best) maxima.push_back(x);
        }
        CHECK(double(opt.value) == best);
        CHECK(opt.argmax == maxima);
    }
}

TEST_CASE("the P, Q relaxation dominates and contains the diagonal maximizers") {
    rng::Stream st(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = build_signed_adjacency(random_graph(4, 0.5, st), 0.0);
        const auto b = build_signed_adjacency(random_graph(4, 0.5, st), 0.0);
        const auto pq = oracle::brute_force_pq(a, b, 3);
        const auto x = oracle::brute_force_match(a, b, 3);
        CHECK(pq.value >= x.value);
        for (const auto& [p, q] : pq.argmax) {
            const double v = naive_trace(naive_multiply(
                naive_multiply(naive_multiply(a.entries(), p.to_matrix()), b.entries()),
                q.to_matrix().transposed()));
            CHECK(double(pq.value) == v);
        }
        if (pq.value == x.value)
            for (const auto& best : x.argmax) {
                bool found = false;
                for (const auto& [p, q] : pq.argmax) found = found || (p == best && q == best);
                CHECK(found);
            }
    }
}

TEST_CASE("perfect correlation keeps the truth among the maximizers") {
    model::CorrelatedPairSpec spec;
    spec.m = spec.n = 7;
    spec.k = 6;
    spec.edge_prob = 0.5;
    spec.correlation = 1.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.rng_seed = seed;
        const auto gp = model::sample_pair(spec);
        const PartialPermutation truth(7, 7, gp.true_alignment);
        const auto opt = oracle::brute_force_match(build_signed_adjacency(gp.g, 0.0),
                                                   build_signed_adjacency(gp.h, 0.0), 6);
        bool found = false;
        for (const auto& x : opt.argmax) found = found || x == truth;
        CHECK(found);
    }
}

TEST_CASE("verify_theorem1: correlation helps and threads do not change the answer") {
    model::CorrelatedPairSpec spec;
    // m = n = K = 7: rigid 7-vertex graphs are common enough for a visible gap.
    spec.m = spec.n = spec.k = 7;
    spec.edge_prob = 0.5;
    spec.rng_seed = 11;
    oracle::Theorem1Options opts;
    opts.trials = 40;

    spec.correlation = 1.0;
    const auto strong = oracle::verify_theorem1(spec, opts);
    spec.correlation = 0.0;
    const auto none = oracle::verify_theorem1(spec, opts);
    CHECK(strong.trials == 40);
    CHECK(strong.recovered > none.recovered);
    CHECK(none.frequency() <= 0.1);

    spec.correlation = 1.0;
    opts.threads = 3;
    CHECK(oracle::verify_theorem1(spec, opts).recovered == strong.recovered);

    opts.budget = 100;
    CHECK_THROWS_AS(oracle::verify_theorem1(spec, opts), BudgetExceeded);
}

TEST_CASE("verify_theorem1 with the P, Q check") {
    model::CorrelatedPairSpec spec;
    spec.m = spec.n = 5;
    spec.k = 3;
    spec.edge_prob = 0.5;
    spec.correlation = 1.0;
    spec.rng_seed = 4;
    oracle::Theorem1Options opts;
    opts.trials = 10;
    opts.check_pq = true;
    const auto r = oracle::verify_theorem1(spec, opts);
    // a unique (truth, truth) maximizer forces a unique truth maximizer over Pi
    CHECK(r.recovered >= r.recovered_pq);
    CHECK(r.frequency_pq() == double(r.recovered_pq) / 10.0);
}

TEST_CASE("single-vertex matches carry no pair terms") {
    const Graph g(2, std::vector<Edge>{{0, 1}});
    const auto a = build_signed_adjacency(g, 0.0);
    const auto opt = oracle::brute_force_match(a, a, 1);
    CHECK(opt.value == 0);
    CHECK(opt.argmax.size() == 4);
}

TEST_CASE("rigid self-match") {
    // smallest asymmetric graph: 6 vertices
    const Graph g(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {3, 5}});
    const auto a = build_signed_adjacency(g, 0.0);
    const auto id = PartialPermutation(6, 6, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}});
    const auto opt = oracle::brute_force_match(a, a, 6);
    REQUIRE(opt.argmax.size() == 1);
    CHECK(opt.argmax.front() == id);

    const auto pq = oracle::brute_force_pq(a, a, 6);
    bool found = false;
    for (const auto& [p, q] : pq.argmax) found = found || (p == id && q == id);
    CHECK(found);
}

TEST_CASE("the P, Q search restricted to P = Q reproduces brute_force_match") {
    rng::Stream st(20);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = build_signed_adjacency(random_graph(4, 0.5, st), 0.0);
        const auto b = build_signed_adjacency(random_graph(5, 0.5, st), 0.0);
        const auto x = oracle::brute_force_match(a, b, 3);
        const auto pq = oracle::brute_force_pq(a, b, 3);
        long long diagonal_best = -1000000;
        for (const auto& p : oracle::enumerate_partial_permutations(4, 5, 3))
            diagonal_best = std::max(diagonal_best, std::llround(naive_quadratic_trace(
                                                        a.entries(), p.to_matrix(), b.entries())));
        CHECK(diagonal_best == x.value);
        CHECK(pq.value >= x.value);
    }
}

TEST_CASE("objective symmetry under transposition") {
    rng::Stream st(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = build_signed_adjacency(random_graph(5, 0.5, st));
        const auto b = build_signed_adjacency(random_graph(5, 0.5, st));
        const auto x = oracle::brute_force_match(a, b, 3);
        const auto y = oracle::brute_force_match(b, a, 3);
        CHECK(x.value == y.value);
        CHECK(x.argmax.size() == y.argmax.size());
        for (const auto& p : x.argmax)
            CHECK(naive_quadratic_trace(b.entries(), p.to_matrix().transposed(), a.entries()) ==
                  double(x.value));
    }
}

TEST_CASE("the diagonal convention does not change the argmax over Pi") {
    rng::Stream st(22);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_graph(5, 0.5, st), h = random_graph(6, 0.5, st);
        const auto zero = oracle::brute_force_match(build_signed_adjacency(g, 0.0),
                                                    build_signed_adjacency(h, 0.0), 4);
        const auto minus = oracle::brute_force_match(build_signed_adjacency(g, -1.0),
                                                     build_signed_adjacency(h, -1.0), 4);
        CHECK(zero.argmax == minus.argmax);
        CHECK(minus.value == zero.value + 4);
    }
}

TEST_CASE("ssgm never beats the exact optimum") {
    rng::Stream st(23);
    int equal = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = random_graph(6, 0.5, st), h = random_graph(6, 0.5, st);
        const auto a = build_signed_adjacency(g), b = build_signed_adjacency(h);
        const auto exact = oracle::brute_force_match(a, b, 4);
        const auto r = ssgm(a, b, 4, 0);
        CHECK(r.objective <= double(exact.value));
        equal += r.objective == double(exact.value);
    }
    MESSAGE("ssgm reached the exact optimum on " << equal << " of 30 instances");
}
