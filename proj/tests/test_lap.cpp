#include <doctest.h>

#include <cmath>
#include <limits>

#include "sgmatch/kernels.hpp"
#include "sgmatch/lap.hpp"
#include "support.hpp"

using namespace sgmatch;
using sgmatch::testing::brute_force_lap;

namespace {
bool is_permutation(const Assignment& a) {
    std::vector<char> seen(a.target.size(), 0);
    for (std::size_t t : a.target)
        if (t >= seen.size() || seen[t]++) return false;
    return true;
}
}  // namespace

TEST_CASE("1x1 and identity profits") {
    CHECK(solve_lap(Matrix{{1.0}}).target == std::vector<std::size_t>{0});
    const Matrix eye{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const auto a = solve_lap(eye);
    CHECK(a.target == std::vector<std::size_t>{0, 1, 2});
    CHECK(assignment_value(eye.view(), a) == 3.0);
    CHECK(solve_lap(Matrix{}).target.empty());
}

TEST_CASE("maximizes rather than minimizes") {
    const Matrix m{{1, 9}, {8, 1}};
    CHECK(solve_lap(m).target == std::vector<std::size_t>{1, 0});
}

TEST_CASE("random 6x6 integer matrices match exhaustive search over 720 permutations") {
    rng::Stream st(6);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix m = testing::random_int_matrix(6, 6, -9, 9, st);
        const auto a = solve_lap(m);
        REQUIRE(is_permutation(a));
        CHECK(assignment_value(m.view(), a) == brute_force_lap(m));
    }
}

TEST_CASE("optimal for every size up to 7, integer and real entries") {
    rng::Stream st(7);
    for (std::size_t r = 1; r <= 7; ++r)
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix mi = testing::random_int_matrix(r, r, -3, 3, st);  // many ties
            CHECK(assignment_value(mi.view(), solve_lap(mi)) == brute_force_lap(mi));
            const Matrix mr = testing::random_real_matrix(r, r, -100, 100, st);
            CHECK(assignment_value(mr.view(), solve_lap(mr)) ==
                  doctest::Approx(brute_force_lap(mr)).epsilon(1e-12));
        }
}

TEST_CASE("adding a constant shifts the optimum by r*c and keeps the assignment optimal") {
    rng::Stream st(8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t r = 2 + st.below(5);
        const Matrix m = testing::random_int_matrix(r, r, -9, 9, st);
        Matrix shifted = m;
        const double c = double(st.below(21)) - 10.0;
        for (double& v : shifted.values()) v += c;
        const auto before = solve_lap(m);
        const auto after = solve_lap(shifted);
        CHECK(assignment_value(shifted.view(), after) ==
              assignment_value(m.view(), before) + double(r) * c);
        CHECK(assignment_value(shifted.view(), before) == assignment_value(shifted.view(), after));
    }
}

TEST_CASE("deterministic on degenerate input") {
    const Matrix flat(5, 5, 2.0);
    const auto a = solve_lap(flat);
    CHECK(a == solve_lap(flat));
    CHECK(is_permutation(a));
}

TEST_CASE("rejects non-square and non-finite input") {
    CHECK_THROWS_AS(solve_lap(Matrix(2, 3)), DimensionError);
    Matrix m(2, 2);
    m(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_lap(m), DomainError);
    m(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_lap(m), DomainError);
}

TEST_CASE("all backends return the same assignment") {
    rng::Stream st(9);
    const Matrix m = testing::random_real_matrix(60, 60, -1, 1, st);
    const Matrix ties = testing::random_int_matrix(40, 40, 0, 2, st);
    const auto before = kernels::active().backend;
    kernels::select(kernels::Backend::scalar);
    const auto ref = solve_lap(m), ref_ties = solve_lap(ties);
    for (auto* t : kernels::available_tables()) {
        kernels::select(t->backend);
        CHECK(solve_lap(m) == ref);
        CHECK(solve_lap(ties) == ref_ties);
    }
    kernels::select(before);
}
