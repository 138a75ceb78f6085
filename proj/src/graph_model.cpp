#include "sgmatch/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgmatch/rng.hpp"

namespace sgmatch::model {

PairTable::PairTable(std::size_t size, std::vector<double> values)
    : size_(size), values_(std::move(values)) {
    if (values_.size() != size * size) throw DimensionError("pair table must be size x size");
    if (size == 0) throw DimensionError("pair table must be non-empty");
}

namespace {

constexpr std::uint64_t kPairTag = 1;
constexpr std::uint64_t kRelabelTag = 2;

template <class F>
void for_each_pair(std::size_t count, F&& f) {
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) f(i, j);
}

void check_range(const PairTable& t, std::size_t needed, double lo, double hi, const char* what) {
    if (!t.is_scalar() && t.size() < needed)
        throw ParameterError(std::string(what) + " table covers " + std::to_string(t.size()) +
                             " vertices, need " + std::to_string(needed));
    auto bad = [&](double v) { return !(v >= lo && v <= hi); };
    if (t.is_scalar()) {
        if (bad(t(0, 1))) throw ParameterError(std::string(what) + " outside [0, 1]");
        return;
    }
    for_each_pair(needed, [&](std::size_t i, std::size_t j) {
        if (bad(t(i, j)))
            throw ParameterError(std::string(what) + " outside [0, 1] at (" + std::to_string(i) +
                                 ", " + std::to_string(j) + ")");
    });
}

}  // namespace

void CorrelatedPairSpec::validate() const {
    if (k > std::min(m, n)) throw ParameterError("K exceeds min(m, n)");
    if (s > k) throw ParameterError("more seeds than core vertices");
    check_range(edge_prob, std::max(m, n), 0.0, 1.0, "edge probability");
    check_range(correlation, k, 0.0, 1.0, "correlation");
}

GraphPair sample_pair_unrelabeled(const CorrelatedPairSpec& spec) {
    spec.validate();
    std::vector<Edge> ge, he;
    for_each_pair(std::max(spec.m, spec.n), [&](std::size_t i, std::size_t j) {
        rng::Stream st(spec.rng_seed, {kPairTag, i, j});
        const double p = spec.edge_prob(i, j);
        const double u0 = st.uniform(), u1 = st.uniform(), u2 = st.uniform();
        if (j < spec.k) {
            const double rho = spec.correlation(i, j);
            const bool y = u0 < p;
            const bool heads = u1 < rho + (1.0 - rho) * p;
            const bool tails = u2 < (1.0 - rho) * p;
            if (y) ge.push_back({i, j});
            if (y ? heads : tails) he.push_back({i, j});
        } else {
            if (j < spec.m && u0 < p) ge.push_back({i, j});
            if (j < spec.n && u1 < p) he.push_back({i, j});
        }
    });
    GraphPair out;
    out.g = Graph(spec.m, ge);
    out.h = Graph(spec.n, he);
    out.s = spec.s;
    for (std::size_t i = 0; i < spec.k; ++i) {
        out.true_alignment.emplace_back(i, i);
        out.core_g.push_back(i);
        out.core_h.push_back(i);
    }
    return out;
}

namespace {

// Seeds keep their ids; the rest are shuffled among themselves.
std::vector<std::size_t> nonseed_relabeling(std::size_t order, std::size_t s, rng::Stream& st) {
    std::vector<std::size_t> id(order);
    std::iota(id.begin(), id.end(), 0);
    st.shuffle(std::span(id).subspan(s));
    return id;
}

}  // namespace

GraphPair sample_pair(const CorrelatedPairSpec& spec) {
    GraphPair latent = sample_pair_unrelabeled(spec);
    rng::Stream sg(spec.rng_seed, {kRelabelTag, 0});
    rng::Stream sh(spec.rng_seed, {kRelabelTag, 1});
    const auto gid = nonseed_relabeling(spec.m, spec.s, sg);
    const auto hid = nonseed_relabeling(spec.n, spec.s, sh);

    GraphPair out;
    out.g = latent.g.relabeled(gid);
    out.h = latent.h.relabeled(hid);
    out.s = spec.s;
    for (std::size_t i = 0; i < spec.k; ++i) {
        out.true_alignment.emplace_back(gid[i], hid[i]);
        out.core_g.push_back(gid[i]);
        out.core_h.push_back(hid[i]);
    }
    std::sort(out.true_alignment.begin(), out.true_alignment.end());
    std::sort(out.core_g.begin(), out.core_g.end());
    std::sort(out.core_h.begin(), out.core_h.end());
    return out;
}

MatchabilityDiagnostics diagnostics(const CorrelatedPairSpec& spec) {
    MatchabilityDiagnostics d;
    const std::size_t total = std::max(spec.m, spec.n);
    double q = 0.5;
    if (spec.edge_prob.is_scalar()) {
        const double p = spec.edge_prob(0, 1);
        q = std::min(p, 1.0 - p);
    } else {
        for_each_pair(total, [&](std::size_t i, std::size_t j) {
            const double p = spec.edge_prob(i, j);
            q = std::min(q, std::min(p, 1.0 - p));
        });
    }
    d.q = q;
    const double floor = (1.0 - 2.0 * q) * (1.0 - 2.0 * q);
    double eps = 1.0;
    if (spec.correlation.is_scalar()) {
        if (spec.k >= 2) eps = spec.correlation(0, 1) - floor;
    } else {
        for_each_pair(spec.k, [&](std::size_t i, std::size_t j) {
            eps = std::min(eps, spec.correlation(i, j) - floor);
        });
    }
    d.epsilon = eps;
    d.theorem1_applicable = eps > 0.0;
    d.q_on_boundary = q <= 0.0 || q >= 0.5;
    return d;
}

std::array<double, 4> joint_edge_probabilities(double p, double rho) {
    const double cov = rho * p * (1.0 - p);
    const double off = (1.0 - rho) * p * (1.0 - p);
    return {p * p + cov, off, off, (1.0 - p) * (1.0 - p) + cov};
}

double match_ratio(const MatchResult& result, const GraphPair& pair) {
    const std::size_t nonseed = pair.true_alignment.size() - pair.s;
    if (nonseed == 0) return 1.0;
    std::size_t hits = 0;
    for (const auto& [g, h] : pair.true_alignment) {
        if (g < pair.s) continue;
        auto it = std::lower_bound(result.phi.begin(), result.phi.end(), std::make_pair(g, std::size_t{0}));
        if (it != result.phi.end() && it->first == g && it->second == h) ++hits;
    }
    return double(hits) / double(nonseed);
}

}  // namespace sgmatch::model
