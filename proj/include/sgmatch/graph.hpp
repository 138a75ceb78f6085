#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sgmatch {

struct Edge {
    std::size_t u;
    std::size_t v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..order-1.
class Graph {
public:
    Graph() = default;

    /// Throws DomainError on a self-loop and IndexError on an out-of-range endpoint.
    /// Repeated edges (in either orientation) are merged.
    Graph(std::size_t order, std::span<const Edge> edges);

    std::size_t order() const noexcept { return order_; }
    /// Canonical (u < v) edges in lexicographic order.
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * order_ + v] != 0; }

    /// edge_count / C(order, 2); 0 for order < 2.
    double density() const;

    /// Subgraph induced by `vertices`; vertex vertices[i] becomes i.
    Graph induced(std::span<const std::size_t> vertices) const;

    /// Same graph with vertex v renamed new_id[v]; new_id must be a permutation.
    Graph relabeled(std::span<const std::size_t> new_id) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.order_ == b.order_ && a.edges_ == b.edges_;
    }

private:
    std::size_t order_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint8_t> adj_;
};

}  // namespace sgmatch
