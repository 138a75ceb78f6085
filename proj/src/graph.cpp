#include "sgmatch/graph.hpp"

#include <algorithm>
#include <string>

#include "sgmatch/error.hpp"

namespace sgmatch {

Graph::Graph(std::size_t order, std::span<const Edge> edges)
    : order_(order), adj_(order * order, 0) {
    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= order || e.v >= order)
            throw IndexError("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             "} outside vertex range 0.." + std::to_string(order));
        if (e.u == e.v) throw DomainError("self-loop at vertex " + std::to_string(e.u));
        edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const Edge& e : edges_) adj_[e.u * order + e.v] = adj_[e.v * order + e.u] = 1;
}

double Graph::density() const {
    if (order_ < 2) return 0.0;
    const double pairs = 0.5 * static_cast<double>(order_) * static_cast<double>(order_ - 1);
    return static_cast<double>(edges_.size()) / pairs;
}

Graph Graph::induced(std::span<const std::size_t> vertices) const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (adjacent(vertices[i], vertices[j])) out.push_back({i, j});
    return Graph(vertices.size(), out);
}

Graph Graph::relabeled(std::span<const std::size_t> new_id) const {
    if (new_id.size() != order_) throw DimensionError("relabeled: id map size differs from order");
    std::vector<char> hit(order_, 0);
    for (std::size_t id : new_id)
        if (id >= order_ || hit[id]++) throw DomainError("relabeled: id map is not a permutation");
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back({new_id[e.u], new_id[e.v]});
    return Graph(order_, out);
}

}  // namespace sgmatch
