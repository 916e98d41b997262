#include "mis/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace mis {

Graph::Graph(Vertex n, std::span<const Edge> edges, std::span<const Weight> weights) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (!weights.empty() && static_cast<Vertex>(weights.size()) != n)
        throw std::invalid_argument("weight vector size does not match vertex count");

    weights_.assign(static_cast<std::size_t>(n), 1);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 1) throw std::invalid_argument("vertex weight must be >= 1");
        weights_[i] = weights[i];
    }
    total_weight_ = 0;
    for (Weight w : weights_) total_weight_ += w;

    std::vector<Edge> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) continue;  // self-loops dropped
        dir.emplace_back(u, v);
        dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    adj_.resize(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) {
        adj_[i] = dir[i].second;
        ++offsets_[static_cast<std::size_t>(dir[i].first) + 1];
    }
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) offsets_[i] += offsets_[i - 1];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph Graph::with_weights(std::vector<Weight> weights) const {
    if (static_cast<Vertex>(weights.size()) != n_)
        throw std::invalid_argument("weight vector size does not match vertex count");
    for (Weight w : weights)
        if (w < 1) throw std::invalid_argument("vertex weight must be >= 1");
    Graph g = *this;
    g.weights_ = std::move(weights);
    g.total_weight_ = 0;
    for (Weight w : g.weights_) g.total_weight_ += w;
    return g;
}

std::vector<Vertex> VertexLabeling::included() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
        if (states_[v] == Label::Included) out.push_back(v);
    return out;
}

std::vector<Vertex> VertexLabeling::unlabeled() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
        if (states_[v] == Label::Unlabeled) out.push_back(v);
    return out;
}

Residual residual_subgraph(const Graph& g, const VertexLabeling& l) {
    Residual res;
    res.to_original = l.unlabeled();
    std::vector<Vertex> to_res(g.num_vertices(), -1);
    for (std::size_t i = 0; i < res.to_original.size(); ++i)
        to_res[res.to_original[i]] = static_cast<Vertex>(i);

    std::vector<Edge> edges;
    std::vector<Weight> weights(res.to_original.size());
    for (std::size_t i = 0; i < res.to_original.size(); ++i) {
        Vertex orig = res.to_original[i];
        weights[i] = g.weight(orig);
        for (Vertex nb : g.neighbors(orig)) {
            Vertex j = to_res[nb];
            if (j >= 0 && static_cast<Vertex>(i) < j) edges.emplace_back(static_cast<Vertex>(i), j);
        }
    }
    res.graph = Graph(static_cast<Vertex>(res.to_original.size()), edges, weights);
    return res;
}

bool is_independent_set(const Graph& g, std::span<const Vertex> s) {
    std::vector<char> in_set(g.num_vertices(), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("vertex id out of range");
        in_set[v] = 1;
    }
    for (Vertex v : s)
        for (Vertex nb : g.neighbors(v))
            if (in_set[nb]) return false;
    return true;
}

Weight set_weight(const Graph& g, std::span<const Vertex> s) {
    Weight total = 0;
    for (Vertex v : s) {
        if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("vertex id out of range");
        total += g.weight(v);
    }
    return total;
}

std::string Violation::to_string() const {
    if (kind == Kind::AdjacentIncluded)
        return "adjacent-included edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
    return "neighbor-not-excluded vertex " + std::to_string(v) + " (included neighbor " +
           std::to_string(u) + ")";
}

std::vector<Violation> validate_labeling(const Graph& g, const VertexLabeling& l) {
    std::vector<Violation> out;
    if (l.size() != g.num_vertices()) {
        out.push_back({Violation::Kind::NeighborNotExcluded, -1, -1});
        return out;
    }
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
        if (l[u] != Label::Included) continue;
        for (Vertex v : g.neighbors(u)) {
            if (l[v] == Label::Included) {
                if (u < v) out.push_back({Violation::Kind::AdjacentIncluded, u, v});
            } else if (l[v] != Label::Excluded) {
                out.push_back({Violation::Kind::NeighborNotExcluded, u, v});
            }
        }
    }
    return out;
}

}  // namespace mis
