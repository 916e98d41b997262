#pragma once

#include <vector>

#include "mis/graph.hpp"
#include "mis/rng.hpp"

namespace mis::test {

inline Graph random_graph(Rng& rng, Vertex n, double p, bool weighted = false,
                          Weight max_weight = 20) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) edges.emplace_back(u, v);
    std::vector<Weight> weights;
    if (weighted) {
        weights.resize(n);
        for (auto& w : weights) w = 1 + static_cast<Weight>(rng.below(max_weight));
    }
    return Graph(n, edges, weights);
}

inline Graph path_graph(Vertex n, std::vector<Weight> weights = {}) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, edges, weights);
}

inline Graph cycle_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

inline Graph complete_graph(Vertex n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline Graph star_graph(Vertex leaves, std::vector<Weight> weights = {}) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, edges, weights);
}

inline Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < 5; ++v) {
        edges.emplace_back(v, (v + 1) % 5);          // outer cycle
        edges.emplace_back(v, v + 5);                // spokes
        edges.emplace_back(v + 5, (v + 2) % 5 + 5);  // inner pentagram
    }
    return Graph(10, edges);
}

}  // namespace mis::test
