#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mis {

using Vertex = std::int32_t;
using Weight = std::int64_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable undirected graph with positive integer vertex weights.
// Neighbor lists are sorted, deduplicated and self-loop free; adjacency is
// stored in one contiguous array (CSR layout).
class Graph {
public:
    Graph() = default;

    // Normalizes the edge list: drops self-loops and duplicates, symmetrizes.
    // Missing weights default to 1. Throws std::invalid_argument on
    // out-of-range vertex ids or non-positive weights.
    Graph(Vertex n, std::span<const Edge> edges, std::span<const Weight> weights = {});

    Vertex num_vertices() const { return n_; }
    std::size_t num_edges() const { return adj_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    Vertex degree(Vertex v) const { return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]); }
    bool has_edge(Vertex u, Vertex v) const;  // binary search in N(u)

    Weight weight(Vertex v) const { return weights_[v]; }
    std::span<const Weight> weights() const { return weights_; }
    Weight total_weight() const { return total_weight_; }
    bool unit_weights() const { return total_weight_ == n_; }

    // Undirected edge set with u < v, ascending.
    std::vector<Edge> edges() const;

    // Same topology, new weights (used by the weighted-instance sampler).
    Graph with_weights(std::vector<Weight> weights) const;

private:
    Vertex n_ = 0;
    std::vector<std::size_t> offsets_ = {0};
    std::vector<Vertex> adj_;
    std::vector<Weight> weights_;
    Weight total_weight_ = 0;
};

enum class Label : std::uint8_t { Unlabeled = 0, Included = 1, Excluded = 2 };

// Partial solution: per-vertex tri-state with a cached labeled count.
class VertexLabeling {
public:
    VertexLabeling() = default;
    explicit VertexLabeling(Vertex n) : states_(static_cast<std::size_t>(n), Label::Unlabeled) {}

    Label operator[](Vertex v) const { return states_[v]; }
    void set(Vertex v, Label l) {
        if (states_[v] == Label::Unlabeled && l != Label::Unlabeled) ++labeled_count_;
        if (states_[v] != Label::Unlabeled && l == Label::Unlabeled) --labeled_count_;
        states_[v] = l;
    }

    Vertex size() const { return static_cast<Vertex>(states_.size()); }
    Vertex labeled_count() const { return labeled_count_; }
    bool complete() const { return labeled_count_ == size(); }

    std::vector<Vertex> included() const;
    std::vector<Vertex> unlabeled() const;

    bool operator==(const VertexLabeling&) const = default;

private:
    std::vector<Label> states_;
    Vertex labeled_count_ = 0;
};

struct Residual {
    Graph graph;
    std::vector<Vertex> to_original;  // residual id -> original id
};

// Induced subgraph on the Unlabeled vertices; weights carried over.
Residual residual_subgraph(const Graph& g, const VertexLabeling& l);

// True iff no edge of g has both endpoints in s. Throws on out-of-range ids.
bool is_independent_set(const Graph& g, std::span<const Vertex> s);

// Sum of vertex weights over s. Throws on out-of-range ids.
Weight set_weight(const Graph& g, std::span<const Vertex> s);

struct Violation {
    enum class Kind { AdjacentIncluded, NeighborNotExcluded } kind;
    Vertex u, v;  // AdjacentIncluded: the edge; NeighborNotExcluded: included u, offending v
    std::string to_string() const;
};

// Empty result iff the labeling satisfies both independence invariants.
std::vector<Violation> validate_labeling(const Graph& g, const VertexLabeling& l);

}  // namespace mis
