#pragma once

#include <vector>

#include "mis/graph.hpp"

namespace mis {

// Degree-2 fold: {center, left, right} contracted into the kernel vertex that
// keeps the center's id. Unfolding maps kernel-center Included to {left,
// right} Included / center Excluded, and kernel-center Excluded to center
// Included / {left, right} Excluded.
struct FoldRecord {
    Vertex center, left, right;
};

// Everything needed to reconstruct a labeling of the original graph from a
// labeling of the kernel. Folds rewrite adjacency, so the kernel is a graph
// of its own, not an induced subgraph.
struct ReductionTrace {
    VertexLabeling base;               // labels fixed by rules, original ids
    std::vector<FoldRecord> folds;     // in application order
    Weight offset = 0;                 // included weight of base + 1 per fold
    Graph kernel;
    std::vector<Vertex> kernel_to_orig;

    bool kernel_empty() const { return kernel.num_vertices() == 0; }
};

// Unweighted rules to fixpoint: degree-0 include, degree-1 include, degree-2
// fold (non-adjacent neighbors), domination N[u] subset of N[v] -> exclude v.
// Requires unit weights.
ReductionTrace reduce_unweighted(const Graph& g, const VertexLabeling& start);

// Weighted rules to fixpoint: isolated include, neighborhood weight
// (w_u >= sum of unlabeled neighbor weights -> include), weighted domination
// (u adjacent to v, N[u] subset of N[v], w_u >= w_v -> exclude v), weighted
// pendant (w_u >= w_x -> include u, exclude x).
ReductionTrace reduce_weighted(const Graph& g, const VertexLabeling& start);

// Dispatch on unit weights.
ReductionTrace reduce_auto(const Graph& g, const VertexLabeling& start);

// Full labeling of the original graph from a fully labeled kernel.
// set_weight of the result equals kernel solution weight + trace offset.
VertexLabeling unfold(const ReductionTrace& trace, const VertexLabeling& kernel_labels);

// Same replay, but tolerates partially labeled kernels: folds whose center is
// still unlabeled stay unresolved. Used to push reduced partial solutions
// back into the original vertex space.
VertexLabeling unfold_partial(const ReductionTrace& trace, const VertexLabeling& kernel_labels);

}  // namespace mis
