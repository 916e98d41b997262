#pragma once

#include <chrono>
#include <iosfwd>
#include <limits>
#include <vector>

#include "mis/graph.hpp"

namespace mis {

// Exhaustive bitmask enumeration over all 2^n subsets. Ties broken by the
// numerically smallest bitmask. Rejects n > 26.
std::pair<std::vector<Vertex>, Weight> brute_force_mis(const Graph& g);

struct ExactResult {
    std::vector<Vertex> set;
    Weight weight = 0;
    bool proven_optimal = false;
    std::uint64_t nodes = 0;  // branch nodes visited
};

// Branch-and-reduce MWIS solver: reduction at every node, branching on a
// maximum-degree vertex (include branch first), bounded by residual weight
// and, on unweighted inputs, a greedy clique cover. Deadline yields an
// unproven incumbent.
ExactResult exact_mwis(const Graph& g,
                       std::chrono::duration<double> time_limit =
                           std::chrono::duration<double>(std::numeric_limits<double>::infinity()));

// Baseline: repeatedly include a minimum-residual-degree vertex, exclude its
// neighbors. Deterministic (lowest id on ties).
std::vector<Vertex> greedy_maximal(const Graph& g);

// maximize sum w_u x_u s.t. x_u + x_v <= 1 per edge, x binary.
void export_lp(const Graph& g, std::ostream& out);

// maximize x^T (I - A) x over binary x; unweighted graphs only.
void export_qp(const Graph& g, std::ostream& out);

}  // namespace mis
