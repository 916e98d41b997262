#pragma once

#include <vector>

#include "mis/graph.hpp"

namespace mis {

// Polishes a valid independent set: free-vertex insertion plus (1,2)-swaps,
// applied first-improvement in ascending vertex order until a local fixpoint
// or the round budget. On weighted graphs any remove-one/insert-up-to-two
// move with strictly positive weight gain is accepted. The result is valid,
// maximal and never lighter than the input.
std::vector<Vertex> improve(const Graph& g, std::vector<Vertex> s, int max_rounds = 10);

}  // namespace mis
