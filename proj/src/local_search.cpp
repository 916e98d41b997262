#include "mis/local_search.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mis {

namespace {

struct State {
    const Graph& g;
    std::vector<char> in_set;
    std::vector<Vertex> tight;  // number of set neighbors per vertex

    State(const Graph& graph, const std::vector<Vertex>& s) : g(graph) {
        in_set.assign(g.num_vertices(), 0);
        tight.assign(g.num_vertices(), 0);
        for (Vertex v : s) {
            if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("vertex id out of range");
            if (in_set[v]) throw std::invalid_argument("duplicate vertex in set");
            in_set[v] = 1;
        }
        for (Vertex v : s)
            for (Vertex nb : g.neighbors(v)) ++tight[nb];
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (in_set[v] && tight[v] > 0) throw std::invalid_argument("input set is not independent");
    }

    void insert(Vertex v) {
        in_set[v] = 1;
        for (Vertex nb : g.neighbors(v)) ++tight[nb];
    }
    void remove(Vertex v) {
        in_set[v] = 0;
        for (Vertex nb : g.neighbors(v)) --tight[nb];
    }
    bool free_vertex(Vertex v) const { return !in_set[v] && tight[v] == 0; }
};

}  // namespace

std::vector<Vertex> improve(const Graph& g, std::vector<Vertex> s, int max_rounds) {
    State st(g, s);
    const bool weighted = !g.unit_weights();

    for (int round = 0; round < max_rounds; ++round) {
        bool changed = false;

        // free insertions
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (st.free_vertex(v)) {
                st.insert(v);
                changed = true;
            }
        }

        // swaps: remove u, insert one or two of its tightness-1 neighbors
        for (Vertex u = 0; u < g.num_vertices(); ++u) {
            if (!st.in_set[u]) continue;
            std::vector<Vertex> candidates;  // neighbors whose only set neighbor is u
            for (Vertex nb : g.neighbors(u))
                if (!st.in_set[nb] && st.tight[nb] == 1) candidates.push_back(nb);
            if (candidates.empty()) continue;

            // first improving move in ascending candidate order
            Vertex pick_a = -1, pick_b = -1;
            for (std::size_t i = 0; i < candidates.size() && pick_a < 0; ++i) {
                Vertex a = candidates[i];
                if (weighted && g.weight(a) > g.weight(u)) {
                    pick_a = a;
                    break;
                }
                for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                    Vertex b = candidates[j];
                    if (g.has_edge(a, b)) continue;
                    if (g.weight(a) + g.weight(b) > g.weight(u)) {
                        pick_a = a;
                        pick_b = b;
                        break;
                    }
                }
            }
            if (pick_a >= 0) {
                st.remove(u);
                st.insert(pick_a);
                if (pick_b >= 0) st.insert(pick_b);
                changed = true;
            }
        }
        if (!changed) break;
    }

    // round budget may stop mid-change; the result must still be maximal
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (st.free_vertex(v)) st.insert(v);

    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (st.in_set[v]) out.push_back(v);
    assert(is_independent_set(g, out));
    return out;
}

}  // namespace mis
