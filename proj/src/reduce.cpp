#include "mis/reduce.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace mis {

namespace {

// Mutable working copy of the unlabeled part of the instance. Vertices keep
// their original ids; folds rewrite adjacency in place. Absorbed and decided
// vertices are dead (alive = 0) and dropped from all neighbor lists.
struct Workspace {
    const Graph& g;
    VertexLabeling labels;
    std::vector<std::vector<Vertex>> adj;  // sorted, alive neighbors only
    std::vector<char> alive;
    std::vector<Weight> wgt;
    std::vector<FoldRecord> folds;
    Weight offset = 0;

    std::deque<Vertex> work;
    std::vector<char> queued;

    explicit Workspace(const Graph& graph, const VertexLabeling& start)
        : g(graph), labels(start), alive(graph.num_vertices(), 0),
          wgt(graph.weights().begin(), graph.weights().end()),
          queued(graph.num_vertices(), 0) {
        adj.resize(g.num_vertices());
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (labels[v] == Label::Included) offset += wgt[v];
            if (labels[v] != Label::Unlabeled) continue;
            alive[v] = 1;
            for (Vertex nb : g.neighbors(v))
                if (labels[nb] == Label::Unlabeled) adj[v].push_back(nb);
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (alive[v]) enqueue(v);
    }

    void enqueue(Vertex v) {
        if (!queued[v] && alive[v]) {
            queued[v] = 1;
            work.push_back(v);
        }
    }

    void drop_from_neighbors(Vertex v) {
        for (Vertex nb : adj[v]) {
            auto& list = adj[nb];
            list.erase(std::remove(list.begin(), list.end(), v), list.end());
            enqueue(nb);
        }
    }

    void exclude(Vertex v) {
        assert(alive[v]);
        labels.set(v, Label::Excluded);
        alive[v] = 0;
        drop_from_neighbors(v);
        adj[v].clear();
    }

    void include(Vertex v) {
        assert(alive[v]);
        labels.set(v, Label::Included);
        offset += wgt[v];
        alive[v] = 0;
        auto neighbors = adj[v];  // exclude() edits lists
        adj[v].clear();
        for (Vertex nb : neighbors)
            if (alive[nb]) exclude(nb);
    }

    // Contract {center, left, right} into center. Unit weights only.
    void fold(Vertex center, Vertex left, Vertex right) {
        folds.push_back({center, left, right});
        offset += 1;
        // merged neighborhood: (N(left) u N(right)) \ {center}
        std::vector<Vertex> merged;
        std::set_union(adj[left].begin(), adj[left].end(), adj[right].begin(), adj[right].end(),
                       std::back_inserter(merged));
        merged.erase(std::remove(merged.begin(), merged.end(), center), merged.end());

        for (Vertex v : {left, right}) {
            alive[v] = 0;  // absorbed; label resolved at unfold time
            drop_from_neighbors(v);
            adj[v].clear();
        }
        adj[center] = merged;
        for (Vertex nb : merged) {
            auto& list = adj[nb];
            auto it = std::lower_bound(list.begin(), list.end(), center);
            if (it == list.end() || *it != center) list.insert(it, center);
            enqueue(nb);
        }
        enqueue(center);
    }

    Vertex degree(Vertex v) const { return static_cast<Vertex>(adj[v].size()); }

    Weight neighborhood_weight(Vertex v) const {
        Weight sum = 0;
        for (Vertex nb : adj[v]) sum += wgt[nb];
        return sum;
    }

    // N[u] subset of N[v]; caller guarantees u,v adjacent
    bool closed_subset(Vertex u, Vertex v) const {
        if (degree(u) > degree(v)) return false;
        std::size_t j = 0;
        const auto& nu = adj[u];
        const auto& nv = adj[v];
        for (Vertex x : nu) {
            if (x == v) continue;
            while (j < nv.size() && nv[j] < x) ++j;
            if (j == nv.size() || nv[j] != x) return false;
        }
        return true;
    }

    ReductionTrace finish() {
        ReductionTrace trace;
        trace.folds = std::move(folds);
        trace.offset = offset;

        std::vector<Vertex> kernel_to_orig;
        std::vector<Vertex> to_kernel(g.num_vertices(), -1);
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (alive[v]) {
                to_kernel[v] = static_cast<Vertex>(kernel_to_orig.size());
                kernel_to_orig.push_back(v);
            }
        std::vector<Edge> edges;
        std::vector<Weight> weights(kernel_to_orig.size());
        for (std::size_t i = 0; i < kernel_to_orig.size(); ++i) {
            Vertex v = kernel_to_orig[i];
            weights[i] = wgt[v];
            for (Vertex nb : adj[v])
                if (to_kernel[nb] > static_cast<Vertex>(i))
                    edges.emplace_back(static_cast<Vertex>(i), to_kernel[nb]);
        }
        trace.kernel = Graph(static_cast<Vertex>(kernel_to_orig.size()), edges, weights);
        trace.kernel_to_orig = std::move(kernel_to_orig);
        trace.base = std::move(labels);
        return trace;
    }
};

}  // namespace

ReductionTrace reduce_unweighted(const Graph& g, const VertexLabeling& start) {
    if (!g.unit_weights()) throw std::invalid_argument("reduce_unweighted requires unit weights");
    Workspace ws(g, start);

    while (!ws.work.empty()) {
        Vertex v = ws.work.front();
        ws.work.pop_front();
        ws.queued[v] = 0;
        if (!ws.alive[v]) continue;

        Vertex deg = ws.degree(v);
        if (deg <= 1) {  // isolated or pendant
            ws.include(v);
            continue;
        }
        if (deg == 2) {
            Vertex a = ws.adj[v][0], b = ws.adj[v][1];
            if (!std::binary_search(ws.adj[a].begin(), ws.adj[a].end(), b)) {
                ws.fold(v, a, b);
                continue;
            }
            // neighbors adjacent: triangle, handled by domination below
        }
        for (Vertex u : ws.adj[v]) {
            if (ws.closed_subset(u, v)) {
                ws.exclude(v);
                break;
            }
        }
    }
    return ws.finish();
}

ReductionTrace reduce_weighted(const Graph& g, const VertexLabeling& start) {
    Workspace ws(g, start);

    while (!ws.work.empty()) {
        Vertex v = ws.work.front();
        ws.work.pop_front();
        ws.queued[v] = 0;
        if (!ws.alive[v]) continue;

        if (ws.degree(v) == 0 || ws.wgt[v] >= ws.neighborhood_weight(v)) {
            ws.include(v);
            continue;
        }
        if (ws.degree(v) == 1 && ws.wgt[v] >= ws.wgt[ws.adj[v][0]]) {
            ws.include(v);
            continue;
        }
        // weighted domination: u adjacent to v, N[u] subset of N[v], w_u >= w_v
        for (Vertex u : ws.adj[v]) {
            if (ws.wgt[u] >= ws.wgt[v] && ws.closed_subset(u, v)) {
                ws.exclude(v);
                break;
            }
        }
    }
    return ws.finish();
}

ReductionTrace reduce_auto(const Graph& g, const VertexLabeling& start) {
    return g.unit_weights() ? reduce_unweighted(g, start) : reduce_weighted(g, start);
}

VertexLabeling unfold_partial(const ReductionTrace& trace, const VertexLabeling& kernel_labels) {
    if (kernel_labels.size() != trace.kernel.num_vertices())
        throw std::invalid_argument("kernel labeling size mismatch");
    VertexLabeling full = trace.base;
    for (Vertex k = 0; k < kernel_labels.size(); ++k)
        if (kernel_labels[k] != Label::Unlabeled) full.set(trace.kernel_to_orig[k], kernel_labels[k]);

    // newest fold first; an earlier fold's center may have been absorbed by a
    // later one and only gets its label during this replay
    for (auto it = trace.folds.rbegin(); it != trace.folds.rend(); ++it) {
        switch (full[it->center]) {
            case Label::Included:
                full.set(it->center, Label::Excluded);
                full.set(it->left, Label::Included);
                full.set(it->right, Label::Included);
                break;
            case Label::Excluded:
                full.set(it->center, Label::Included);
                full.set(it->left, Label::Excluded);
                full.set(it->right, Label::Excluded);
                break;
            case Label::Unlabeled:
                break;
        }
    }
    return full;
}

VertexLabeling unfold(const ReductionTrace& trace, const VertexLabeling& kernel_labels) {
    if (!kernel_labels.complete())
        throw std::invalid_argument("unfold requires a fully labeled kernel");
    VertexLabeling full = unfold_partial(trace, kernel_labels);
    assert(full.complete());
    return full;
}

}  // namespace mis
