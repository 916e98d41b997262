#include "mis/exact.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mis/reduce.hpp"

namespace mis {

std::pair<std::vector<Vertex>, Weight> brute_force_mis(const Graph& g) {
    const Vertex n = g.num_vertices();
    if (n > 26) throw std::invalid_argument("brute_force_mis supports at most 26 vertices");

    std::vector<std::uint32_t> adj_mask(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex nb : g.neighbors(v)) adj_mask[v] |= 1u << nb;

    std::uint32_t best_mask = 0;
    Weight best_weight = 0;
    const std::uint32_t end = n == 0 ? 1 : (1u << n);
    for (std::uint32_t mask = 0; mask < end; ++mask) {
        std::uint32_t rest = mask;
        Weight w = 0;
        bool independent = true;
        while (rest) {
            const int v = __builtin_ctz(rest);
            if (adj_mask[v] & mask) {
                independent = false;
                break;
            }
            w += g.weight(v);
            rest &= rest - 1;
        }
        if (independent && w > best_weight) {
            best_weight = w;
            best_mask = mask;
        }
    }
    std::vector<Vertex> set;
    for (Vertex v = 0; v < n; ++v)
        if (best_mask & (1u << v)) set.push_back(v);
    return {set, best_weight};
}

std::vector<Vertex> greedy_maximal(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<Vertex> deg(n);
    std::vector<char> alive(n, 1);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);

    std::vector<Vertex> set;
    Vertex remaining = n;
    while (remaining > 0) {
        Vertex pick = -1;
        for (Vertex v = 0; v < n; ++v)
            if (alive[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
        set.push_back(pick);
        alive[pick] = 0;
        --remaining;
        for (Vertex nb : g.neighbors(pick)) {
            if (!alive[nb]) continue;
            alive[nb] = 0;
            --remaining;
            for (Vertex nb2 : g.neighbors(nb))
                if (alive[nb2]) --deg[nb2];
        }
    }
    std::sort(set.begin(), set.end());
    return set;
}

namespace {

// Greedy clique cover: number of cliques bounds the MIS size of an
// unweighted graph.
Weight clique_cover_bound(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });

    std::vector<std::vector<Vertex>> cliques;
    for (Vertex v : order) {
        bool placed = false;
        for (auto& clique : cliques) {
            bool fits = true;
            for (Vertex u : clique)
                if (!g.has_edge(u, v)) {
                    fits = false;
                    break;
                }
            if (fits) {
                clique.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) cliques.push_back({v});
    }
    return static_cast<Weight>(cliques.size());
}

struct Solver {
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline;
    bool deadline_hit = false;
    std::uint64_t nodes = 0;

    bool out_of_time() {
        if (!has_deadline) return false;
        if (deadline_hit) return true;
        if (std::chrono::steady_clock::now() >= deadline) deadline_hit = true;
        return deadline_hit;
    }

    struct Sol {
        Weight weight;
        std::vector<Vertex> set;
    };

    // Best independent set of g with weight strictly greater than alpha, or
    // nullopt if none exists (or the bound proves none can).
    std::optional<Sol> solve(const Graph& g, Weight alpha) {
        ++nodes;
        ReductionTrace trace = reduce_auto(g, VertexLabeling(g.num_vertices()));
        const Graph& kernel = trace.kernel;

        if (trace.kernel_empty()) {
            VertexLabeling full = unfold(trace, VertexLabeling(0));
            auto set = full.included();
            Weight w = set_weight(g, set);
            if (w > alpha) return Sol{w, std::move(set)};
            return std::nullopt;
        }

        Weight bound = trace.offset + kernel.total_weight();
        if (kernel.unit_weights())
            bound = std::min(bound, trace.offset + clique_cover_bound(kernel));
        if (bound <= alpha) return std::nullopt;

        if (out_of_time()) return std::nullopt;

        Vertex branch = 0;
        for (Vertex v = 1; v < kernel.num_vertices(); ++v)
            if (kernel.degree(v) > kernel.degree(branch)) branch = v;

        std::optional<Sol> best;

        auto lift = [&](const VertexLabeling& branch_labels, const Residual& residual,
                        const Sol& child) -> Sol {
            VertexLabeling kernel_labels(kernel.num_vertices());
            for (Vertex v = 0; v < kernel.num_vertices(); ++v)
                kernel_labels.set(v, branch_labels[v] == Label::Included ? Label::Included
                                                                         : Label::Excluded);
            for (Vertex r : child.set) kernel_labels.set(residual.to_original[r], Label::Included);
            VertexLabeling full = unfold(trace, kernel_labels);
            auto set = full.included();
            Weight w = set_weight(g, set);
            return {w, std::move(set)};
        };

        // include branch first
        {
            VertexLabeling l1(kernel.num_vertices());
            l1.set(branch, Label::Included);
            for (Vertex nb : kernel.neighbors(branch)) l1.set(nb, Label::Excluded);
            Residual r1 = residual_subgraph(kernel, l1);
            Weight child_alpha = alpha - trace.offset - kernel.weight(branch);
            if (auto child = solve(r1.graph, child_alpha)) {
                Sol lifted = lift(l1, r1, *child);
                if (lifted.weight > alpha) {
                    alpha = lifted.weight;
                    best = std::move(lifted);
                }
            }
        }
        if (!out_of_time()) {
            VertexLabeling l2(kernel.num_vertices());
            l2.set(branch, Label::Excluded);
            Residual r2 = residual_subgraph(kernel, l2);
            if (auto child = solve(r2.graph, alpha - trace.offset)) {
                Sol lifted = lift(l2, r2, *child);
                if (lifted.weight > alpha) best = std::move(lifted);
            }
        }
        return best;
    }
};

}  // namespace

ExactResult exact_mwis(const Graph& g, std::chrono::duration<double> time_limit) {
    Solver solver;
    solver.has_deadline = std::isfinite(time_limit.count());
    if (solver.has_deadline)
        solver.deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(time_limit);

    ExactResult result;
    result.set = greedy_maximal(g);
    result.weight = set_weight(g, result.set);

    if (auto better = solver.solve(g, result.weight - 1)) {
        result.set = std::move(better->set);
        result.weight = better->weight;
    }
    result.proven_optimal = !solver.deadline_hit;
    result.nodes = solver.nodes;
    assert(is_independent_set(g, result.set));
    return result;
}

namespace {

void emit_wrapped(std::ostream& out, const std::string& head, const std::vector<std::string>& tokens) {
    std::string line = head;
    bool first = true;
    for (const auto& tok : tokens) {
        const std::string piece = first ? tok : " " + tok;
        if (!first && line.size() + piece.size() > 78) {
            out << line << "\n";
            line = " " + tok;
        } else {
            line += piece;
        }
        first = false;
    }
    out << line << "\n";
}

std::string var(Vertex v) { return "x" + std::to_string(v); }

}  // namespace

void export_lp(const Graph& g, std::ostream& out) {
    std::vector<std::string> obj;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::string term = g.weight(v) == 1 ? var(v) : std::to_string(g.weight(v)) + " " + var(v);
        obj.push_back(v == 0 ? term : "+ " + term);
    }
    out << "Maximize\n";
    emit_wrapped(out, " obj: ", obj);
    out << "Subject To\n";
    std::size_t idx = 0;
    for (auto [u, v] : g.edges())
        out << " c" << idx++ << ": " << var(u) << " + " << var(v) << " <= 1\n";
    if (g.num_vertices() > 0) {
        out << "Binaries\n";
        std::vector<std::string> names;
        for (Vertex v = 0; v < g.num_vertices(); ++v) names.push_back(var(v));
        emit_wrapped(out, " ", names);
    }
    out << "End\n";
    if (!out) throw std::runtime_error("write failure while exporting LP");
}

void export_qp(const Graph& g, std::ostream& out) {
    if (!g.unit_weights())
        throw std::invalid_argument("quadratic formulation applies to unweighted graphs only");
    std::vector<std::string> obj;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        obj.push_back(v == 0 ? var(v) + "^2" : "+ " + var(v) + "^2");
    for (auto [u, v] : g.edges()) obj.push_back("- 2 " + var(u) + " " + var(v));
    out << "Maximize\n";
    emit_wrapped(out, " obj: ", obj);
    out << "Subject To\n";
    if (g.num_vertices() > 0) {
        out << "Binaries\n";
        std::vector<std::string> names;
        for (Vertex v = 0; v < g.num_vertices(); ++v) names.push_back(var(v));
        emit_wrapped(out, " ", names);
    }
    out << "End\n";
    if (!out) throw std::runtime_error("write failure while exporting QP");
}

}  // namespace mis
