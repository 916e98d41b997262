#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mis/graph.hpp"
#include "mis/rng.hpp"

namespace mis {

enum class ProviderKind { UniformRandom, DegreeHeuristic, External };

struct SearchConfig {
    int num_prob_maps = 32;
    bool use_reduction = false;
    bool use_local_search = false;
    std::optional<std::size_t> queue_cap;
    bool weighted_pop = false;
    ProviderKind provider = ProviderKind::UniformRandom;
    std::string external_endpoint;  // "tcp:host:port" or a command line
    int threads = 1;
    std::chrono::duration<double> time_limit{15.0};
    std::uint64_t seed = 0;
    bool force_weighted = false;  // weighted reduction rules even on unit weights

    void validate() const;  // throws std::invalid_argument

    // short flag string used as the config fingerprint in result records
    std::string fingerprint() const;
};

// |V_residual| x m matrix of values in [0,1], row-major.
struct ProbabilityMaps {
    std::size_t rows = 0, cols = 0;
    std::vector<double> values;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows);
        for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
        return out;
    }
};

ProbabilityMaps uniform_random_maps(Vertex n_res, int m, Rng& rng);

// 1 - deg(u)/max_deg plus per-entry uniform noise in [0, 0.05], clipped to
// [0,1]. Non-random stand-in used to compare against random guidance.
ProbabilityMaps degree_heuristic_maps(const Graph& residual, int m, Rng& rng);

// Residual graph shipped over the provider protocol (see provider.hpp);
// response values clipped to [0,1].
ProbabilityMaps external_maps(const Graph& residual, const std::string& endpoint, int m);

// List of partial solutions. random_pop removes a uniform entry, or one drawn
// proportional to labeled_count + 1 in weighted mode. Pruning drops the
// oldest entries first.
class SearchQueue {
public:
    void push(VertexLabeling labels);
    VertexLabeling pop(bool weighted, Rng& rng);  // throws std::out_of_range on empty
    void prune(std::size_t cap);

    std::size_t size() const { return slots_.size(); }
    bool empty() const { return slots_.empty(); }
    std::vector<VertexLabeling> drain();  // all entries, oldest first

private:
    struct Slot {
        VertexLabeling labels;
        std::uint64_t seq;
    };

    void fenwick_add(std::size_t i, std::int64_t delta);
    std::int64_t fenwick_total() const;
    std::size_t fenwick_find(std::int64_t target) const;  // smallest i with prefix(i+1) > target
    VertexLabeling remove_at(std::size_t idx);

    std::vector<Slot> slots_;
    std::vector<std::int64_t> fenwick_;
    std::uint64_t next_seq_ = 0;
};

enum class Termination { TimeLimit, QueueExhausted, Cancelled };

std::string to_string(Termination t);

struct SolveRecord {
    std::vector<Vertex> best_set;
    Weight best_weight = 0;
    bool found = false;
    double time_to_best = 0.0;  // seconds
    double total_time = 0.0;    // seconds
    std::uint64_t steps = 0;    // pops
    std::uint64_t solutions_found = 0;
    std::size_t max_queue_len = 0;
    Termination termination = Termination::QueueExhausted;
};

// One greedy pass over the residual graph: repeatedly include the unlabeled
// vertex with the highest remaining probability, excluding its neighbors;
// stops when the next candidate is already excluded. Ties broken by lowest
// vertex id. Returns the extended labeling (complete or partial).
VertexLabeling expand(const Graph& residual, VertexLabeling labels, std::span<const double> column);

SolveRecord tree_search(const Graph& g, const SearchConfig& cfg,
                        const std::atomic<bool>* cancel = nullptr);

}  // namespace mis
