#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mis/graph.hpp"
#include "mis/tree_search.hpp"

namespace mis {

enum class SolverKind { TreeSearch, Exact, GreedyMaximal };

SolverKind parse_solver(const std::string& name);  // "treesearch" | "exact" | "greedy-maximal"
std::string to_string(SolverKind k);

struct InstanceResult {
    std::string instance;  // path or synthetic id
    std::string dataset;   // aggregation label
    std::string solver;
    std::string config;    // flag fingerprint
    std::uint64_t seed = 0;
    bool found = false;
    Weight best_weight = 0;
    double time_to_best = 0.0;
    double total_time = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t solutions_found = 0;
    std::string termination;
    std::vector<Vertex> solution;
    std::string error;  // diagnostic when found = false due to failure

    std::string to_json_line() const;
    static InstanceResult from_json_line(const std::string& line);
};

struct BenchOptions {
    SolverKind solver = SolverKind::TreeSearch;
    SearchConfig config;
    std::string dataset_label = "dataset";
    std::optional<std::filesystem::path> results_path;  // appended as lines complete
    int batch_workers = 1;  // instance-level parallelism
};

// Solves each instance independently; per-instance seed is
// hash(config.seed, instance index). Failures are recorded, never fatal.
// Every reported solution is re-checked with is_independent_set first.
std::vector<InstanceResult> run_benchmark(const std::vector<std::filesystem::path>& instances,
                                          const BenchOptions& options);

struct AggregateRow {
    std::string dataset;
    std::optional<double> mean_best;
    std::optional<double> mean_ratio;
    std::optional<double> mean_time_to_best;
    std::size_t solved_count = 0;
    std::size_t total_count = 0;
};

// Means over found instances only; ratio_i = best_i / optimum_i when optima
// are supplied. Throws if a found instance lacks an optimum or has optimum 0.
AggregateRow aggregate(const std::vector<InstanceResult>& results,
                       const std::optional<std::map<std::string, Weight>>& optima = std::nullopt);

enum class TableStyle { Text, Csv };

// Text cells follow the two-line grammar "mean_best (mean_ratio)" over
// "mean_time (solved_count)", with "-" for absent values.
std::string render_table(const std::vector<AggregateRow>& rows, TableStyle style);

std::string format_cell_top(const AggregateRow& row);
std::string format_cell_bottom(const AggregateRow& row);

std::vector<InstanceResult> read_results_file(const std::filesystem::path& path);

std::map<std::string, Weight> read_optima_csv(const std::filesystem::path& path);

}  // namespace mis
