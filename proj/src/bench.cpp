#include "mis/bench.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mis/exact.hpp"
#include "mis/io.hpp"
#include "mis/rng.hpp"

namespace mis {

SolverKind parse_solver(const std::string& name) {
    if (name == "treesearch") return SolverKind::TreeSearch;
    if (name == "exact") return SolverKind::Exact;
    if (name == "greedy-maximal") return SolverKind::GreedyMaximal;
    throw std::invalid_argument("unknown solver: " + name);
}

std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::TreeSearch: return "treesearch";
        case SolverKind::Exact: return "exact";
        case SolverKind::GreedyMaximal: return "greedy-maximal";
    }
    return "unknown";
}

std::string InstanceResult::to_json_line() const {
    nlohmann::json j;
    j["instance"] = instance;
    j["dataset"] = dataset;
    j["solver"] = solver;
    j["config"] = config;
    j["seed"] = seed;
    j["found"] = found;
    if (found) {
        j["best_weight"] = best_weight;
        j["time_to_best"] = time_to_best;
        j["solution"] = solution;
    }
    j["total_time"] = total_time;
    j["steps"] = steps;
    j["solutions_found"] = solutions_found;
    j["termination"] = termination;
    if (!error.empty()) j["error"] = error;
    return j.dump();
}

InstanceResult InstanceResult::from_json_line(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    InstanceResult r;
    r.instance = j.value("instance", "");
    r.dataset = j.value("dataset", "");
    r.solver = j.value("solver", "");
    r.config = j.value("config", "");
    r.seed = j.value("seed", 0ULL);
    r.found = j.value("found", false);
    if (r.found) {
        r.best_weight = j.at("best_weight").get<Weight>();
        r.time_to_best = j.value("time_to_best", 0.0);
        if (j.contains("solution")) r.solution = j.at("solution").get<std::vector<Vertex>>();
    }
    r.total_time = j.value("total_time", 0.0);
    r.steps = j.value("steps", 0ULL);
    r.solutions_found = j.value("solutions_found", 0ULL);
    r.termination = j.value("termination", "");
    r.error = j.value("error", "");
    return r;
}

namespace {

InstanceResult solve_instance(const std::filesystem::path& path, const BenchOptions& options,
                              std::uint64_t seed, const std::atomic<bool>* cancel) {
    InstanceResult r;
    r.instance = path.string();
    r.dataset = options.dataset_label;
    r.solver = to_string(options.solver);
    r.config = options.config.fingerprint();
    r.seed = seed;
    try {
        Graph g = parse_graph(path);
        const auto t0 = std::chrono::steady_clock::now();
        switch (options.solver) {
            case SolverKind::TreeSearch: {
                SearchConfig cfg = options.config;
                cfg.seed = seed;
                SolveRecord rec = tree_search(g, cfg, cancel);
                r.found = rec.found;
                r.best_weight = rec.best_weight;
                r.time_to_best = rec.time_to_best;
                r.total_time = rec.total_time;
                r.steps = rec.steps;
                r.solutions_found = rec.solutions_found;
                r.termination = to_string(rec.termination);
                r.solution = rec.best_set;
                break;
            }
            case SolverKind::Exact: {
                ExactResult res = exact_mwis(g, options.config.time_limit);
                r.found = true;
                r.best_weight = res.weight;
                r.solution = res.set;
                r.steps = res.nodes;
                r.solutions_found = 1;
                r.total_time =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                r.time_to_best = r.total_time;
                r.termination = res.proven_optimal ? "proven_optimal" : "time_limit";
                break;
            }
            case SolverKind::GreedyMaximal: {
                auto set = greedy_maximal(g);
                r.found = true;
                r.best_weight = set_weight(g, set);
                r.solution = std::move(set);
                r.solutions_found = 1;
                r.total_time =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                r.time_to_best = r.total_time;
                r.termination = "completed";
                break;
            }
        }
        if (r.found && !is_independent_set(g, r.solution))
            throw std::logic_error("solver reported a non-independent set");
    } catch (const std::exception& e) {
        r.found = false;
        r.solution.clear();
        r.best_weight = 0;
        r.error = e.what();
    }
    return r;
}

}  // namespace

std::vector<InstanceResult> run_benchmark(const std::vector<std::filesystem::path>& instances,
                                          const BenchOptions& options) {
    std::vector<InstanceResult> results(instances.size());

    std::ofstream results_file;
    if (options.results_path) {
        results_file.open(*options.results_path, std::ios::app);
        if (!results_file)
            throw std::runtime_error("cannot open results file " + options.results_path->string());
    }
    std::mutex write_mu;
    auto record = [&](const InstanceResult& r) {
        if (!options.results_path) return;
        std::lock_guard<std::mutex> lk(write_mu);
        results_file << r.to_json_line() << "\n";
        results_file.flush();  // crash-safe: lines land as instances finish
    };

    // watchdog state: start times of in-flight instances, cancel flags
    std::vector<std::atomic<bool>> cancels(instances.size());
    std::vector<std::atomic<double>> started(instances.size());
    for (auto& s : started) s.store(-1.0);
    std::atomic<bool> done{false};
    const double hard_limit = options.config.time_limit.count() * 1.5;

    std::thread watchdog([&] {
        using namespace std::chrono;
        const auto t0 = steady_clock::now();
        while (!done.load()) {
            std::this_thread::sleep_for(milliseconds(50));
            const double now = duration<double>(steady_clock::now() - t0).count();
            for (std::size_t i = 0; i < instances.size(); ++i) {
                const double s = started[i].load();
                if (s >= 0 && now - s > hard_limit) cancels[i].store(true);
            }
        }
    });
    const auto batch_t0 = std::chrono::steady_clock::now();

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= instances.size()) return;
            started[i].store(
                std::chrono::duration<double>(std::chrono::steady_clock::now() - batch_t0).count());
            const std::uint64_t seed = hash_combine(options.config.seed, i);
            results[i] = solve_instance(instances[i], options, seed, &cancels[i]);
            started[i].store(-1.0);
            record(results[i]);
        }
    };

    const int workers = std::max(1, options.batch_workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers - 1; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    done.store(true);
    watchdog.join();
    return results;
}

AggregateRow aggregate(const std::vector<InstanceResult>& results,
                       const std::optional<std::map<std::string, Weight>>& optima) {
    AggregateRow row;
    row.total_count = results.size();
    if (!results.empty()) row.dataset = results.front().dataset;

    double sum_best = 0, sum_time = 0, sum_ratio = 0;
    for (const auto& r : results) {
        if (!r.found) continue;
        ++row.solved_count;
        sum_best += static_cast<double>(r.best_weight);
        sum_time += r.time_to_best;
        if (optima) {
            auto it = optima->find(r.instance);
            if (it == optima->end())
                throw std::invalid_argument("no optimum supplied for " + r.instance);
            if (it->second <= 0)
                throw std::invalid_argument("optimum for " + r.instance + " must be positive");
            sum_ratio += static_cast<double>(r.best_weight) / static_cast<double>(it->second);
        }
    }
    if (row.solved_count > 0) {
        row.mean_best = sum_best / row.solved_count;
        row.mean_time_to_best = sum_time / row.solved_count;
        if (optima) row.mean_ratio = sum_ratio / row.solved_count;
    }
    return row;
}

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string format_cell_top(const AggregateRow& row) {
    const std::string best = row.mean_best ? fixed2(*row.mean_best) : "-";
    const std::string ratio = row.mean_ratio ? fixed2(*row.mean_ratio) : "-";
    return best + " (" + ratio + ")";
}

std::string format_cell_bottom(const AggregateRow& row) {
    if (!row.mean_time_to_best) return "-";
    return fixed2(*row.mean_time_to_best) + " (" + std::to_string(row.solved_count) + ")";
}

std::string render_table(const std::vector<AggregateRow>& rows, TableStyle style) {
    std::ostringstream out;
    if (style == TableStyle::Csv) {
        out << "dataset,mean_best,mean_ratio,mean_time_to_best,solved,total\n";
        for (const auto& r : rows) {
            out << r.dataset << ',';
            out << (r.mean_best ? fixed2(*r.mean_best) : "") << ',';
            out << (r.mean_ratio ? fixed2(*r.mean_ratio) : "") << ',';
            out << (r.mean_time_to_best ? fixed2(*r.mean_time_to_best) : "") << ',';
            out << r.solved_count << ',' << r.total_count << "\n";
        }
        return out.str();
    }

    std::size_t label_width = 5;
    for (const auto& r : rows) label_width = std::max(label_width, r.dataset.size());
    for (const auto& r : rows) {
        out << r.dataset << std::string(label_width - r.dataset.size() + 2, ' ')
            << format_cell_top(r) << "\n";
        out << std::string(label_width + 2, ' ') << format_cell_bottom(r) << "\n";
    }
    return out.str();
}

std::vector<InstanceResult> read_results_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<InstanceResult> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(InstanceResult::from_json_line(line));
    }
    return out;
}

std::map<std::string, Weight> read_optima_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, Weight> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (line[0] == '#') continue;
        const auto comma = line.rfind(',');
        if (comma == std::string::npos) throw std::runtime_error("malformed optima line: " + line);
        out[line.substr(0, comma)] = std::stoll(line.substr(comma + 1));
    }
    return out;
}

}  // namespace mis
