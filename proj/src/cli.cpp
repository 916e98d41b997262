#include "mis/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "mis/bench.hpp"
#include "mis/exact.hpp"
#include "mis/gen.hpp"
#include "mis/graph.hpp"
#include "mis/io.hpp"
#include "mis/rng.hpp"
#include "mis/tree_search.hpp"

namespace mis::cli {

namespace {

std::chrono::duration<double> parse_duration(const std::string& text) {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    const std::string unit = text.substr(pos);
    if (unit.empty() || unit == "s") return std::chrono::duration<double>(value);
    if (unit == "ms") return std::chrono::duration<double>(value / 1000.0);
    if (unit == "m") return std::chrono::duration<double>(value * 60.0);
    if (unit == "h") return std::chrono::duration<double>(value * 3600.0);
    throw CLI::ValidationError("time", "unknown duration unit: " + unit);
}

int default_threads() {
    if (const char* env = std::getenv("MIS_THREADS")) {
        const int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct SearchFlags {
    std::string time_limit = "15s";
    bool reduction = false;
    bool local_search = false;
    std::int64_t queue_cap = 0;
    bool weighted_pop = false;
    int prob_maps = 32;
    std::string provider = "random";
    int threads = default_threads();
    std::uint64_t seed = 0;
    bool weighted = false;

    void attach(CLI::App& app) {
        app.add_option("--time-limit", time_limit, "solve time limit, e.g. 15s / 500ms / 2m");
        app.add_flag("--reduction", reduction, "kernelize every popped partial solution");
        app.add_flag("--local-search", local_search, "polish complete solutions");
        app.add_option("--queue-cap", queue_cap, "prune the queue to this many entries");
        app.add_flag("--weighted-pop", weighted_pop, "pop favoring more-labeled entries");
        app.add_option("--prob-maps", prob_maps, "probability maps per expansion");
        app.add_option("--provider", provider, "random | degree | external:<endpoint>");
        app.add_option("--threads", threads, "worker threads (default $MIS_THREADS or 1)");
        app.add_option("--seed", seed, "random seed");
        app.add_flag("--weighted", weighted, "use weighted algorithms even on unit weights");
    }

    SearchConfig to_config() const {
        SearchConfig cfg;
        cfg.time_limit = parse_duration(time_limit);
        cfg.use_reduction = reduction;
        cfg.use_local_search = local_search;
        if (queue_cap > 0) cfg.queue_cap = static_cast<std::size_t>(queue_cap);
        cfg.weighted_pop = weighted_pop;
        cfg.num_prob_maps = prob_maps;
        cfg.threads = threads;
        cfg.seed = seed;
        cfg.force_weighted = weighted;
        if (provider == "random") {
            cfg.provider = ProviderKind::UniformRandom;
        } else if (provider == "degree") {
            cfg.provider = ProviderKind::DegreeHeuristic;
        } else if (provider.rfind("external:", 0) == 0) {
            cfg.provider = ProviderKind::External;
            cfg.external_endpoint = provider.substr(9);
        } else {
            throw CLI::ValidationError("--provider",
                                       "expected random, degree or external:<endpoint>");
        }
        return cfg;
    }
};

std::optional<GraphFormat> parse_format_flag(const std::string& name) {
    if (name.empty() || name == "auto") return std::nullopt;
    return parse_format(name);
}

std::vector<std::filesystem::path> collect_instances(const std::vector<std::string>& inputs) {
    std::vector<std::filesystem::path> files;
    for (const auto& input : inputs) {
        std::filesystem::path p(input);
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> dir_files;
            for (const auto& entry : std::filesystem::directory_iterator(p))
                if (entry.is_regular_file() && format_from_extension(entry.path()))
                    dir_files.push_back(entry.path());
            std::sort(dir_files.begin(), dir_files.end());
            files.insert(files.end(), dir_files.begin(), dir_files.end());
        } else {
            files.push_back(p);
        }
    }
    return files;
}

void print_record(std::ostream& out, const InstanceResult& r) {
    out << "instance: " << r.instance << "\n";
    out << "solver: " << r.solver << "\n";
    out << "config: " << r.config << "\n";
    out << "seed: " << r.seed << "\n";
    out << "found: " << (r.found ? "true" : "false") << "\n";
    if (r.found) {
        out << "best_weight: " << r.best_weight << "\n";
        out << "time_to_best: " << r.time_to_best << "\n";
    }
    out << "total_time: " << r.total_time << "\n";
    out << "steps: " << r.steps << "\n";
    out << "solutions_found: " << r.solutions_found << "\n";
    out << "termination: " << r.termination << "\n";
    if (!r.error.empty()) out << "error: " << r.error << "\n";
    if (r.found) {
        out << "solution:";
        for (Vertex v : r.solution) out << ' ' << v;
        out << "\n";
    }
}

int cmd_gen(const std::string& model_name, Vertex n, Vertex n_max, double p, Vertex m,
            double p_triangle, Vertex k, double p_rewire, double alpha, double temperature,
            double deg, std::uint64_t seed, int count, const std::string& out_dir,
            const std::string& prefix, bool weighted, double mu, double sigma) {
    GenSpec spec;
    spec.model = parse_model(model_name);
    spec.p = p;
    spec.m = m;
    spec.p_triangle = p_triangle;
    spec.k = k;
    spec.p_rewire = p_rewire;
    spec.alpha = alpha;
    spec.temperature = temperature;
    spec.target_avg_degree = deg;

    std::filesystem::create_directories(out_dir);
    const std::string base = prefix.empty() ? model_name : prefix;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t instance_seed = hash_combine(seed, static_cast<std::uint64_t>(i));
        spec.seed = instance_seed;
        spec.n = n;
        if (n_max > n) {
            Rng size_rng(hash_combine(instance_seed, 0x5a17));
            spec.n = n + static_cast<Vertex>(size_rng.below(static_cast<std::uint64_t>(n_max - n + 1)));
        }
        Graph g = generate(spec);
        if (weighted) g = gen_weights(g, mu, sigma, hash_combine(instance_seed, 0x77));

        char name[256];
        std::snprintf(name, sizeof(name), "%s_%03d.metis", base.c_str(), i);
        const auto path = std::filesystem::path(out_dir) / name;
        write_metis(g, path, weighted);
        std::cout << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Maximum (weighted) independent set toolkit: guided tree search, exact solvers,"
                 " generators and benchmarking"};
    app.require_subcommand(1);

    // --- gen -----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate random graph instances");
    std::string g_model = "er", g_out = ".", g_prefix;
    Vertex g_n = 100, g_n_max = 0, g_m = 2, g_k = 2;
    double g_p = 0.15, g_ptri = 0.05, g_prew = 0.15, g_alpha = 0.75, g_temp = 0.1, g_deg = 10.0;
    double g_mu = 100.0, g_sigma = 30.0;
    std::uint64_t g_seed = 0;
    int g_count = 1;
    bool g_weighted = false;
    gen->add_option("--model", g_model, "er | ba | hk | ws | hrg")->required();
    gen->add_option("--n", g_n, "vertex count")->required();
    gen->add_option("--n-max", g_n_max, "upper bound for uniform n in [n, n-max]");
    gen->add_option("--p", g_p, "ER edge probability");
    gen->add_option("--m", g_m, "BA/HK attachments per vertex");
    gen->add_option("--p-triangle", g_ptri, "HK triangle probability");
    gen->add_option("--k", g_k, "WS ring degree (even)");
    gen->add_option("--p-rewire", g_prew, "WS rewiring probability");
    gen->add_option("--alpha", g_alpha, "HRG radial dispersion");
    gen->add_option("--temperature", g_temp, "HRG temperature");
    gen->add_option("--deg", g_deg, "HRG target average degree");
    gen->add_option("--seed", g_seed, "base seed; instance i uses hash(seed, i)");
    gen->add_option("--count", g_count, "number of instances");
    gen->add_option("--out", g_out, "output directory");
    gen->add_option("--prefix", g_prefix, "file name prefix (default: model)");
    gen->add_flag("--weighted", g_weighted, "sample integer weights from a clipped normal");
    gen->add_option("--mu", g_mu, "weight mean");
    gen->add_option("--sigma", g_sigma, "weight standard deviation");

    // --- solve ---------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string s_instance, s_format = "auto", s_solver = "treesearch", s_solution_out;
    SearchFlags s_flags;
    solve->add_option("instance", s_instance, "graph file")->required();
    solve->add_option("--format", s_format, "metis | dimacs | edgelist | auto");
    solve->add_option("--solver", s_solver, "treesearch | exact | greedy-maximal");
    solve->add_option("--solution-out", s_solution_out, "write the solution vertex list here");
    s_flags.attach(*solve);

    // --- benchmark -------------------------------------------------------------
    auto* bench = app.add_subcommand("benchmark", "solve a batch and aggregate");
    std::vector<std::string> b_inputs;
    std::string b_solver = "treesearch", b_label = "dataset", b_results, b_optima;
    int b_workers = 1;
    SearchFlags b_flags;
    bench->add_option("instances", b_inputs, "graph files or directories")->required();
    bench->add_option("--solver", b_solver, "treesearch | exact | greedy-maximal");
    bench->add_option("--label", b_label, "dataset label for aggregation");
    bench->add_option("--results", b_results, "append line-delimited records here");
    bench->add_option("--optima", b_optima, "csv of instance,optimal_weight for ratios");
    bench->add_option("--batch-workers", b_workers, "instances solved in parallel");
    b_flags.attach(*bench);

    // --- verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a solution file against a graph");
    std::string v_graph, v_solution, v_format = "auto";
    verify->add_option("graph", v_graph, "graph file")->required();
    verify->add_option("solution", v_solution, "solution file, one vertex id per line")->required();
    verify->add_option("--format", v_format, "metis | dimacs | edgelist | auto");

    // --- export ----------------------------------------------------------------
    auto* explp = app.add_subcommand("export-lp", "emit the linear program");
    auto* expqp = app.add_subcommand("export-qp", "emit the quadratic program");
    std::string e_graph, e_out, e_format = "auto";
    for (auto* sub : {explp, expqp}) {
        sub->add_option("graph", e_graph, "graph file")->required();
        sub->add_option("-o,--out", e_out, "output file (default stdout)");
        sub->add_option("--format", e_format, "metis | dimacs | edgelist | auto");
    }

    // --- table -----------------------------------------------------------------
    auto* table = app.add_subcommand("table", "render a results file");
    std::string t_results, t_optima;
    bool t_csv = false;
    table->add_option("results", t_results, "line-delimited results file")->required();
    table->add_option("--optima", t_optima, "csv of instance,optimal_weight");
    table->add_flag("--csv", t_csv, "csv output instead of text cells");

    std::vector<const char*> argv;
    argv.push_back("mis");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*gen)
            return cmd_gen(g_model, g_n, g_n_max, g_p, g_m, g_ptri, g_k, g_prew, g_alpha, g_temp,
                           g_deg, g_seed, g_count, g_out, g_prefix, g_weighted, g_mu, g_sigma);

        if (*solve) {
            BenchOptions options;
            options.solver = parse_solver(s_solver);
            options.config = s_flags.to_config();
            options.dataset_label = "single";
            auto results = run_benchmark({std::filesystem::path(s_instance)}, options);
            const auto& r = results.front();
            print_record(std::cout, r);
            if (r.found && !s_solution_out.empty())
                write_solution(r.solution, s_solution_out);
            return r.found ? 0 : 1;
        }

        if (*bench) {
            BenchOptions options;
            options.solver = parse_solver(b_solver);
            options.config = b_flags.to_config();
            options.dataset_label = b_label;
            options.batch_workers = b_workers;
            if (!b_results.empty()) options.results_path = b_results;
            auto instances = collect_instances(b_inputs);
            if (instances.empty()) {
                std::cerr << "no instances found\n";
                return 1;
            }
            auto results = run_benchmark(instances, options);
            std::optional<std::map<std::string, Weight>> optima;
            if (!b_optima.empty()) optima = read_optima_csv(b_optima);
            auto row = aggregate(results, optima);
            std::cout << render_table({row}, TableStyle::Text);
            bool all_found = true;
            for (const auto& r : results) {
                if (!r.found) {
                    all_found = false;
                    std::cerr << "failed: " << r.instance
                              << (r.error.empty() ? "" : " (" + r.error + ")") << "\n";
                }
            }
            return all_found ? 0 : 2;
        }

        if (*verify) {
            Graph g = parse_graph(v_graph, parse_format_flag(v_format));
            auto set = read_solution(v_solution);
            std::set<Vertex> dedup(set.begin(), set.end());
            bool ok = dedup.size() == set.size();
            if (!ok) std::cout << "duplicate vertices in solution\n";
            for (Vertex v : set)
                if (v < 0 || v >= g.num_vertices()) {
                    std::cout << "vertex " << v << " out of range\n";
                    ok = false;
                }
            if (ok) {
                VertexLabeling l(g.num_vertices());
                for (Vertex v : set) l.set(v, Label::Included);
                for (Vertex v : set)
                    for (Vertex nb : g.neighbors(v))
                        if (l[nb] != Label::Included) l.set(nb, Label::Excluded);
                for (const auto& violation : validate_labeling(g, l)) {
                    std::cout << violation.to_string() << "\n";
                    ok = false;
                }
            }
            if (ok) {
                std::cout << "valid independent set of " << set.size() << " vertices, weight "
                          << set_weight(g, set) << "\n";
                return 0;
            }
            std::cout << "invalid\n";
            return 1;
        }

        if (*explp || *expqp) {
            Graph g = parse_graph(e_graph, parse_format_flag(e_format));
            std::ostringstream text;
            if (*explp)
                export_lp(g, text);
            else
                export_qp(g, text);
            if (e_out.empty()) {
                std::cout << text.str();
            } else {
                std::ofstream out(e_out);
                if (!out) throw std::runtime_error("cannot open " + e_out + " for writing");
                out << text.str();
            }
            return 0;
        }

        if (*table) {
            auto results = read_results_file(t_results);
            std::optional<std::map<std::string, Weight>> optima;
            if (!t_optima.empty()) optima = read_optima_csv(t_optima);
            std::map<std::string, std::vector<InstanceResult>> by_dataset;
            for (auto& r : results) by_dataset[r.dataset].push_back(std::move(r));
            std::vector<AggregateRow> rows;
            for (auto& [label, group] : by_dataset) {
                auto row = aggregate(group, optima);
                row.dataset = label;
                rows.push_back(row);
            }
            std::cout << render_table(rows, t_csv ? TableStyle::Csv : TableStyle::Text);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace mis::cli
