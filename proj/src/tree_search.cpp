#include "mis/tree_search.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mis/local_search.hpp"
#include "mis/provider.hpp"
#include "mis/reduce.hpp"

namespace mis {

void SearchConfig::validate() const {
    if (num_prob_maps < 1) throw std::invalid_argument("num_prob_maps must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (queue_cap && *queue_cap < 1) throw std::invalid_argument("queue_cap must be >= 1");
    if (provider == ProviderKind::External && external_endpoint.empty())
        throw std::invalid_argument("external provider requires an endpoint");
}

std::string SearchConfig::fingerprint() const {
    std::string fp = "m" + std::to_string(num_prob_maps);
    if (use_reduction) fp += "+r";
    if (use_local_search) fp += "+ls";
    if (queue_cap) fp += "+qp" + std::to_string(*queue_cap);
    if (weighted_pop) fp += "+wp";
    switch (provider) {
        case ProviderKind::UniformRandom: fp += "+rand"; break;
        case ProviderKind::DegreeHeuristic: fp += "+deg"; break;
        case ProviderKind::External: fp += "+ext"; break;
    }
    if (force_weighted) fp += "+w";
    if (threads > 1) fp += "+mt" + std::to_string(threads);
    return fp;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::TimeLimit: return "time_limit";
        case Termination::QueueExhausted: return "queue_exhausted";
        case Termination::Cancelled: return "cancelled";
    }
    return "unknown";
}

ProbabilityMaps uniform_random_maps(Vertex n_res, int m, Rng& rng) {
    if (n_res < 0 || m < 1) throw std::invalid_argument("invalid probability map shape");
    ProbabilityMaps maps;
    maps.rows = static_cast<std::size_t>(n_res);
    maps.cols = static_cast<std::size_t>(m);
    maps.values.resize(maps.rows * maps.cols);
    for (auto& v : maps.values) v = rng.uniform01();
    return maps;
}

ProbabilityMaps degree_heuristic_maps(const Graph& residual, int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("invalid probability map shape");
    const Vertex n = residual.num_vertices();
    Vertex max_deg = 1;
    for (Vertex v = 0; v < n; ++v) max_deg = std::max(max_deg, residual.degree(v));

    ProbabilityMaps maps;
    maps.rows = static_cast<std::size_t>(n);
    maps.cols = static_cast<std::size_t>(m);
    maps.values.resize(maps.rows * maps.cols);
    for (Vertex v = 0; v < n; ++v) {
        const double base = 1.0 - static_cast<double>(residual.degree(v)) / max_deg;
        for (int c = 0; c < m; ++c)
            maps.values[static_cast<std::size_t>(v) * m + c] =
                std::clamp(base + 0.05 * rng.uniform01(), 0.0, 1.0);
    }
    return maps;
}

ProbabilityMaps external_maps(const Graph& residual, const std::string& endpoint, int m) {
    auto client = ProviderClient::connect(endpoint);
    return client->request(residual, m);
}

// --- SearchQueue ------------------------------------------------------------

void SearchQueue::fenwick_add(std::size_t i, std::int64_t delta) {
    for (; i < fenwick_.size(); i |= i + 1) fenwick_[i] += delta;
}

std::int64_t SearchQueue::fenwick_total() const {
    std::int64_t sum = 0;
    for (std::size_t i = slots_.size(); i > 0; i &= i - 1) sum += fenwick_[i - 1];
    return sum;
}

std::size_t SearchQueue::fenwick_find(std::int64_t target) const {
    // smallest index with prefix sum > target
    std::size_t pos = 0;
    std::size_t mask = 1;
    while (mask <= slots_.size()) mask <<= 1;
    for (mask >>= 1; mask > 0; mask >>= 1) {
        std::size_t next = pos + mask;
        if (next <= slots_.size() && fenwick_[next - 1] <= target) {
            pos = next;
            target -= fenwick_[next - 1];
        }
    }
    return pos;
}

void SearchQueue::push(VertexLabeling labels) {
    const std::int64_t w = labels.labeled_count() + 1;
    slots_.push_back({std::move(labels), next_seq_++});
    if (fenwick_.size() < slots_.size()) fenwick_.resize(slots_.size(), 0);
    fenwick_add(slots_.size() - 1, w);
}

VertexLabeling SearchQueue::remove_at(std::size_t idx) {
    VertexLabeling out = std::move(slots_[idx].labels);
    fenwick_add(idx, -(out.labeled_count() + 1));
    if (idx + 1 != slots_.size()) {
        const std::int64_t last_w = slots_.back().labels.labeled_count() + 1;
        fenwick_add(slots_.size() - 1, -last_w);
        fenwick_add(idx, last_w);
        slots_[idx] = std::move(slots_.back());
    }
    slots_.pop_back();
    return out;
}

VertexLabeling SearchQueue::pop(bool weighted, Rng& rng) {
    if (slots_.empty()) throw std::out_of_range("pop on empty search queue");
    std::size_t idx;
    if (weighted) {
        const std::int64_t total = fenwick_total();
        auto target = static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(total));
        if (target >= total) target = total - 1;
        idx = fenwick_find(target);
    } else {
        idx = static_cast<std::size_t>(rng.below(slots_.size()));
    }
    return remove_at(idx);
}

void SearchQueue::prune(std::size_t cap) {
    if (cap < 1) throw std::invalid_argument("queue cap must be >= 1");
    if (slots_.size() <= cap) return;
    const std::size_t k = slots_.size() - cap;
    std::vector<std::size_t> order(slots_.size());
    std::iota(order.begin(), order.end(), 0);
    std::nth_element(order.begin(), order.begin() + k, order.end(),
                     [&](std::size_t a, std::size_t b) { return slots_[a].seq < slots_[b].seq; });
    std::vector<std::size_t> victims(order.begin(), order.begin() + k);
    std::sort(victims.rbegin(), victims.rend());  // back-to-front keeps indices stable
    for (std::size_t idx : victims) remove_at(idx);
}

std::vector<VertexLabeling> SearchQueue::drain() {
    std::sort(slots_.begin(), slots_.end(),
              [](const Slot& a, const Slot& b) { return a.seq < b.seq; });
    std::vector<VertexLabeling> out;
    out.reserve(slots_.size());
    for (auto& slot : slots_) out.push_back(std::move(slot.labels));
    slots_.clear();
    fenwick_.assign(fenwick_.size(), 0);
    return out;
}

// --- expansion ---------------------------------------------------------------

VertexLabeling expand(const Graph& residual, VertexLabeling labels, std::span<const double> column) {
    const Vertex n = residual.num_vertices();
    if (labels.size() != n || static_cast<Vertex>(column.size()) != n)
        throw std::invalid_argument("probability column does not match residual graph");

    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (column[a] != column[b]) return column[a] > column[b];
        return a < b;
    });

    for (Vertex v : order) {
        if (labels[v] == Label::Excluded) break;
        if (labels[v] == Label::Included) continue;
        labels.set(v, Label::Included);
        for (Vertex nb : residual.neighbors(v))
            if (labels[nb] == Label::Unlabeled) labels.set(nb, Label::Excluded);
    }
    return labels;
}

// --- the search --------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

struct SharedBest {
    std::atomic<Weight> weight{-1};
    std::mutex mu;
    Weight payload_weight = -1;  // guarded by mu
    std::vector<Vertex> set;
    double time_to_best = 0.0;

    bool offer(std::vector<Vertex> candidate, Weight w, double elapsed) {
        Weight cur = weight.load(std::memory_order_relaxed);
        while (w > cur) {
            if (weight.compare_exchange_weak(cur, w)) {
                std::lock_guard<std::mutex> lk(mu);
                if (w > payload_weight) {
                    payload_weight = w;
                    set = std::move(candidate);
                    time_to_best = elapsed;
                }
                return true;
            }
        }
        return false;
    }
};

struct WorkerStats {
    std::uint64_t steps = 0;
    std::uint64_t solutions_found = 0;
    std::size_t max_queue_len = 0;
    bool hit_deadline = false;
    bool cancelled = false;
};

struct SearchContext {
    const Graph& g;
    const SearchConfig& cfg;
    SharedBest& best;
    Clock::time_point t0;
    Clock::time_point deadline;
    const std::atomic<bool>* cancel;
};

double elapsed_seconds(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report_complete(const SearchContext& ctx, const VertexLabeling& full, WorkerStats& stats) {
    ++stats.solutions_found;
    std::vector<Vertex> set = full.included();
    if (ctx.cfg.use_local_search) set = improve(ctx.g, set);
    assert(is_independent_set(ctx.g, set));
    const Weight w = set_weight(ctx.g, set);
    ctx.best.offer(std::move(set), w, elapsed_seconds(ctx.t0));
}

// Pop-expand loop on one queue. Returns when the queue is exhausted, the
// deadline or cancellation fires, or the queue reached stop_at_size entries
// (warm-up mode).
void run_loop(const SearchContext& ctx, SearchQueue& queue, Rng& rng, WorkerStats& stats,
              ProviderClient* provider, std::size_t stop_at_size = SIZE_MAX) {
    const SearchConfig& cfg = ctx.cfg;
    std::vector<double> column;

    while (!queue.empty()) {
        if (queue.size() >= stop_at_size) return;
        if (Clock::now() >= ctx.deadline) {
            stats.hit_deadline = true;
            return;
        }
        if (ctx.cancel && ctx.cancel->load(std::memory_order_relaxed)) {
            stats.cancelled = true;
            return;
        }

        VertexLabeling labels = queue.pop(cfg.weighted_pop, rng);
        ++stats.steps;

        ReductionTrace trace;
        Residual residual;
        const Graph* res_graph;
        if (cfg.use_reduction) {
            trace = cfg.force_weighted ? reduce_weighted(ctx.g, labels) : reduce_auto(ctx.g, labels);
            if (trace.kernel_empty()) {
                report_complete(ctx, unfold(trace, VertexLabeling(0)), stats);
                continue;
            }
            res_graph = &trace.kernel;
        } else {
            if (labels.complete()) {  // n = 0 root
                report_complete(ctx, labels, stats);
                continue;
            }
            residual = residual_subgraph(ctx.g, labels);
            res_graph = &residual.graph;
        }

        ProbabilityMaps maps;
        switch (cfg.provider) {
            case ProviderKind::UniformRandom:
                maps = uniform_random_maps(res_graph->num_vertices(), cfg.num_prob_maps, rng);
                break;
            case ProviderKind::DegreeHeuristic:
                maps = degree_heuristic_maps(*res_graph, cfg.num_prob_maps, rng);
                break;
            case ProviderKind::External:
                maps = provider->request(*res_graph, cfg.num_prob_maps);
                break;
        }

        for (int c = 0; c < cfg.num_prob_maps; ++c) {
            if (Clock::now() >= ctx.deadline) {
                stats.hit_deadline = true;
                return;
            }
            column = maps.column(static_cast<std::size_t>(c));
            VertexLabeling child_res =
                expand(*res_graph, VertexLabeling(res_graph->num_vertices()), column);

            VertexLabeling child;
            if (cfg.use_reduction) {
                child = unfold_partial(trace, child_res);
            } else {
                child = labels;
                for (Vertex r = 0; r < child_res.size(); ++r)
                    if (child_res[r] != Label::Unlabeled)
                        child.set(residual.to_original[r], child_res[r]);
            }

            if (child.complete()) {
                report_complete(ctx, child, stats);
            } else {
                queue.push(std::move(child));
            }
        }

        if (cfg.queue_cap) queue.prune(*cfg.queue_cap);
        stats.max_queue_len = std::max(stats.max_queue_len, queue.size());
    }
}

std::unique_ptr<ProviderClient> make_provider(const SearchConfig& cfg) {
    if (cfg.provider != ProviderKind::External) return nullptr;
    return ProviderClient::connect(cfg.external_endpoint);
}

}  // namespace

SolveRecord tree_search(const Graph& g, const SearchConfig& cfg, const std::atomic<bool>* cancel) {
    cfg.validate();

    SharedBest best;
    const auto t0 = Clock::now();
    SearchContext ctx{g, cfg, best, t0,
                      t0 + std::chrono::duration_cast<Clock::duration>(cfg.time_limit), cancel};

    std::vector<WorkerStats> stats;

    if (cfg.threads == 1) {
        SearchQueue queue;
        queue.push(VertexLabeling(g.num_vertices()));
        Rng rng(hash_combine(cfg.seed, 0));
        WorkerStats ws;
        auto provider = make_provider(cfg);
        run_loop(ctx, queue, rng, ws, provider.get());
        ws.max_queue_len = std::max(ws.max_queue_len, queue.size());
        stats.push_back(ws);
    } else {
        // single-threaded warm-up until every worker can be handed a partial
        SearchQueue warmup;
        warmup.push(VertexLabeling(g.num_vertices()));
        Rng warm_rng(hash_combine(cfg.seed, static_cast<std::uint64_t>(cfg.threads)));
        WorkerStats warm_stats;
        auto warm_provider = make_provider(cfg);
        run_loop(ctx, warmup, warm_rng, warm_stats, warm_provider.get(),
                 static_cast<std::size_t>(cfg.threads));
        stats.push_back(warm_stats);

        auto entries = warmup.drain();
        std::vector<SearchQueue> queues(cfg.threads);
        for (std::size_t i = 0; i < entries.size(); ++i)
            queues[i % cfg.threads].push(std::move(entries[i]));

        std::vector<WorkerStats> worker_stats(cfg.threads);
        std::vector<std::exception_ptr> errors(cfg.threads);
        std::vector<std::thread> workers;
        for (int t = 0; t < cfg.threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    Rng rng(hash_combine(cfg.seed, static_cast<std::uint64_t>(t)));
                    auto provider = make_provider(cfg);
                    run_loop(ctx, queues[t], rng, worker_stats[t], provider.get());
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
        for (auto& ws : worker_stats) stats.push_back(ws);
    }

    SolveRecord rec;
    for (const auto& ws : stats) {
        rec.steps += ws.steps;
        rec.solutions_found += ws.solutions_found;
        rec.max_queue_len = std::max(rec.max_queue_len, ws.max_queue_len);
    }
    bool any_deadline = false, any_cancel = false;
    for (const auto& ws : stats) {
        any_deadline |= ws.hit_deadline;
        any_cancel |= ws.cancelled;
    }
    rec.termination = any_cancel ? Termination::Cancelled
                     : any_deadline ? Termination::TimeLimit
                                    : Termination::QueueExhausted;
    rec.total_time = elapsed_seconds(t0);
    if (best.weight.load() >= 0) {
        rec.found = true;
        rec.best_weight = best.weight.load();
        std::lock_guard<std::mutex> lk(best.mu);
        rec.best_set = best.set;
        rec.time_to_best = best.time_to_best;
    }
    assert(!rec.found || is_independent_set(g, rec.best_set));
    return rec;
}

}  // namespace mis
