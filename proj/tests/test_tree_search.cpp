#include <doctest.h>

#include <cmath>
#include <map>

#include "mis/exact.hpp"
#include "mis/graph.hpp"
#include "mis/tree_search.hpp"
#include "test_util.hpp"

using namespace mis;

namespace {

VertexLabeling with_labeled(Vertex n, Vertex count) {
    VertexLabeling l(n);
    for (Vertex v = 0; v < count; ++v) l.set(v, Label::Excluded);
    return l;
}

}  // namespace

TEST_CASE("expand on a star includes the center") {
    Graph star = test::star_graph(3);
    std::vector<double> probs{0.9, 0.1, 0.1, 0.1};
    VertexLabeling out = expand(star, VertexLabeling(4), probs);
    CHECK(out.complete());
    CHECK(out[0] == Label::Included);
    for (Vertex leaf : {1, 2, 3}) CHECK(out[leaf] == Label::Excluded);
}

TEST_CASE("expand stops at the first excluded candidate") {
    Graph path = test::path_graph(3);
    std::vector<double> probs{0.9, 0.8, 0.1};
    VertexLabeling out = expand(path, VertexLabeling(3), probs);
    CHECK(out[0] == Label::Included);
    CHECK(out[1] == Label::Excluded);
    CHECK(out[2] == Label::Unlabeled);  // loop broke before reaching it
    CHECK_FALSE(out.complete());
}

TEST_CASE("expand labels all isolated vertices") {
    Graph g(4, {});
    std::vector<double> probs{0.1, 0.9, 0.5, 0.3};
    VertexLabeling out = expand(g, VertexLabeling(4), probs);
    CHECK(out.complete());
    for (Vertex v = 0; v < 4; ++v) CHECK(out[v] == Label::Included);
}

TEST_CASE("expand breaks probability ties by vertex id") {
    Graph path = test::path_graph(3);
    std::vector<double> probs{0.5, 0.5, 0.5};
    VertexLabeling out = expand(path, VertexLabeling(3), probs);
    // order 0,1,2: include 0, exclude 1, then 1 excluded -> break
    CHECK(out[0] == Label::Included);
    CHECK(out[1] == Label::Excluded);
    CHECK(out[2] == Label::Unlabeled);
}

TEST_CASE("expand validates dimensions") {
    Graph path = test::path_graph(3);
    std::vector<double> short_probs{0.5};
    CHECK_THROWS_AS(expand(path, VertexLabeling(3), short_probs), std::invalid_argument);
    CHECK_THROWS_AS(expand(path, VertexLabeling(2), std::vector<double>{0.1, 0.2, 0.3}),
                    std::invalid_argument);
}

TEST_CASE("expand never unlabels and grows the labeling") {
    Rng rng(808);
    for (int trial = 0; trial < 100; ++trial) {
        const Vertex n = 5 + static_cast<Vertex>(rng.below(20));
        Graph g = test::random_graph(rng, n, 0.3);
        std::vector<double> probs(n);
        for (auto& p : probs) p = rng.uniform01();
        VertexLabeling out = expand(g, VertexLabeling(n), probs);
        CHECK(out.labeled_count() >= 1);
        CHECK(validate_labeling(g, out).empty());
    }
}

TEST_CASE("queue pop modes") {
    Rng rng(1);

    SUBCASE("single entry either mode") {
        SearchQueue q;
        q.push(with_labeled(10, 3));
        CHECK(q.pop(false, rng).labeled_count() == 3);
        q.push(with_labeled(10, 4));
        CHECK(q.pop(true, rng).labeled_count() == 4);
        CHECK(q.empty());
        CHECK_THROWS_AS(q.pop(false, rng), std::out_of_range);
    }

    SUBCASE("weighted pop follows labeled_count + 1") {
        // counts 0 and 9 -> probabilities 1/11 and 10/11
        const int draws = 100000;
        int heavy = 0;
        for (int i = 0; i < draws; ++i) {
            SearchQueue q;
            q.push(with_labeled(10, 0));
            q.push(with_labeled(10, 9));
            if (q.pop(true, rng).labeled_count() == 9) ++heavy;
        }
        const double freq = static_cast<double>(heavy) / draws;
        CHECK(freq > 10.0 / 11.0 - 0.01);
        CHECK(freq < 10.0 / 11.0 + 0.01);
    }

    SUBCASE("uniform pop is uniform") {
        const int k = 4, draws = 100000;
        std::map<Vertex, int> counts;
        for (int i = 0; i < draws; ++i) {
            SearchQueue q;
            for (Vertex c = 0; c < k; ++c) q.push(with_labeled(10, c));
            counts[q.pop(false, rng).labeled_count()]++;
        }
        for (auto [labeled, count] : counts) {
            const double freq = static_cast<double>(count) / draws;
            CHECK(freq > 0.25 - 0.01);
            CHECK(freq < 0.25 + 0.01);
        }
    }
}

TEST_CASE("pruning removes the oldest entries") {
    Rng rng(2);

    SUBCASE("three entries capped at two") {
        SearchQueue q;
        q.push(with_labeled(10, 1));  // a, oldest
        q.push(with_labeled(10, 2));  // b
        q.push(with_labeled(10, 3));  // c
        q.prune(2);
        auto rest = q.drain();
        REQUIRE(rest.size() == 2);
        CHECK(rest[0].labeled_count() == 2);
        CHECK(rest[1].labeled_count() == 3);
    }
    SUBCASE("caps above the size are no-ops") {
        SearchQueue q;
        q.push(with_labeled(10, 1));
        q.prune(5);
        CHECK(q.size() == 1);
    }
    SUBCASE("cap one keeps only the newest") {
        SearchQueue q;
        for (Vertex c = 1; c <= 4; ++c) q.push(with_labeled(10, c));
        q.prune(1);
        auto rest = q.drain();
        REQUIRE(rest.size() == 1);
        CHECK(rest[0].labeled_count() == 4);
    }
    SUBCASE("pruning interleaves with pops") {
        SearchQueue q;
        for (Vertex c = 0; c < 6; ++c) q.push(with_labeled(10, c));
        q.pop(false, rng);
        q.pop(false, rng);
        q.prune(2);
        CHECK(q.size() == 2);
    }
}

TEST_CASE("uniform random maps") {
    Rng rng(3);
    SUBCASE("empty residual graph") {
        ProbabilityMaps maps = uniform_random_maps(0, 8, rng);
        CHECK(maps.rows == 0);
        CHECK(maps.values.empty());
    }
    SUBCASE("mean of 1e5 entries") {
        ProbabilityMaps maps = uniform_random_maps(12500, 8, rng);
        double total = 0;
        for (double v : maps.values) total += v;
        const double mean = total / maps.values.size();
        CHECK(mean > 0.497);
        CHECK(mean < 0.503);
    }
    SUBCASE("deterministic per rng state") {
        Rng a(7), b(7);
        CHECK(uniform_random_maps(20, 4, a).values == uniform_random_maps(20, 4, b).values);
    }
}

TEST_CASE("degree heuristic maps") {
    Rng rng(4);
    SUBCASE("isolated vertices sit at the top") {
        ProbabilityMaps maps = degree_heuristic_maps(Graph(5, {}), 3, rng);
        for (double v : maps.values) CHECK(v == 1.0);  // base 1.0, clipped
    }
    SUBCASE("star bases follow 1 - deg/max_deg") {
        ProbabilityMaps maps = degree_heuristic_maps(test::star_graph(3), 4, rng);
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(maps.at(0, c) >= 0.0);
            CHECK(maps.at(0, c) <= 0.05);  // center: base 0 plus noise
            for (std::size_t leaf = 1; leaf <= 3; ++leaf) {
                CHECK(maps.at(leaf, c) >= 2.0 / 3.0 - 1e-12);
                CHECK(maps.at(leaf, c) <= 2.0 / 3.0 + 0.05 + 1e-12);
            }
        }
    }
    SUBCASE("columns differ only by noise") {
        Graph g = test::path_graph(6);
        ProbabilityMaps maps = degree_heuristic_maps(g, 2, rng);
        for (Vertex v = 0; v < 6; ++v)
            CHECK(std::abs(maps.at(v, 0) - maps.at(v, 1)) <= 0.05 + 1e-12);
    }
}

TEST_CASE("tree search on a triangle finds weight one") {
    SearchConfig cfg;
    cfg.time_limit = std::chrono::duration<double>(1.0);
    cfg.num_prob_maps = 4;
    SolveRecord rec = tree_search(test::complete_graph(3), cfg);
    CHECK(rec.found);
    CHECK(rec.best_weight == 1);
    CHECK(rec.best_set.size() == 1);
}

TEST_CASE("tree search labels an empty graph in one expansion") {
    SearchConfig cfg;
    cfg.num_prob_maps = 4;
    SolveRecord rec = tree_search(Graph(5, {}), cfg);
    CHECK(rec.found);
    CHECK(rec.best_weight == 5);
    CHECK(rec.steps == 1);
    CHECK(rec.termination == Termination::QueueExhausted);
}

TEST_CASE("tree search handles the zero-vertex graph") {
    SearchConfig cfg;
    SolveRecord rec = tree_search(Graph(0, {}), cfg);
    CHECK(rec.found);
    CHECK(rec.best_weight == 0);
}

TEST_CASE("tree search is deterministic for one thread and a fixed seed") {
    Rng rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = test::random_graph(rng, 12, 0.3);
        SearchConfig cfg;
        cfg.num_prob_maps = 4;
        cfg.seed = 99 + trial;
        cfg.time_limit = std::chrono::duration<double>(30.0);
        SolveRecord a = tree_search(g, cfg);
        SolveRecord b = tree_search(g, cfg);
        CHECK(a.termination == Termination::QueueExhausted);
        CHECK(a.best_weight == b.best_weight);
        CHECK(a.best_set == b.best_set);
        CHECK(a.steps == b.steps);
        CHECK(a.solutions_found == b.solutions_found);
    }
}

TEST_CASE("reduction and local search reach the optimum on small graphs") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = test::random_graph(rng, 18, 0.25);
        SearchConfig cfg;
        cfg.use_reduction = true;
        cfg.use_local_search = true;
        cfg.num_prob_maps = 8;
        cfg.time_limit = std::chrono::duration<double>(2.0);
        cfg.seed = trial;
        SolveRecord rec = tree_search(g, cfg);
        REQUIRE(rec.found);
        CHECK(rec.best_weight == brute_force_mis(g).second);
        CHECK(is_independent_set(g, rec.best_set));
    }
}

TEST_CASE("queue cap bounds the queue at loop boundaries") {
    Rng rng(12);
    Graph g = test::random_graph(rng, 60, 0.2);
    SearchConfig cfg;
    cfg.queue_cap = 16;
    cfg.num_prob_maps = 8;
    cfg.time_limit = std::chrono::duration<double>(0.3);
    SolveRecord rec = tree_search(g, cfg);
    CHECK(rec.max_queue_len <= 16);
}

TEST_CASE("weighted instances flow through the full pipeline") {
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = test::random_graph(rng, 16, 0.3, true);
        SearchConfig cfg;
        cfg.use_reduction = true;
        cfg.use_local_search = true;
        cfg.num_prob_maps = 8;
        cfg.time_limit = std::chrono::duration<double>(2.0);
        cfg.seed = trial;
        SolveRecord rec = tree_search(g, cfg);
        REQUIRE(rec.found);
        CHECK(rec.best_weight == brute_force_mis(g).second);
    }
}

TEST_CASE("multithreaded runs match single-thread quality") {
    Rng rng(14);
    Graph g = test::random_graph(rng, 30, 0.2);
    SearchConfig cfg;
    cfg.use_reduction = true;
    cfg.use_local_search = true;
    cfg.num_prob_maps = 8;
    cfg.threads = 4;
    cfg.time_limit = std::chrono::duration<double>(2.0);
    SolveRecord rec = tree_search(g, cfg);
    REQUIRE(rec.found);
    CHECK(is_independent_set(g, rec.best_set));
    CHECK(rec.best_weight == brute_force_mis(g).second);
    CHECK(rec.time_to_best <= rec.total_time + 1e-9);
}

TEST_CASE("time limit terminates and keeps the best so far") {
    Rng rng(15);
    Graph g = test::random_graph(rng, 120, 0.15);
    SearchConfig cfg;
    cfg.num_prob_maps = 16;
    cfg.time_limit = std::chrono::duration<double>(0.2);
    SolveRecord rec = tree_search(g, cfg);
    CHECK(rec.termination == Termination::TimeLimit);
    CHECK(rec.total_time < 1.0);  // no runaway
    if (rec.found) CHECK(is_independent_set(g, rec.best_set));
}

TEST_CASE("cancellation flag stops the search") {
    Rng rng(16);
    Graph g = test::random_graph(rng, 100, 0.2);
    SearchConfig cfg;
    cfg.time_limit = std::chrono::duration<double>(60.0);
    std::atomic<bool> cancel{true};
    SolveRecord rec = tree_search(g, cfg, &cancel);
    CHECK(rec.termination == Termination::Cancelled);
}

TEST_CASE("configs are validated") {
    SearchConfig cfg;
    cfg.num_prob_maps = 0;
    CHECK_THROWS_AS(tree_search(Graph(2, {}), cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.threads = 0;
    CHECK_THROWS_AS(tree_search(Graph(2, {}), cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.queue_cap = 0;
    CHECK_THROWS_AS(tree_search(Graph(2, {}), cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.provider = ProviderKind::External;
    CHECK_THROWS_AS(tree_search(Graph(2, {}), cfg), std::invalid_argument);
}
