#include <doctest.h>

#include "mis/exact.hpp"
#include "mis/graph.hpp"
#include "mis/local_search.hpp"
#include "test_util.hpp"

using namespace mis;

TEST_CASE("the canonical (1,2)-swap on p3") {
    Graph g = test::path_graph(3);
    auto out = improve(g, {1});
    CHECK(out == std::vector<Vertex>{0, 2});
}

TEST_CASE("maximum sets are fixpoints") {
    Graph g = test::path_graph(5);
    auto out = improve(g, {0, 2, 4});
    CHECK(out == std::vector<Vertex>{0, 2, 4});
}

TEST_CASE("free insertions fill c5 from a single vertex") {
    Graph g = test::cycle_graph(5);
    auto out = improve(g, {0});
    CHECK(out.size() == 2);
    CHECK(is_independent_set(g, out));
    CHECK(brute_force_mis(g).second == 2);  // confirmed maximum
}

TEST_CASE("weighted singleton swap fires") {
    // path with a heavy middle: {0,2} (weight 2) should not move, but {1}
    // from a light endpoint start must win via free insert after swap
    Graph g = test::path_graph(3, {1, 5, 1});
    auto out = improve(g, {0, 2});
    // (1,1) swap is not improving here: removing 0 for 1 blocked (1 adjacent
    // to 2). Set stays put.
    CHECK(out == std::vector<Vertex>{0, 2});

    Graph h = test::path_graph(2, {1, 9});
    CHECK(improve(h, {0}) == std::vector<Vertex>{1});
}

TEST_CASE("improve rejects invalid input") {
    Graph g = test::path_graph(3);
    CHECK_THROWS_AS(improve(g, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(improve(g, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(improve(g, {9}), std::invalid_argument);
}

TEST_CASE("never decreases weight, output valid and maximal") {
    Rng rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        const Vertex n = 8 + static_cast<Vertex>(rng.below(25));
        const bool weighted = trial % 2 == 0;
        Graph g = test::random_graph(rng, n, 0.15 + 0.3 * rng.uniform01(), weighted);

        // random valid starting set
        std::vector<Vertex> start;
        std::vector<char> blocked(n, 0);
        for (int pick = 0; pick < n / 3; ++pick) {
            const Vertex v = static_cast<Vertex>(rng.below(n));
            if (blocked[v]) continue;
            start.push_back(v);
            blocked[v] = 1;
            for (Vertex nb : g.neighbors(v)) blocked[nb] = 1;
        }

        auto out = improve(g, start);
        CHECK(is_independent_set(g, out));
        CHECK(set_weight(g, out) >= set_weight(g, start));

        // maximal: every vertex outside the set has a neighbor inside
        std::vector<char> in_set(n, 0);
        for (Vertex v : out) in_set[v] = 1;
        for (Vertex v = 0; v < n; ++v) {
            if (in_set[v]) continue;
            bool touched = false;
            for (Vertex nb : g.neighbors(v))
                if (in_set[nb]) touched = true;
            CHECK(touched);
        }
    }
}

TEST_CASE("local optimum quality on small graphs") {
    // improve from a greedy start reaches the optimum on most tiny instances;
    // here just pin that it never exceeds it and often matches
    Rng rng(99);
    int matched = 0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        Graph g = test::random_graph(rng, 14, 0.3);
        auto out = improve(g, greedy_maximal(g));
        const Weight opt = brute_force_mis(g).second;
        CHECK(set_weight(g, out) <= opt);
        if (set_weight(g, out) == opt) ++matched;
    }
    CHECK(matched > trials / 2);
}
