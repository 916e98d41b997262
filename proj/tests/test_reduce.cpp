#include <doctest.h>

#include "mis/exact.hpp"
#include "mis/graph.hpp"
#include "mis/reduce.hpp"
#include "test_util.hpp"

using namespace mis;

namespace {

// Independent route: optimal completion weight of (g, start) by enumerating
// the residual subgraph, bypassing folds entirely.
Weight best_completion(const Graph& g, const VertexLabeling& start) {
    auto res = residual_subgraph(g, start);
    return set_weight(g, start.included()) + brute_force_mis(res.graph).second;
}

void check_preserves_optimum(const Graph& g, const VertexLabeling& start) {
    ReductionTrace trace = reduce_auto(g, start);
    REQUIRE(validate_labeling(g, trace.base).empty());
    const Weight via_kernel = trace.offset + brute_force_mis(trace.kernel).second;
    CHECK(via_kernel == best_completion(g, start));

    // a fully labeled kernel unfolds to a valid full labeling of g
    auto [kernel_set, kernel_weight] = brute_force_mis(trace.kernel);
    VertexLabeling kernel_labels(trace.kernel.num_vertices());
    for (Vertex v : kernel_set) kernel_labels.set(v, Label::Included);
    for (Vertex v = 0; v < kernel_labels.size(); ++v)
        if (kernel_labels[v] == Label::Unlabeled) kernel_labels.set(v, Label::Excluded);
    VertexLabeling full = unfold(trace, kernel_labels);
    CHECK(full.complete());
    CHECK(validate_labeling(g, full).empty());
    CHECK(set_weight(g, full.included()) == trace.offset + kernel_weight);
}

}  // namespace

TEST_CASE("single edge reduces completely") {
    Graph g(2, std::vector<Edge>{{0, 1}});
    ReductionTrace trace = reduce_unweighted(g, VertexLabeling(2));
    CHECK(trace.kernel_empty());
    CHECK(trace.base[0] == Label::Included);  // lowest id wins the tie
    CHECK(trace.base[1] == Label::Excluded);
    CHECK(trace.offset == 1);
}

TEST_CASE("p3 reduces to the optimal endpoints") {
    Graph g = test::path_graph(3);
    ReductionTrace trace = reduce_unweighted(g, VertexLabeling(3));
    CHECK(trace.kernel_empty());
    VertexLabeling full = unfold(trace, VertexLabeling(0));
    CHECK(set_weight(g, full.included()) == 2);
    CHECK(full[0] == Label::Included);
    CHECK(full[2] == Label::Included);
}

TEST_CASE("triangle reduces to one included vertex") {
    Graph g = test::complete_graph(3);
    ReductionTrace trace = reduce_unweighted(g, VertexLabeling(3));
    CHECK(trace.kernel_empty());
    VertexLabeling full = unfold(trace, VertexLabeling(0));
    CHECK(full.complete());
    CHECK(set_weight(g, full.included()) == 1);
}

TEST_CASE("c5 collapses through a fold") {
    Graph g = test::cycle_graph(5);
    ReductionTrace trace = reduce_unweighted(g, VertexLabeling(5));
    CHECK(trace.kernel_empty());
    CHECK(!trace.folds.empty());
    VertexLabeling full = unfold(trace, VertexLabeling(0));
    CHECK(set_weight(g, full.included()) == 2);
    CHECK(validate_labeling(g, full).empty());
}

TEST_CASE("reduce_unweighted rejects weighted graphs") {
    Graph g(2, {}, std::vector<Weight>{2, 1});
    CHECK_THROWS_AS(reduce_unweighted(g, VertexLabeling(2)), std::invalid_argument);
}

TEST_CASE("weighted star: heavy center swallows the leaves") {
    Graph g = test::star_graph(3, {10, 1, 1, 1});
    ReductionTrace trace = reduce_weighted(g, VertexLabeling(4));
    CHECK(trace.kernel_empty());
    CHECK(trace.base[0] == Label::Included);
    for (Vertex leaf : {1, 2, 3}) CHECK(trace.base[leaf] == Label::Excluded);
    CHECK(trace.offset == 10);
}

TEST_CASE("weighted edge keeps the heavy endpoint") {
    Graph g(2, std::vector<Edge>{{0, 1}}, std::vector<Weight>{5, 1});
    ReductionTrace trace = reduce_weighted(g, VertexLabeling(2));
    CHECK(trace.base[0] == Label::Included);
    CHECK(trace.base[1] == Label::Excluded);
}

TEST_CASE("weighted path keeps the heavy middle") {
    Graph g = test::path_graph(3, {1, 5, 1});
    ReductionTrace trace = reduce_weighted(g, VertexLabeling(3));
    CHECK(trace.kernel_empty());
    CHECK(trace.base[1] == Label::Included);
    CHECK(trace.offset == 5);
}

TEST_CASE("unfold with an empty trace is the identity") {
    Graph g = test::path_graph(4);
    ReductionTrace trace;
    trace.base = VertexLabeling(4);
    trace.kernel = g;
    trace.kernel_to_orig = {0, 1, 2, 3};
    VertexLabeling kernel_labels(4);
    kernel_labels.set(0, Label::Included);
    kernel_labels.set(1, Label::Excluded);
    kernel_labels.set(2, Label::Excluded);
    kernel_labels.set(3, Label::Included);
    VertexLabeling full = unfold(trace, kernel_labels);
    CHECK(full[0] == Label::Included);
    CHECK(full[3] == Label::Included);
}

TEST_CASE("fold replay semantics on p3") {
    // hand-built trace: {1,0,2} folded into kernel vertex 0 (center id 1)
    ReductionTrace trace;
    trace.base = VertexLabeling(3);
    trace.folds = {{1, 0, 2}};
    trace.offset = 1;
    trace.kernel = Graph(1, {});
    trace.kernel_to_orig = {1};

    SUBCASE("included kernel center means both endpoints") {
        VertexLabeling kernel_labels(1);
        kernel_labels.set(0, Label::Included);
        VertexLabeling full = unfold(trace, kernel_labels);
        CHECK(full[0] == Label::Included);
        CHECK(full[1] == Label::Excluded);
        CHECK(full[2] == Label::Included);
    }
    SUBCASE("excluded kernel center means the middle") {
        VertexLabeling kernel_labels(1);
        kernel_labels.set(0, Label::Excluded);
        VertexLabeling full = unfold(trace, kernel_labels);
        CHECK(full[0] == Label::Excluded);
        CHECK(full[1] == Label::Included);
        CHECK(full[2] == Label::Excluded);
    }
}

TEST_CASE("unfold rejects partially labeled kernels") {
    Graph g = test::cycle_graph(7);
    ReductionTrace trace = reduce_unweighted(g, VertexLabeling(7));
    if (!trace.kernel_empty()) {
        CHECK_THROWS_AS(unfold(trace, VertexLabeling(trace.kernel.num_vertices())),
                        std::invalid_argument);
    }
    CHECK_THROWS_AS(unfold(trace, VertexLabeling(trace.kernel.num_vertices() + 1)),
                    std::invalid_argument);
}

TEST_CASE("optimum preserved on every graph with up to five vertices") {
    for (Vertex n = 1; n <= 5; ++n) {
        const int pairs = n * (n - 1) / 2;
        for (unsigned mask = 0; mask < (1u << pairs); ++mask) {
            std::vector<Edge> edges;
            int bit = 0;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v, ++bit)
                    if (mask & (1u << bit)) edges.emplace_back(u, v);
            Graph g(n, edges);
            check_preserves_optimum(g, VertexLabeling(n));
        }
    }
}

TEST_CASE("optimum preserved on random unweighted graphs up to n=12") {
    Rng rng(2024);
    for (int trial = 0; trial < 400; ++trial) {
        const Vertex n = 6 + static_cast<Vertex>(rng.below(7));
        Graph g = test::random_graph(rng, n, 0.10 + 0.5 * rng.uniform01());
        check_preserves_optimum(g, VertexLabeling(n));
    }
}

TEST_CASE("optimum preserved on random weighted graphs up to n=16") {
    Rng rng(777);
    for (int trial = 0; trial < 500; ++trial) {
        const Vertex n = 4 + static_cast<Vertex>(rng.below(13));
        Graph g = test::random_graph(rng, n, 0.10 + 0.5 * rng.uniform01(), true);
        check_preserves_optimum(g, VertexLabeling(n));
    }
}

TEST_CASE("optimum preserved from partial starting labelings") {
    Rng rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const Vertex n = 8 + static_cast<Vertex>(rng.below(7));
        const bool weighted = trial % 2 == 1;
        Graph g = test::random_graph(rng, n, 0.3, weighted);
        VertexLabeling start(n);
        const Vertex v = static_cast<Vertex>(rng.below(n));
        start.set(v, Label::Included);
        for (Vertex nb : g.neighbors(v)) start.set(nb, Label::Excluded);
        check_preserves_optimum(g, start);
    }
}

TEST_CASE("reduction is idempotent and monotone") {
    Rng rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const Vertex n = 6 + static_cast<Vertex>(rng.below(15));
        const bool weighted = trial % 2 == 0;
        Graph g = test::random_graph(rng, n, 0.25, weighted);
        const VertexLabeling start(n);
        ReductionTrace trace = reduce_auto(g, start);

        CHECK(trace.base.labeled_count() >= start.labeled_count());
        CHECK(trace.kernel.num_vertices() <= n - start.labeled_count());

        ReductionTrace again = reduce_auto(trace.kernel, VertexLabeling(trace.kernel.num_vertices()));
        CHECK(again.kernel.num_vertices() == trace.kernel.num_vertices());
        CHECK(again.folds.empty());
        CHECK(again.offset == 0);
        CHECK(again.base.labeled_count() == 0);
    }
}
