#pragma once

#include <cstdint>
#include <string>

#include "mis/graph.hpp"

namespace mis {

enum class GraphModel { ER, BA, HK, WS, HRG };

// Model-specific parameters; only the fields of the chosen model are read.
struct GenSpec {
    GraphModel model = GraphModel::ER;
    Vertex n = 0;
    double p = 0.15;                // ER connection probability
    Vertex m = 2;                   // BA / HK attachments per vertex
    double p_triangle = 0.05;       // HK triangle probability
    Vertex k = 2;                   // WS ring degree (even)
    double p_rewire = 0.15;         // WS rewiring probability
    double alpha = 0.75;            // HRG radial dispersion (> 0.5)
    double temperature = 0.1;       // HRG temperature in [0,1)
    double target_avg_degree = 10;  // HRG expected average degree
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

Graph generate(const GenSpec& spec);

Graph gen_er(Vertex n, double p, std::uint64_t seed);
Graph gen_ba(Vertex n, Vertex m, std::uint64_t seed);
Graph gen_hk(Vertex n, Vertex m, double p_triangle, std::uint64_t seed);
Graph gen_ws(Vertex n, Vertex k, double p_rewire, std::uint64_t seed);
Graph gen_hrg(Vertex n, double alpha, double temperature, double target_avg_degree,
              std::uint64_t seed);

// Per-vertex weights from Normal(mu, sigma), rounded to nearest integer and
// clipped to a minimum of 1.
Graph gen_weights(const Graph& g, double mu, double sigma, std::uint64_t seed);

GraphModel parse_model(const std::string& name);  // "er", "ba", "hk", "ws", "hrg"

}  // namespace mis
