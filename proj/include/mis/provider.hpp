#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "mis/graph.hpp"
#include "mis/tree_search.hpp"

namespace mis {

struct ProviderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Probability-map provider protocol, line-oriented text:
//   request:  "n m_edges m_maps\n", then one "u v\n" line per undirected
//             edge, then one line with the n vertex weights.
//   response: n lines of m_maps decimals each; row i = residual vertex i.
//
// Endpoints: "tcp:HOST:PORT" opens a stream socket per request; anything
// else is treated as a command line, spawned once and spoken to over its
// standard streams.
class ProviderClient {
public:
    virtual ~ProviderClient() = default;
    virtual ProbabilityMaps request(const Graph& residual, int m) = 0;

    static std::unique_ptr<ProviderClient> connect(const std::string& endpoint);
};

std::string encode_provider_request(const Graph& residual, int m);

// Parses and validates a response body; values clipped to [0,1]. Throws
// ProviderError on dimension mismatch or non-numeric payload.
ProbabilityMaps parse_provider_response(const std::string& body, Vertex n, int m);

}  // namespace mis
