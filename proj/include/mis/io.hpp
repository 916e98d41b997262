#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mis/graph.hpp"

namespace mis {

enum class GraphFormat { Metis, Dimacs, Edgelist };

std::optional<GraphFormat> format_from_extension(const std::filesystem::path& path);
GraphFormat parse_format(const std::string& name);  // "metis" | "dimacs" | "edgelist"

// metis: header "n m [fmt]", 1-indexed adjacency lines, fmt=10 puts a vertex
// weight first on each line. '%' lines are comments. An adjacency/m mismatch
// is a warning, not an error.
Graph parse_metis(std::istream& in);

// dimacs: "p edge n m" header, "e u v" edges, 1-indexed, "c" comments.
Graph parse_dimacs(std::istream& in);

// edgelist: "u v" pairs, 0-indexed; "# weight i w" assigns vertex weights;
// other "#" lines are comments. n = 1 + highest id seen.
Graph parse_edgelist(std::istream& in);

Graph parse_graph(std::istream& in, GraphFormat format);
Graph parse_graph(const std::filesystem::path& path,
                  std::optional<GraphFormat> format = std::nullopt);

// Canonical metis emission: sorted adjacency, fmt=10 when weights included.
void write_metis(const Graph& g, std::ostream& out, bool include_weights);
void write_metis(const Graph& g, const std::filesystem::path& path, bool include_weights);

// Solution files: one vertex id per line, 0-based; '#' comments allowed.
std::vector<Vertex> read_solution(const std::filesystem::path& path);
void write_solution(std::span<const Vertex> set, const std::filesystem::path& path);

}  // namespace mis
