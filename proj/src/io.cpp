#include "mis/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace mis {

std::optional<GraphFormat> format_from_extension(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".metis" || ext == ".graph") return GraphFormat::Metis;
    if (ext == ".dimacs" || ext == ".col") return GraphFormat::Dimacs;
    if (ext == ".edgelist" || ext == ".el" || ext == ".txt") return GraphFormat::Edgelist;
    return std::nullopt;
}

GraphFormat parse_format(const std::string& name) {
    if (name == "metis") return GraphFormat::Metis;
    if (name == "dimacs") return GraphFormat::Dimacs;
    if (name == "edgelist") return GraphFormat::Edgelist;
    throw std::invalid_argument("unknown graph format: " + name);
}

namespace {

bool comment_or_blank(const std::string& line, char marker) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == marker;
    }
    return true;  // blank
}

}  // namespace

Graph parse_metis(std::istream& in) {
    std::string line;
    do {
        if (!std::getline(in, line)) throw std::runtime_error("metis: missing header");
    } while (comment_or_blank(line, '%'));

    std::istringstream header(line);
    long long n = -1, m = -1;
    int fmt = 0;
    if (!(header >> n >> m)) throw std::runtime_error("metis: malformed header: " + line);
    header >> fmt;
    if (n < 0 || m < 0) throw std::runtime_error("metis: negative counts in header");
    if (fmt != 0 && fmt != 10)
        throw std::runtime_error("metis: unsupported fmt " + std::to_string(fmt) +
                                 " (only 0 and 10)");
    const bool has_weights = fmt == 10;

    std::vector<Edge> edges;
    std::vector<Weight> weights(static_cast<std::size_t>(n), 1);
    std::size_t adjacency_entries = 0;
    long long v = 0;
    while (v < n) {
        if (!std::getline(in, line))
            throw std::runtime_error("metis: expected " + std::to_string(n) + " vertex lines, got " +
                                     std::to_string(v));
        if (comment_or_blank(line, '%') && !line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            continue;  // '%' comment line
        std::istringstream ls(line);
        long long value;
        bool first = true;
        while (ls >> value) {
            if (first && has_weights) {
                if (value < 1) throw std::runtime_error("metis: vertex weight must be >= 1");
                weights[static_cast<std::size_t>(v)] = value;
                first = false;
                continue;
            }
            first = false;
            if (value < 1 || value > n)
                throw std::runtime_error("metis: neighbor id " + std::to_string(value) +
                                         " out of range on line for vertex " + std::to_string(v + 1));
            edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(value - 1));
            ++adjacency_entries;
        }
        ++v;
    }
    if (adjacency_entries != static_cast<std::size_t>(2 * m))
        std::cerr << "warning: metis header states " << m << " edges but lists "
                  << adjacency_entries << " adjacency entries; proceeding\n";
    return Graph(static_cast<Vertex>(n), edges, has_weights ? weights : std::vector<Weight>{});
}

Graph parse_dimacs(std::istream& in) {
    std::string line;
    long long n = -1, m = -1;
    std::vector<Edge> edges;
    std::size_t edge_lines = 0;
    while (std::getline(in, line)) {
        if (comment_or_blank(line, 'c')) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        if (kind == "p") {
            std::string problem;
            if (!(ls >> problem >> n >> m) || problem != "edge")
                throw std::runtime_error("dimacs: malformed problem line: " + line);
            if (n < 0 || m < 0) throw std::runtime_error("dimacs: negative counts");
        } else if (kind == "e") {
            if (n < 0) throw std::runtime_error("dimacs: edge before problem line");
            long long u, v;
            if (!(ls >> u >> v)) throw std::runtime_error("dimacs: malformed edge line: " + line);
            if (u < 1 || u > n || v < 1 || v > n)
                throw std::runtime_error("dimacs: endpoint out of range: " + line);
            edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
            ++edge_lines;
        } else {
            throw std::runtime_error("dimacs: unrecognized line: " + line);
        }
    }
    if (n < 0) throw std::runtime_error("dimacs: missing problem line");
    if (m >= 0 && edge_lines != static_cast<std::size_t>(m))
        throw std::runtime_error("dimacs: header states " + std::to_string(m) + " edges but " +
                                 std::to_string(edge_lines) + " e-lines found");
    return Graph(static_cast<Vertex>(n), edges);
}

Graph parse_edgelist(std::istream& in) {
    std::string line;
    std::vector<Edge> edges;
    std::vector<std::pair<Vertex, Weight>> weight_overrides;
    Vertex max_id = -1;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (comment_or_blank(line, '#')) {
            std::string hash, kind;
            ls >> hash;
            if (!(ls >> kind) || kind != "weight") continue;  // ordinary comment
            long long id, w;
            if (!(ls >> id >> w)) throw std::runtime_error("edgelist: malformed weight line: " + line);
            if (id < 0) throw std::runtime_error("edgelist: negative vertex id: " + line);
            if (w < 1) throw std::runtime_error("edgelist: vertex weight must be >= 1");
            weight_overrides.emplace_back(static_cast<Vertex>(id), w);
            max_id = std::max(max_id, static_cast<Vertex>(id));
            continue;
        }
        long long u, v;
        if (!(ls >> u >> v)) throw std::runtime_error("edgelist: malformed edge line: " + line);
        if (u < 0 || v < 0) throw std::runtime_error("edgelist: negative vertex id: " + line);
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    const Vertex n = max_id + 1;
    std::vector<Weight> weights(static_cast<std::size_t>(n), 1);
    for (auto [v, w] : weight_overrides) weights[v] = w;
    return Graph(n, edges, weight_overrides.empty() ? std::vector<Weight>{} : weights);
}

Graph parse_graph(std::istream& in, GraphFormat format) {
    switch (format) {
        case GraphFormat::Metis: return parse_metis(in);
        case GraphFormat::Dimacs: return parse_dimacs(in);
        case GraphFormat::Edgelist: return parse_edgelist(in);
    }
    throw std::invalid_argument("unknown graph format");
}

Graph parse_graph(const std::filesystem::path& path, std::optional<GraphFormat> format) {
    if (!format) {
        format = format_from_extension(path);
        if (!format)
            throw std::runtime_error("cannot infer graph format from extension of " + path.string() +
                                     "; pass the format explicitly");
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return parse_graph(in, *format);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_metis(const Graph& g, std::ostream& out, bool include_weights) {
    out << g.num_vertices() << ' ' << g.num_edges();
    if (include_weights) out << " 10";
    out << '\n';
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        bool first = true;
        if (include_weights) {
            out << g.weight(v);
            first = false;
        }
        for (Vertex nb : g.neighbors(v)) {
            if (!first) out << ' ';
            out << nb + 1;
            first = false;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failure while emitting metis");
}

void write_metis(const Graph& g, const std::filesystem::path& path, bool include_weights) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_metis(g, out, include_weights);
}

std::vector<Vertex> read_solution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<Vertex> set;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (comment_or_blank(line, '#')) continue;
        set.push_back(static_cast<Vertex>(std::stoll(line)));
    }
    return set;
}

void write_solution(std::span<const Vertex> set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (Vertex v : set) out << v << '\n';
}

}  // namespace mis
