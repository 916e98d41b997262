#include "mis/gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mis/rng.hpp"

namespace mis {

void GenSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    switch (model) {
        case GraphModel::ER:
            if (p < 0 || p > 1) throw std::invalid_argument("p must be in [0,1]");
            break;
        case GraphModel::BA:
            if (m < 1) throw std::invalid_argument("m must be >= 1");
            if (n <= m) throw std::invalid_argument("n must exceed m");
            break;
        case GraphModel::HK:
            if (m < 1) throw std::invalid_argument("m must be >= 1");
            if (n <= m) throw std::invalid_argument("n must exceed m");
            if (p_triangle < 0 || p_triangle > 1)
                throw std::invalid_argument("p_triangle must be in [0,1]");
            break;
        case GraphModel::WS:
            if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and >= 2");
            if (n <= k) throw std::invalid_argument("n must exceed k");
            if (p_rewire < 0 || p_rewire > 1)
                throw std::invalid_argument("p_rewire must be in [0,1]");
            break;
        case GraphModel::HRG:
            if (alpha <= 0.5) throw std::invalid_argument("alpha must exceed 0.5");
            if (temperature < 0 || temperature >= 1)
                throw std::invalid_argument("temperature must be in [0,1)");
            if (target_avg_degree <= 0)
                throw std::invalid_argument("target average degree must be positive");
            break;
    }
}

Graph generate(const GenSpec& s) {
    s.validate();
    switch (s.model) {
        case GraphModel::ER: return gen_er(s.n, s.p, s.seed);
        case GraphModel::BA: return gen_ba(s.n, s.m, s.seed);
        case GraphModel::HK: return gen_hk(s.n, s.m, s.p_triangle, s.seed);
        case GraphModel::WS: return gen_ws(s.n, s.k, s.p_rewire, s.seed);
        case GraphModel::HRG: return gen_hrg(s.n, s.alpha, s.temperature, s.target_avg_degree, s.seed);
    }
    throw std::invalid_argument("unknown graph model");
}

Graph gen_er(Vertex n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return Graph(n, edges);
}

namespace {

struct Attachment {
    Rng& rng;
    std::vector<Vertex> repeated;            // one entry per edge endpoint, frozen per vertex
    std::vector<std::vector<Vertex>> adj;

    bool adjacent(Vertex u, Vertex v) const {
        return std::count(adj[u].begin(), adj[u].end(), v) > 0;
    }

    // preferential draw from the frozen multiset; falls back to a uniform
    // non-adjacent existing vertex when the multiset cannot provide one
    Vertex draw_target(Vertex v, Vertex existing) {
        if (!repeated.empty()) {
            for (int tries = 0; tries < 64; ++tries) {
                Vertex t = repeated[rng.below(repeated.size())];
                if (t != v && !adjacent(v, t)) return t;
            }
        }
        std::vector<Vertex> candidates;
        for (Vertex t = 0; t < existing; ++t)
            if (t != v && !adjacent(v, t)) candidates.push_back(t);
        return candidates[rng.below(candidates.size())];
    }
};

// Preferential attachment with an optional triangle step chained off the
// last preferential target. p_triangle = 0 reproduces plain BA exactly.
Graph attach_graph(Vertex n, Vertex m, double p_triangle, std::uint64_t seed) {
    if (m < 1 || n <= m) throw std::invalid_argument("attachment model requires n > m >= 1");
    Rng rng(seed);
    Attachment at{rng, {}, {}};
    at.adj.resize(n);
    std::vector<Edge> edges;

    for (Vertex v = m; v < n; ++v) {
        std::vector<Vertex> used;
        Vertex last_pref = -1;
        for (Vertex e = 0; e < m; ++e) {
            Vertex t = -1;
            if (e > 0 && p_triangle > 0 && rng.bernoulli(p_triangle)) {
                // triangle step: unconnected neighbor of the last preferential target
                std::vector<Vertex> candidates;
                for (Vertex nb : at.adj[last_pref])
                    if (nb != v && !at.adjacent(v, nb)) candidates.push_back(nb);
                if (!candidates.empty()) t = candidates[rng.below(candidates.size())];
            }
            if (t < 0) {
                t = at.draw_target(v, v);
                last_pref = t;
            }
            edges.emplace_back(v, t);
            at.adj[v].push_back(t);
            at.adj[t].push_back(v);
            used.push_back(t);
        }
        // repeated-nodes update deferred so draws within one vertex see a
        // frozen degree distribution
        for (Vertex t : used) at.repeated.push_back(t);
        for (Vertex e = 0; e < m; ++e) at.repeated.push_back(v);
    }
    return Graph(n, edges);
}

}  // namespace

Graph gen_ba(Vertex n, Vertex m, std::uint64_t seed) { return attach_graph(n, m, 0.0, seed); }

Graph gen_hk(Vertex n, Vertex m, double p_triangle, std::uint64_t seed) {
    if (p_triangle < 0 || p_triangle > 1) throw std::invalid_argument("p_triangle must be in [0,1]");
    return attach_graph(n, m, p_triangle, seed);
}

Graph gen_ws(Vertex n, Vertex k, double p_rewire, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("WS requires even k >= 2");
    if (n <= k) throw std::invalid_argument("WS requires n > k");
    Rng rng(seed);

    std::vector<std::set<Vertex>> adj(n);
    auto add = [&](Vertex u, Vertex v) {
        adj[u].insert(v);
        adj[v].insert(u);
    };
    auto remove = [&](Vertex u, Vertex v) {
        adj[u].erase(v);
        adj[v].erase(u);
    };
    for (Vertex u = 0; u < n; ++u)
        for (Vertex j = 1; j <= k / 2; ++j) add(u, static_cast<Vertex>((u + j) % n));

    for (Vertex u = 0; u < n; ++u) {
        for (Vertex j = 1; j <= k / 2; ++j) {
            Vertex v = static_cast<Vertex>((u + j) % n);
            if (!rng.bernoulli(p_rewire)) continue;
            if (static_cast<Vertex>(adj[u].size()) >= n - 1) continue;  // saturated
            Vertex w;
            do {
                w = static_cast<Vertex>(rng.below(n));
            } while (w == u || adj[u].count(w));
            remove(u, v);
            add(u, w);
        }
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : adj[u])
            if (u < v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

namespace {

// Expected average degree of the temperature-smoothed hyperbolic model with
// disk radius r, via fixed-grid quadrature over (r1, r2, relative angle).
double hrg_expected_degree(Vertex n, double alpha, double temperature, double radius) {
    constexpr int kGrid = 48;
    const double pi = 3.141592653589793238462643383279502884;
    const double denom = std::cosh(alpha * radius) - 1.0;

    auto radial_pdf = [&](double r) { return alpha * std::sinh(alpha * r) / denom; };
    auto connect_prob = [&](double d) {
        if (temperature < 1e-9) return d <= radius ? 1.0 : 0.0;
        return 1.0 / (1.0 + std::exp((d - radius) / (2.0 * temperature)));
    };

    // midpoint rule on all three axes
    double total = 0.0;
    const double dr = radius / kGrid;
    const double dtheta = pi / kGrid;
    for (int i = 0; i < kGrid; ++i) {
        const double r1 = (i + 0.5) * dr;
        const double f1 = radial_pdf(r1);
        for (int j = 0; j < kGrid; ++j) {
            const double r2 = (j + 0.5) * dr;
            const double f2 = radial_pdf(r2);
            double inner = 0.0;
            const double ch = std::cosh(r1) * std::cosh(r2);
            const double sh = std::sinh(r1) * std::sinh(r2);
            for (int t = 0; t < kGrid; ++t) {
                const double theta = (t + 0.5) * dtheta;
                const double arg = std::max(1.0, ch - sh * std::cos(theta));
                inner += connect_prob(std::acosh(arg));
            }
            total += f1 * f2 * inner * dtheta / pi * dr * dr;
        }
    }
    return (n - 1) * total;
}

// Disk radius such that the expected average degree matches the target
// within 1%.
double hrg_calibrate_radius(Vertex n, double alpha, double temperature, double target) {
    double lo = 0.1, hi = 2.0 * std::log(n) + 20.0;
    // expected degree decreases in the radius once past the tiny-disk regime;
    // expand lo until deg(lo) >= target
    while (hrg_expected_degree(n, alpha, temperature, lo) < target && lo < hi) lo *= 1.5;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double deg = hrg_expected_degree(n, alpha, temperature, mid);
        if (std::abs(deg - target) <= 0.01 * target) return mid;
        (deg > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Graph gen_hrg(Vertex n, double alpha, double temperature, double target_avg_degree,
              std::uint64_t seed) {
    if (alpha <= 0.5) throw std::invalid_argument("alpha must exceed 0.5");
    if (temperature < 0 || temperature >= 1)
        throw std::invalid_argument("temperature must be in [0,1)");
    if (target_avg_degree <= 0) throw std::invalid_argument("target average degree must be positive");
    if (n < 2) return Graph(n, {});

    const double pi = 3.141592653589793238462643383279502884;
    const double radius = hrg_calibrate_radius(n, alpha, temperature, target_avg_degree);

    Rng rng(seed);
    std::vector<double> r(n), theta(n);
    const double denom = std::cosh(alpha * radius) - 1.0;
    for (Vertex v = 0; v < n; ++v) {
        r[v] = std::acosh(1.0 + rng.uniform01() * denom) / alpha;
        theta[v] = rng.uniform01() * 2.0 * pi;
    }

    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const double dtheta = pi - std::abs(pi - std::abs(theta[u] - theta[v]));
            const double arg =
                std::max(1.0, std::cosh(r[u]) * std::cosh(r[v]) -
                                  std::sinh(r[u]) * std::sinh(r[v]) * std::cos(dtheta));
            const double d = std::acosh(arg);
            bool connected;
            if (temperature < 1e-9) {
                connected = d <= radius;
            } else {
                connected = rng.bernoulli(1.0 / (1.0 + std::exp((d - radius) / (2.0 * temperature))));
            }
            if (connected) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

Graph gen_weights(const Graph& g, double mu, double sigma, std::uint64_t seed) {
    if (mu <= 0) throw std::invalid_argument("mu must be positive");
    if (sigma < 0) throw std::invalid_argument("sigma must be non-negative");
    Rng rng(seed);
    std::vector<Weight> weights(g.num_vertices());
    for (auto& w : weights) {
        const double draw = mu + sigma * rng.normal();
        w = std::max<Weight>(1, std::llround(draw));
    }
    return g.with_weights(std::move(weights));
}

GraphModel parse_model(const std::string& name) {
    if (name == "er") return GraphModel::ER;
    if (name == "ba") return GraphModel::BA;
    if (name == "hk") return GraphModel::HK;
    if (name == "ws") return GraphModel::WS;
    if (name == "hrg") return GraphModel::HRG;
    throw std::invalid_argument("unknown graph model: " + name);
}

}  // namespace mis
