// Reference probability-map provider speaking the line protocol on its
// standard streams: reads "n m_edges m_maps", the edge lines and the weight
// line, then answers n rows of m_maps constant values. Serves as protocol
// documentation and as the test double for the external provider path.
//
// usage: constant_provider [value]   (default 0.5)

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    const double value = argc > 1 ? std::atof(argv[1]) : 0.5;
    long long n, m_edges, m_maps;
    while (std::scanf("%lld %lld %lld", &n, &m_edges, &m_maps) == 3) {
        long long u, v;
        for (long long e = 0; e < m_edges; ++e)
            if (std::scanf("%lld %lld", &u, &v) != 2) return 1;
        long long w;
        for (long long i = 0; i < n; ++i)
            if (std::scanf("%lld", &w) != 1) return 1;
        std::string row;
        for (long long c = 0; c < m_maps; ++c) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), c == 0 ? "%g" : " %g", value);
            row += buf;
        }
        for (long long i = 0; i < n; ++i) std::printf("%s\n", row.c_str());
        std::fflush(stdout);
    }
    return 0;
}
