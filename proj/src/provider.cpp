#include "mis/provider.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

namespace mis {

std::string encode_provider_request(const Graph& residual, int m) {
    std::ostringstream out;
    out << residual.num_vertices() << ' ' << residual.num_edges() << ' ' << m << '\n';
    for (auto [u, v] : residual.edges()) out << u << ' ' << v << '\n';
    for (Vertex v = 0; v < residual.num_vertices(); ++v)
        out << residual.weight(v) << (v + 1 == residual.num_vertices() ? "" : " ");
    out << '\n';
    return out.str();
}

ProbabilityMaps parse_provider_response(const std::string& body, Vertex n, int m) {
    ProbabilityMaps maps;
    maps.rows = static_cast<std::size_t>(n);
    maps.cols = static_cast<std::size_t>(m);
    maps.values.reserve(maps.rows * maps.cols);

    std::istringstream in(body);
    std::string line;
    Vertex row = 0;
    while (std::getline(in, line)) {
        if (line.empty() && row == n) break;
        if (row >= n) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ProviderError("provider returned too many rows");
        }
        std::istringstream ls(line);
        int col = 0;
        std::string tok;
        while (ls >> tok) {
            if (col >= m) throw ProviderError("provider returned too many columns in row " +
                                              std::to_string(row));
            char* end = nullptr;
            const double value = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0' || std::isnan(value))
                throw ProviderError("non-numeric provider value: " + tok);
            maps.values.push_back(std::clamp(value, 0.0, 1.0));
            ++col;
        }
        if (col != m)
            throw ProviderError("provider row " + std::to_string(row) + " has " +
                                std::to_string(col) + " values, expected " + std::to_string(m));
        ++row;
    }
    if (row != n)
        throw ProviderError("provider returned " + std::to_string(row) + " rows, expected " +
                            std::to_string(n));
    return maps;
}

namespace {

// Spawned child spoken to over stdin/stdout; one process per client.
class ProcessProvider : public ProviderClient {
public:
    explicit ProcessProvider(const std::string& command) {
        // a dying child must surface as a ProviderError, not a SIGPIPE
        signal(SIGPIPE, SIG_IGN);
        std::istringstream in(command);
        std::vector<std::string> args;
        std::string tok;
        while (in >> tok) args.push_back(tok);
        if (args.empty()) throw ProviderError("empty provider command");

        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0)
            throw ProviderError("pipe failed: " + std::string(std::strerror(errno)));

        pid_ = fork();
        if (pid_ < 0) throw ProviderError("fork failed: " + std::string(std::strerror(errno)));
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            std::vector<char*> argv;
            for (auto& a : args) argv.push_back(a.data());
            argv.push_back(nullptr);
            execvp(argv[0], argv.data());
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        write_fd_ = to_child[1];
        read_fd_ = from_child[0];
    }

    ~ProcessProvider() override {
        if (write_fd_ >= 0) close(write_fd_);
        if (read_fd_ >= 0) close(read_fd_);
        if (pid_ > 0) {
            int status = 0;
            if (waitpid(pid_, &status, WNOHANG) == 0) {
                kill(pid_, SIGTERM);
                waitpid(pid_, &status, 0);
            }
        }
    }

    ProbabilityMaps request(const Graph& residual, int m) override {
        const std::string req = encode_provider_request(residual, m);
        if (!write_all(write_fd_, req))
            throw ProviderError("provider process is not accepting input");
        const std::string body = read_lines(residual.num_vertices());
        return parse_provider_response(body, residual.num_vertices(), m);
    }

private:
    static bool write_all(int fd, const std::string& data) {
        std::size_t off = 0;
        while (off < data.size()) {
            const ssize_t n = ::write(fd, data.data() + off, data.size() - off);
            if (n <= 0) return false;
            off += static_cast<std::size_t>(n);
        }
        return true;
    }

    std::string read_lines(Vertex count) {
        std::string body;
        Vertex seen = 0;
        char buf[4096];
        while (seen < count) {
            const ssize_t n = ::read(read_fd_, buf, sizeof(buf));
            if (n <= 0) throw ProviderError("provider process closed its output stream");
            for (ssize_t i = 0; i < n; ++i)
                if (buf[i] == '\n') ++seen;
            body.append(buf, static_cast<std::size_t>(n));
        }
        return body;
    }

    pid_t pid_ = -1;
    int write_fd_ = -1, read_fd_ = -1;
};

// One TCP connection per request: connect, send, half-close, read to EOF.
class TcpProvider : public ProviderClient {
public:
    TcpProvider(std::string host, std::string port)
        : host_(std::move(host)), port_(std::move(port)) {}

    ProbabilityMaps request(const Graph& residual, int m) override {
        addrinfo hints = {};
        hints.ai_family = AF_UNSPEC;
        hints.ai_socktype = SOCK_STREAM;
        addrinfo* info = nullptr;
        if (getaddrinfo(host_.c_str(), port_.c_str(), &hints, &info) != 0 || !info)
            throw ProviderError("cannot resolve provider endpoint " + host_ + ":" + port_);

        int fd = -1;
        for (addrinfo* a = info; a; a = a->ai_next) {
            fd = socket(a->ai_family, a->ai_socktype, a->ai_protocol);
            if (fd < 0) continue;
            if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
            close(fd);
            fd = -1;
        }
        freeaddrinfo(info);
        if (fd < 0) throw ProviderError("cannot connect to provider " + host_ + ":" + port_);

        const std::string req = encode_provider_request(residual, m);
        std::size_t off = 0;
        while (off < req.size()) {
            const ssize_t n = ::send(fd, req.data() + off, req.size() - off, MSG_NOSIGNAL);
            if (n <= 0) {
                close(fd);
                throw ProviderError("provider connection dropped while sending");
            }
            off += static_cast<std::size_t>(n);
        }
        shutdown(fd, SHUT_WR);

        std::string body;
        char buf[4096];
        ssize_t n;
        while ((n = ::recv(fd, buf, sizeof(buf), 0)) > 0) body.append(buf, static_cast<std::size_t>(n));
        close(fd);
        return parse_provider_response(body, residual.num_vertices(), m);
    }

private:
    std::string host_, port_;
};

}  // namespace

std::unique_ptr<ProviderClient> ProviderClient::connect(const std::string& endpoint) {
    if (endpoint.rfind("tcp:", 0) == 0) {
        const std::string rest = endpoint.substr(4);
        const auto colon = rest.rfind(':');
        if (colon == std::string::npos)
            throw ProviderError("tcp endpoint must look like tcp:host:port");
        return std::make_unique<TcpProvider>(rest.substr(0, colon), rest.substr(colon + 1));
    }
    return std::make_unique<ProcessProvider>(endpoint);
}

}  // namespace mis
