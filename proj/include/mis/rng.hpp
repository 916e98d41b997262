#pragma once

#include <cmath>
#include <cstdint>

namespace mis {

// splitmix64; used for seeding and for deriving per-worker / per-instance streams
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
    return splitmix64(splitmix64(seed) ^ splitmix64(value));
}

// xoshiro-free minimal engine: mt19937_64 is fine, but we pin our own uniform
// conversions so sampled streams do not depend on the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix-expanded state, never all-zero
        s_[0] = splitmix64(seed);
        s_[1] = splitmix64(s_[0]);
        s_[2] = splitmix64(s_[1]);
        s_[3] = splitmix64(s_[2]);
    }

    std::uint64_t next_u64() {
        // xoshiro256**
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        // rejection-free multiply-shift; bias < 2^-64, irrelevant at our scales
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * bound) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // standard normal via Box-Muller (one value per call, spare cached)
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mis
