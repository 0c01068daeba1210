#pragma once

#include <cstdint>
#include <cmath>

#include "affsurf/linalg.hpp"

namespace affsurf {

// splitmix64; used to derive independent stream seeds from (seed, tags).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** with portable double generation. Every Monte Carlo task keys
// its own stream by counters, so results do not depend on worker count or
// evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& word : s_) word = mix64(z += 0x9e3779b97f4a7c15ULL);
    }

    static Rng stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0,
                      std::uint64_t b = 0) {
        return Rng(mix64(seed) ^ mix64(tag * 0x9e3779b97f4a7c15ULL + 1) ^
                   mix64(a * 0xbf58476d1ce4e5b9ULL + 2) ^ mix64(b * 0x94d049bb133111ebULL + 3));
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Marsaglia polar method (hand-rolled so byte streams are portable).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    Vec normal_vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    Vec unit_vec(int n) {
        Vec v = normal_vec(n);
        double r = v.norm();
        while (r < 1e-12) {
            v = normal_vec(n);
            r = v.norm();
        }
        return v / r;
    }

private:
    std::uint64_t s_[4] = {};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace affsurf
