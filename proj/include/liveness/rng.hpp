#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "liveness/common.hpp"

namespace liveness {

// splitmix64; used to derive child stream seeds.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic RNG wrapper. std::mt19937_64 output is pinned by the
// standard, and all int/real mappings are implemented here rather than
// with std::*_distribution, so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), gen_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return gen_(); }

    // [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // inclusive [lo, hi], multiply-shift mapping
    int64_t uniform_int(int64_t lo, int64_t hi) {
        require(lo <= hi, "uniform_int: empty range");
        const uint64_t n = static_cast<uint64_t>(hi - lo) + 1;
        const uint64_t x = next_u64();
        const uint64_t r = static_cast<uint64_t>(
            (static_cast<unsigned __int128>(x) * n) >> 64);
        return lo + static_cast<int64_t>(r);
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Child stream independent of this stream's consumption state.
    Rng split(uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
    }

    // Fisher-Yates; std::shuffle is implementation-defined, this is not.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace liveness
