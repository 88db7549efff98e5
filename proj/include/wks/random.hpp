#pragma once

// Random source used by every randomized component.
//
// Generator: std::mt19937_64 (64-bit Mersenne Twister, the standard
// parameter set). Bounded draws use rejection sampling on the raw 64-bit
// output so that results do not depend on the standard library's
// distribution implementations.
//
// Per-trial seeds are derived with SplitMix64:
//   derive_seed(master, trial) = splitmix64(master ^ splitmix64(trial + 1))

#include <cstdint>
#include <limits>
#include <random>

namespace wks {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master ^ splitmix64(trial + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - (max % n + 1) % n;
        std::uint64_t x = engine_();
        while (x > limit) x = engine_();
        return x % n;
    }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace wks
