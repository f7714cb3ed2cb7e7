#pragma once

#include <cstdint>

namespace labelcut {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic across platforms, unlike <random> distributions; seeded
// generation has to be bit-reproducible.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() { return splitmix64(state); }

    // uniform in [0, n)
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace labelcut
