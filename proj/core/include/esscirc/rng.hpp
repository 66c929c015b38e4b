#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace esscirc {

/// Deterministic random stream. Streams for parallel work are derived from a
/// master seed plus an id path (cell, replicate, ...), so results do not
/// depend on scheduling or worker count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Derives an independent stream from (master, id0, id1, ...).
    static RandomStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t s = mix(master);
        for (std::uint64_t id : path) s = mix(s ^ mix(id + 0x9E3779B97F4A7C15ULL));
        return RandomStream(s);
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with exactly 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace esscirc
