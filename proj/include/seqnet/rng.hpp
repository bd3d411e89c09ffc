#pragma once

// Seedable, splittable random source. Streams derived with split() are
// independent of each other and of how many numbers the parent has drawn, so
// trial k always sees the same numbers whatever the trial count.

#include <cstdint>
#include <random>

namespace seqnet {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    /// Child stream keyed by `stream`; deterministic in (seed, stream).
    Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1. Lemire's multiply-shift
    /// with rejection; unlike std::uniform_int_distribution the output is
    /// identical on every standard library.
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t m = std::uint64_t{static_cast<std::uint32_t>(next() >> 32)} * bound;
        auto low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
            while (low < threshold) {
                m = std::uint64_t{static_cast<std::uint32_t>(next() >> 32)} * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Uniform integer in [lo, hi].
    std::uint32_t between(std::uint32_t lo, std::uint32_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t x) {
        // SplitMix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace seqnet
