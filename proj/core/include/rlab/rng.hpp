#pragma once

// Deterministic counter-based random streams. The generator is SplitMix64
// (Steele/Lea/Flood mixing function); per-trial streams are derived as
// state = mix(mix(master_seed) ^ trial_index), so any trial can be
// regenerated independently of the others and alternate-language
// implementations can reproduce the byte stream.

#include <cstdint>
#include <vector>

#include "rlab/measure_core.hpp"

namespace rlab {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial) {
        return RandomStream(splitmix64_mix(splitmix64_mix(master_seed) ^ trial));
    }

private:
    std::uint64_t state_;
};

enum class RandomFamily { piecewise_bumps, equimeasurable_shuffle, additive_perturbation };

// Nonnegative random function on the carrier. `piecewise_bumps` draws a few
// plateau blocks plus occasional heavy-tailed spikes (perturbations need not
// be bounded in L^inf). The shuffle family permutes values across equal-
// weight atoms, preserving the distribution function exactly.
AtomicFunction random_bumps(RandomStream& rs, const CarrierPtr& carrier);
AtomicFunction equimeasurable_shuffle(RandomStream& rs, const AtomicFunction& q);
AtomicFunction additive_perturbation(RandomStream& rs, const AtomicFunction& q, double amplitude);

}  // namespace rlab
