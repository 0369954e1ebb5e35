#pragma once
// SplitMix64 (Steele, Lea & Flood 2014).  Monte Carlo trials draw from
// substreams derived by hashing (seed, stream index), so the recorded
// ensemble does not depend on trial execution order.

#include <cstdint>

namespace iondistill {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t avalanche(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
        return SplitMix64(avalanche(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        return avalanche(z);
    }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace iondistill
