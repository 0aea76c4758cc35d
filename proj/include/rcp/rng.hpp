#pragma once
#include <cmath>
#include <cstdint>

namespace rcp {

// Counter-based generator: every value is a pure function of
// (seed, stream, counter), so parallel substreams reproduce identically
// regardless of scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ (stream * 0xbf58476d1ce4e5b9ull))) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + counter * 0x9e3779b97f4a7c15ull);
    }

    // uniform in [0, 1), 53 bits
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // standard exponential
    double exponential(std::uint64_t counter) const {
        return -std::log1p(-uniform(counter));
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
};

} // namespace rcp
