#pragma once

#include <cstdint>

namespace pgap {

// Counter-based generator: sample i of stream s depends only on (seed, s, i),
// so Monte Carlo results are reproducible regardless of how samples are
// distributed over threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(splitmix64(seed ^ (0xbf58476d1ce4e5b9ULL * stream)) ^ stream),
          counter_(0) {}

    std::uint64_t next_u64() { return splitmix64(base_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t base_;
    std::uint64_t counter_;
};

}  // namespace pgap
