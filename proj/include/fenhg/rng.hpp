#pragma once

#include <cstdint>

namespace fenhg {

// splitmix64 (Steele, Lea, Flood 2014). Used instead of <random> engines and
// distributions so that seeded runs are byte-identical across platforms and
// standard library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double probability) { return unit() < probability; }

    // Independent stream for a sub-task; replaying (seed, index) reproduces it.
    static SplitMix64 split(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0x517cc1b727220a95ULL + index * 0x2545f4914f6cdd1dULL));
        mixer.next();
        return mixer;
    }

private:
    std::uint64_t state_;
};

}  // namespace fenhg
