#pragma once

#include <cstdint>

namespace motivic {

// Counter-based generator: output i depends only on (seed, i), so partitioned
// scans can draw from disjoint counter ranges and still reproduce the
// single-threaded stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), ctr_(counter) {}

    std::uint64_t next() { return mix(seed_, ctr_++); }

    // Uniform in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t counter() const { return ctr_; }

private:
    std::uint64_t seed_;
    std::uint64_t ctr_;
};

} // namespace motivic
