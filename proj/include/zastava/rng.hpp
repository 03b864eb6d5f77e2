// Deterministic pseudo-random source. SplitMix64 with hand-rolled range
// mapping so streams are identical across platforms and standard libraries.
#pragma once

#include "zastava/rational.hpp"

#include <cstdint>
#include <vector>

namespace zastava {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform over [lo, hi], inclusive. Modulo bias is irrelevant at the
    // tiny ranges used here (|hi-lo| <= a few hundred).
    long uniform(long lo, long hi) {
        if (hi < lo) return lo;
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next_u64() % span);
    }

    // Default sampling distribution: integers uniform in [-bound, bound].
    static constexpr long kDefaultBound = 10;

    Rational small_int(long bound = kDefaultBound) { return rat(uniform(-bound, bound)); }

    // Independent child stream; used to decouple sub-draws from draw order.
    Rng fork(std::uint64_t tag) {
        std::uint64_t s = next_u64();
        return Rng(s ^ (0x517cc1b727220a95ULL * (tag + 1)));
    }

private:
    std::uint64_t state_;
};

} // namespace zastava
