#pragma once

#include <cstdint>

#include "notchwave/types.hpp"

namespace notchwave {

// Deterministic random streams. Doubles are built from raw 64-bit draws so
// that outputs do not depend on the standard library's distribution
// implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // splitmix64 warm-up decorrelates nearby seeds
        for (int i = 0; i < 4; ++i) next_u64();
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard complex normal, variance 1 per component pair (CN(0,1))
    cplx cnormal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-std::log(u1));
        return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
    }

    // derive an independent stream for a labelled sub-task
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
        Rng r(seed ^ (0x632be59bd9b4e019ull * (label + 1)));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

}  // namespace notchwave
