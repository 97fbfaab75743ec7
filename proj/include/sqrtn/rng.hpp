#pragma once

#include <cstdint>

namespace sqrtn {

// Deterministic cross-platform generators. Results must be bit-identical
// across compilers and thread counts, so these are fixed-algorithm
// implementations rather than std::mt19937 (whose distributions are not
// pinned by the standard).

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0,1) with 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Seed for an independent worker stream. Distinct chunk indices give
// decorrelated streams regardless of the master seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t chunk) {
    SplitMix64 sm(master ^ (0x9e3779b97f4a7c15ULL * (chunk + 1)));
    sm.next();
    return sm.next();
}

}  // namespace sqrtn
