#pragma once

#include <cmath>
#include <cstdint>

namespace burgers {

// xoshiro256** (Blackman & Vigna), seeded through splitmix64. Chosen over the
// std engines because distribution sampling below is hand-rolled from raw
// bits: output must be bit-identical across platforms and standard library
// implementations.
inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Replica stream derivation: mix(seed, k) feeds distinct, decorrelated seeds
// to parallel replicas so aggregation order cannot affect results.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t replica) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (replica + 1));
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1], for logs.
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    // Box-Muller pair: two independent standard normals per call.
    void normal_pair(double& a, double& b) {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double th = 6.283185307179586476925286766559 * uniform();
        a = r * std::cos(th);
        b = r * std::sin(th);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace burgers
