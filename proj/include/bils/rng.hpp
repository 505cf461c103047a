#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace bils {

/// Master seed plus the label constants used to derive sub-streams.
/// A given (seed, label path) always yields the same stream, so any
/// (matrix, trial) work item can be replayed in isolation.
struct Seed {
    std::uint64_t value = 0;
};

namespace stream_label {
inline constexpr std::uint64_t matrix = 0x6d61747269780000ULL;    // "matrix"
inline constexpr std::uint64_t parameter = 0x706172616d000000ULL; // "param"
inline constexpr std::uint64_t noise = 0x6e6f697365000000ULL;     // "noise"
inline constexpr std::uint64_t montecarlo = 0x6d63000000000000ULL;
} // namespace stream_label

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ seeded from a (seed, label...) path via splitmix64.
/// Self-contained so sequences do not depend on the standard library
/// implementation; determinism holds for one build of this project.
class Stream {
public:
    Stream(Seed seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t mix = seed.value;
        for (std::uint64_t p : path) {
            std::uint64_t tmp = mix ^ (p + 0x9e3779b97f4a7c15ULL);
            mix = splitmix64(tmp);
        }
        for (auto& word : state_) word = splitmix64(mix);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi], inclusive, by rejection.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= limit);
        return lo + static_cast<int>(draw % span);
    }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        have_spare_ = true;
        return u * scale;
    }

    std::vector<double> normal_vector(std::size_t n, double sigma = 1.0) {
        std::vector<double> out(n);
        for (auto& x : out) x = sigma * normal();
        return out;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace bils
