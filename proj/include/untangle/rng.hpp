#pragma once

#include <cstdint>

#include "untangle/linalg.hpp"

namespace untangle {

// splitmix64 (Steele, Lea, Flood 2014). Pinned here so that every sampled
// dataset is reproducible bit-for-bit across platforms from (seed, stream).
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]: avoids log(0) in Box-Muller.
    double next_double_open0() {
        double u = next_double();
        return u == 0.0 ? 0x1.0p-53 : u;
    }

    // Box-Muller; consumes two uniforms per pair, second value cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double_open0();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

   private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Independent substream k of a seed: state = scramble(seed) + k * golden.
// Documented in the README; changing this breaks dataset reproducibility.
inline SplitMix64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 s(seed);
    std::uint64_t base = s.next();
    return SplitMix64(base + stream * 0x9E3779B97F4A7C15ULL);
}

// Uniform over the open unit ball by rejection from [-1,1]^n.
Vec sample_unit_ball(SplitMix64& rng, std::size_t n);

// Uniform over the unit sphere via normalized gaussians.
Vec sample_unit_sphere(SplitMix64& rng, std::size_t n);

}  // namespace untangle
