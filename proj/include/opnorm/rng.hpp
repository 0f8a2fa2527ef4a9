#pragma once

#include <cstdint>
#include <cmath>

namespace opnorm::rng {

// Counter-based 64-bit generator (SplitMix64).  The constants are part of the
// output contract: campaigns and searches must replay bit-exactly from a seed,
// so no library distribution objects are used anywhere.
//
//   increment  0x9E3779B97F4A7C15
//   mix mul 1  0xBF58476D1CE4E5B9   (xor-shift 30)
//   mix mul 2  0x94D049BB133111EB   (xor-shift 27, final xor-shift 31)
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream seed for an indexed unit of work (trial, restart, ...).
// hash(seed, index) so trials can run in any order or in parallel.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Uniform in [0,1), 53 significant bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    // Integer in [lo, hi] inclusive.  Modulo bias is irrelevant at the span
    // sizes used here and keeps the stream layout trivial to reproduce.
    int next_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    // Box-Muller, fully specified (no std::normal_distribution).
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace opnorm::rng
