#pragma once
#include <cmath>
#include <cstdint>

namespace qrelax {

// SplitMix64 (Steele, Lea, Flood 2014). One 64-bit state word, full period,
// trivially seedable; the same seed yields the same stream on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]; never exactly 0 so it is safe under log()
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // uniform in [-1, 1)
    double next_symmetric() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-52 - 1.0;
    }

private:
    std::uint64_t state_;
};

// Standard normal deviates via the Marsaglia polar method (log/sqrt only,
// no trig). Draws come in pairs; the spare is cached.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = rng_.next_symmetric();
            v = rng_.next_symmetric();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    SplitMix64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qrelax
