#pragma once

#include <cmath>
#include <cstdint>

namespace latred {

// Small deterministic generator (splitmix64 core) with counter-derived
// streams, so Monte Carlo trials keyed by (seed, stream, index) are
// order-independent and reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {}

    static Rng for_trial(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        Rng r(seed);
        r.state_ ^= mix(stream + 0x632be59bd9b4e019ull);
        r.state_ ^= mix(index + 0xd1b54a32d192ed03ull);
        r.next_u64();
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // uniform in (0, 1]
    double next_unit() {
        const std::uint64_t bits = next_u64() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, one spare cached
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace latred
