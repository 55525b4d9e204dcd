#pragma once

#include <cmath>
#include <cstdint>

namespace covq {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer; bijective on 64-bit values.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace detail

// Counter-based generator keyed by (seed, stream, index). Every key pair
// addresses an independent substream, so sample i can be generated on any
// worker without touching shared state; results never depend on thread
// count or iteration order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0)
        : base_(derive(seed, stream, index)) {}

    std::uint64_t next_u64() {
        return detail::mix64(base_ + (++counter_) * detail::kGolden);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo,hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound), bound >= 1; rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            const std::uint64_t x = next_u64();
            if (x < limit) return x % bound;
        }
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(6.283185307179586476925287 * u2);
        have_spare_ = true;
        return mag * std::cos(6.283185307179586476925287 * u2);
    }

    // Marsaglia-Tsang; the shape < 1 case boosts through Gamma(shape+1).
    double gamma(double shape) {
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0);
            double u = next_double();
            while (u <= 0.0) u = next_double();
            return g * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Symmetric Beta(alpha, alpha) on (0,1) via the two-gamma ratio.
    double beta_symmetric(double alpha) {
        const double x = gamma(alpha);
        const double y = gamma(alpha);
        const double s = x + y;
        return s > 0.0 ? x / s : 0.5;
    }

private:
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        std::uint64_t h = detail::mix64(seed ^ 0xA0761D6478BD642FULL);
        h = detail::mix64(h ^ stream);
        return detail::mix64(h ^ index);
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace covq
