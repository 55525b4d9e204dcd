#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "covq/points.hpp"

namespace covq {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

// Smallest squared distance from u to any point of z; brute-force linear
// scan (n <= ~1e4 in every scenario we care about). If `cutoff2` >= 0 the
// scan stops as soon as the running minimum drops to or below it, returning
// a value that is only guaranteed to satisfy (min <= cutoff2) exactly.
inline double min_squared_distance(std::span<const double> u, const PointSet& z,
                                   double cutoff2 = -1.0) {
    if (z.empty()) throw std::invalid_argument("min_squared_distance: empty point set");
    if (static_cast<int>(u.size()) != z.dim())
        throw std::invalid_argument("min_squared_distance: dimension mismatch");
    const std::size_t d = u.size();
    const double* p = z.flat().data();
    const std::size_t n = z.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j, p += d) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double diff = u[i] - p[i];
            s += diff * diff;
        }
        if (s < best) {
            best = s;
            if (best <= cutoff2) break;
        }
    }
    return best;
}

inline double min_distance(std::span<const double> u, const PointSet& z) {
    return std::sqrt(min_squared_distance(u, z));
}

inline double min_distance(const Point& u, const PointSet& z) {
    return min_distance(std::span<const double>(u.data(), u.size()), z);
}

enum class FactorialFraction { Full, Half };

// Covering radius of the two factorial designs on {-1/2,+1/2}^d (the
// analytic delta = 1/2 case): sqrt(d)/2 for the full factorial and
// sqrt(d+8)/2 for the maximum-resolution half fraction, valid for d > 2.
inline double covering_radius_factorial(int d, FactorialFraction fraction) {
    if (d < 1) throw std::invalid_argument("covering_radius_factorial: d must be >= 1");
    if (fraction == FactorialFraction::Full) return std::sqrt(static_cast<double>(d)) / 2.0;
    if (d <= 2) throw std::invalid_argument("covering_radius_factorial: half fraction needs d > 2");
    return std::sqrt(static_cast<double>(d) + 8.0) / 2.0;
}

// Scale-free radius n^(1/d) * r used to compare designs of different sizes.
inline double normalized_radius(long long n, int d, double r) {
    if (n < 1 || d < 1) throw std::invalid_argument("normalized_radius: n and d must be >= 1");
    if (r < 0.0) throw std::invalid_argument("normalized_radius: r must be >= 0");
    return std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d)) * r;
}

}  // namespace covq
