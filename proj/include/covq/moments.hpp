#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "covq/points.hpp"

namespace covq {

// Central moments of eta = (z - u)^2 for a single coordinate z distributed
// Beta_delta(alpha, alpha) on (-delta, delta); alpha = 0 is the symmetric
// two-point law on {-delta, +delta}.
struct EtaMoments {
    double mean = 0.0;
    double variance = 0.0;
    double third_central = 0.0;
};

inline EtaMoments eta_moments(double u, double delta, double alpha) {
    if (delta <= 0.0) throw std::invalid_argument("eta_moments: delta must be > 0");
    if (alpha < 0.0) throw std::invalid_argument("eta_moments: alpha must be >= 0");
    const double u2 = u * u;
    const double d2 = delta * delta;
    if (alpha == 0.0) {
        // Degenerate two-point law: even central moments (2*delta*u)^(2k), odd ones zero.
        return {u2 + d2, 4.0 * d2 * u2, 0.0};
    }
    const double a1 = 2.0 * alpha + 1.0;
    const double a3 = 2.0 * alpha + 3.0;
    const double a5 = 2.0 * alpha + 5.0;
    EtaMoments m;
    m.mean = u2 + d2 / a1;
    m.variance = (4.0 * d2 / a1) * (u2 + d2 * alpha / (a1 * a3));
    m.third_central = (48.0 * alpha * d2 * d2 / (a1 * a1 * a3)) *
                      (u2 + d2 * (2.0 * alpha - 1.0) / (3.0 * a5 * a1));
    return m;
}

// Moments of ||U - Z||^2 for Z with i.i.d. Beta_delta(alpha, alpha)
// coordinates: coordinate-wise sums of the eta moments. The first three
// depend on U only through ||U||^2; kappa4 (populated for alpha = 0 only)
// needs the fourth power sum, kappa4 = -32 delta^4 sum(u_i^4).
struct AggregateMoments {
    double mu = 0.0;
    double sigma2 = 0.0;
    double mu3 = 0.0;
    double kappa4 = 0.0;
};

inline AggregateMoments aggregate(std::span<const double> U, double delta, double alpha) {
    AggregateMoments agg;
    double norm2 = 0.0;
    double pow4 = 0.0;
    for (double u : U) {
        const double u2 = u * u;
        norm2 += u2;
        pow4 += u2 * u2;
    }
    const auto d = static_cast<double>(U.size());
    const double d2 = delta * delta;
    if (alpha == 0.0) {
        agg.mu = norm2 + d * d2;
        agg.sigma2 = 4.0 * d2 * norm2;
        agg.mu3 = 0.0;
        agg.kappa4 = -32.0 * d2 * d2 * pow4;
        return agg;
    }
    if (delta <= 0.0) throw std::invalid_argument("aggregate: delta must be > 0");
    const double a1 = 2.0 * alpha + 1.0;
    const double a3 = 2.0 * alpha + 3.0;
    const double a5 = 2.0 * alpha + 5.0;
    agg.mu = norm2 + d * d2 / a1;
    agg.sigma2 = (4.0 * d2 / a1) * (norm2 + d * d2 * alpha / (a1 * a3));
    agg.mu3 = (48.0 * alpha * d2 * d2 / (a1 * a1 * a3)) *
              (norm2 + d * d2 * (2.0 * alpha - 1.0) / (3.0 * a5 * a1));
    agg.kappa4 = 0.0;
    return agg;
}

inline AggregateMoments aggregate(const Point& U, double delta, double alpha) {
    return aggregate(std::span<const double>(U.data(), U.size()), delta, alpha);
}

}  // namespace covq
