#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "covq/quadrature.hpp"

namespace covq {

enum class ApproxVariant { Normal, Refined };
enum class ApproxFamily { Design1, Design2a, Design2b };

inline std::string approx_family_name(ApproxFamily f) {
    switch (f) {
        case ApproxFamily::Design1: return "design1";
        case ApproxFamily::Design2a: return "design2a";
        case ApproxFamily::Design2b: return "design2b";
    }
    return "?";
}

// Exact i.i.d. union bound: probability that at least one of n independent
// balls covers the point, given the single-ball probability p.
inline double coverage_exact_product(double p, long long n) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("coverage_exact_product: p must be in [0,1]");
    if (n < 1) throw std::invalid_argument("coverage_exact_product: n must be >= 1");
    // 1 - (1-p)^n, via expm1/log1p to stay accurate for small p.
    if (p >= 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-p));
}

// With-replacement sample size m whose expected number of distinct vertices
// matches n draws without replacement from the 2^d cube vertices:
// m = log(1 - n/2^d) / log(1 - 1/2^d). Real-valued by construction.
inline double equivalent_m(int d, double n) {
    if (d < 1) throw std::invalid_argument("equivalent_m: d must be >= 1");
    const double k = std::ldexp(1.0, d);  // exact for d <= 53
    if (n < 1.0 || n >= k) throw std::invalid_argument("equivalent_m: need 1 <= n < 2^d");
    return std::log1p(-n / k) / std::log1p(-1.0 / k);
}

namespace detail {

inline constexpr double kVarianceFloor = 1e-300;

// Single-ball probability P{||U - Z|| <= r} as a function of normU2 = ||U||^2.
// alpha > 0 uses the Beta-coordinate moments (third-moment Edgeworth term in
// the refined variant); alpha = 0 uses the two-point law (fourth-cumulant
// term). Unclamped: callers clamp to [0,1].
inline double p_ball_raw(double normU2, int d, double delta, double alpha, double r,
                         ApproxVariant variant) {
    const double dd = static_cast<double>(d);
    const double d2 = delta * delta;
    const double r2 = r * r;
    // Beyond |t| ~ 40 the normal weight underflows; cutting off avoids
    // inf * 0 from the polynomial Edgeworth factors.
    constexpr double kTailCut = 40.0;
    if (alpha == 0.0) {
        const double u2 = std::max(normU2, kVarianceFloor);
        const double t = (r2 - normU2 - dd * d2) / (2.0 * delta * std::sqrt(u2));
        if (t > kTailCut) return 1.0;
        if (t < -kTailCut) return 0.0;
        double p = normal_cdf(t);
        if (variant == ApproxVariant::Refined) {
            const double quartic = 2.0 * (normU2 - dd / 3.0) / std::sqrt(5.0) + dd / 5.0;
            p += (1.0 + 3.0 / dd) * (t * t * t - 3.0 * t) * quartic / (12.0 * u2 * u2) * normal_pdf(t);
        }
        return p;
    }
    const double a1 = 2.0 * alpha + 1.0;
    const double a3 = 2.0 * alpha + 3.0;
    const double a5 = 2.0 * alpha + 5.0;
    const double kappa = dd * d2 * alpha / (a1 * a3);
    const double base = std::max(normU2 + kappa, kVarianceFloor);
    const double t = std::sqrt(a1) * (r2 - normU2 - dd * d2 / a1) / (2.0 * delta * std::sqrt(base));
    if (t > kTailCut) return 1.0;
    if (t < -kTailCut) return 0.0;
    double p = normal_cdf(t);
    if (variant == ApproxVariant::Refined) {
        const double g = dd * d2 * (2.0 * alpha - 1.0) / (3.0 * a5 * a1);
        const double cda = 1.0 + 3.0 / (alpha * dd);
        const double skew = cda * alpha * delta * (normU2 + g) /
                            (a3 * std::sqrt(a1) * base * std::sqrt(base));
        p += skew * (1.0 - t * t) * normal_pdf(t);
    }
    return p;
}

// Normal surrogate for ||U||^2 with U uniform on [-1,1]^d.
inline double norm2_surrogate(double s, int d) {
    const double dd = static_cast<double>(d);
    return s * std::sqrt(4.0 * dd / 45.0) + dd / 3.0;
}

}  // namespace detail

// Single-ball covering probability, clamped to [0,1] (the Edgeworth terms
// can overshoot in the tails).
inline double p_ball(double normU2, int d, double delta, double alpha, double r,
                     ApproxVariant variant) {
    if (normU2 < 0.0) throw std::invalid_argument("p_ball: normU2 must be >= 0");
    if (d < 1) throw std::invalid_argument("p_ball: d must be >= 1");
    if (delta <= 0.0) throw std::invalid_argument("p_ball: delta must be > 0");
    if (alpha < 0.0) throw std::invalid_argument("p_ball: alpha must be >= 0");
    if (r < 0.0) throw std::invalid_argument("p_ball: r must be >= 0");
    return std::clamp(detail::p_ball_raw(normU2, d, delta, alpha, r, variant), 0.0, 1.0);
}

struct CoverageApprox {
    ApproxFamily family = ApproxFamily::Design1;
    ApproxVariant variant = ApproxVariant::Refined;
    double value = 0.0;
    double quadrature_error = 0.0;
    bool converged = true;
    bool p_clamped = false;  // some single-ball probability left [0,1] and was clamped
};

// Coverage proportion C_d(Z_n, r) via the one-ball reduction: replaces
// ||U||^2 by its normal surrogate s' and integrates exp(-n * p(s')) against
// the standard normal weight. Design 2b maps to Design 2a at the equivalent
// with-replacement size m(n, d); n itself may be fractional.
inline CoverageApprox coverage_approx(ApproxFamily family, int d, double n, double delta,
                                      double alpha, double r, ApproxVariant variant,
                                      double tol = 1e-8) {
    if (d < 1) throw std::invalid_argument("coverage_approx: d must be >= 1");
    if (n < 1.0) throw std::invalid_argument("coverage_approx: n must be >= 1");
    if (delta <= 0.0) throw std::invalid_argument("coverage_approx: delta must be > 0");
    if (r < 0.0) throw std::invalid_argument("coverage_approx: r must be >= 0");
    double eff_n = n;
    double eff_alpha = alpha;
    switch (family) {
        case ApproxFamily::Design1:
            if (alpha <= 0.0) throw std::invalid_argument("coverage_approx: Design 1 needs alpha > 0");
            break;
        case ApproxFamily::Design2a:
            eff_alpha = 0.0;
            break;
        case ApproxFamily::Design2b:
            eff_alpha = 0.0;
            eff_n = equivalent_m(d, n);  // throws for n >= 2^d
            break;
    }
    CoverageApprox out;
    out.family = family;
    out.variant = variant;
    bool clamped = false;
    auto survivor = [&](double s) {
        const double s2 = detail::norm2_surrogate(s, d);
        const double raw = detail::p_ball_raw(s2, d, delta, eff_alpha, r, variant);
        double p = raw;
        if (p < 0.0 || p > 1.0) {
            clamped = true;
            p = std::clamp(p, 0.0, 1.0);
        }
        return std::exp(-eff_n * p);
    };
    const QuadResult q = integrate_gaussian(survivor, tol);
    out.value = std::clamp(1.0 - q.value, 0.0, 1.0);
    out.quadrature_error = q.error;
    out.converged = q.converged;
    out.p_clamped = clamped;
    if (!q.converged && q.error > 1e-3)
        throw std::runtime_error("coverage_approx: quadrature failed (error estimate " +
                                 std::to_string(q.error) + ")");
    return out;
}

}  // namespace covq
