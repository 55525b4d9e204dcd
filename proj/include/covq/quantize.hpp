#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "covq/approx.hpp"
#include "covq/quadrature.hpp"

namespace covq {

struct QuantResult {
    double theta = 0.0;       // mean squared quantization error
    double normalized = 0.0;  // n^(2/d) * theta
    double quadrature_error = 0.0;
    bool converged = true;
    bool density_clamped = false;  // negative density excursions were clipped to 0
};

inline double normalized_quant(double n, int d, double theta) {
    if (n < 1.0 || d < 1) throw std::invalid_argument("normalized_quant: n and d must be >= 1");
    if (theta < 0.0) throw std::invalid_argument("normalized_quant: theta must be >= 0");
    return std::pow(n, 2.0 / static_cast<double>(d)) * theta;
}

// Distances from any point of the cube to the design are bounded by
// sqrt(d) * (1 + delta); integrating a little past that captures all mass.
inline double quant_r_max(int d, double delta) {
    return std::sqrt(static_cast<double>(d)) * (1.0 + delta) + 1.0;
}

namespace detail {

inline constexpr double kDensityTailCut = 40.0;

// Integrand over s of the nearest-distance density, refined variant.
// Shared by quant_density and quant_error. Where the Edgeworth-corrected
// single-ball probability leaves [0,1] the coverage integrand is clamped and
// locally constant in r, so the density contribution there is zero; gating
// on that also suppresses the 1/s'^2 blowup of the polynomial factors.
inline double quant_density_integrand(double s, double r, int d, double eff_n, double delta,
                                      double alpha) {
    const double dd = static_cast<double>(d);
    const double d2 = delta * delta;
    const double r2 = r * r;
    const double sp = norm2_surrogate(s, d);
    const double p = p_ball_raw(sp, d, delta, alpha, r, ApproxVariant::Refined);
    if (p <= 0.0 || p >= 1.0) return 0.0;
    const double survivor = std::exp(-eff_n * p);
    if (alpha == 0.0) {
        const double y = std::max(sp, kVarianceFloor);
        const double sq = std::sqrt(y);
        const double c = (r2 - sp - dd * d2) / (2.0 * delta * sq);
        if (std::abs(c) > kDensityTailCut) return 0.0;
        const double quartic = 2.0 * (sp - dd / 3.0) / std::sqrt(5.0) + dd / 5.0;
        const double c2 = c * c;
        const double bracket = 1.0 + (1.0 + 3.0 / dd) * quartic * (6.0 * c2 - c2 * c2 - 3.0) / (12.0 * y * y);
        return normal_pdf(c) * survivor / sq * bracket;
    }
    const double a1 = 2.0 * alpha + 1.0;
    const double a3 = 2.0 * alpha + 3.0;
    const double a5 = 2.0 * alpha + 5.0;
    const double kappa = dd * d2 * alpha / (a1 * a3);
    const double g = dd * d2 * (2.0 * alpha - 1.0) / (3.0 * a5 * a1);
    const double cda = 1.0 + 3.0 / (alpha * dd);
    const double sqa1 = std::sqrt(a1);
    const double y = std::max(sp + kappa, kVarianceFloor);
    const double sq = std::sqrt(y);
    const double c = sqa1 * (r2 - sp - dd * d2 / a1) / (2.0 * delta * sq);
    if (std::abs(c) > kDensityTailCut) return 0.0;
    const double brace = delta * (c * c * c - c) - sqa1 * (r2 - dd * d2 / a1 - sp) / sq;
    const double bracket = sqa1 / sq + cda * alpha * (sp + g) / (a3 * y * y) * brace;
    return normal_pdf(c) * survivor * bracket;
}

inline double resolve_quant_n(ApproxFamily family, int d, double n, double& alpha) {
    switch (family) {
        case ApproxFamily::Design1:
            if (alpha <= 0.0) throw std::invalid_argument("quantize: Design 1 needs alpha > 0");
            return n;
        case ApproxFamily::Design2a:
            alpha = 0.0;
            return n;
        case ApproxFamily::Design2b:
            alpha = 0.0;
            return equivalent_m(d, n);
    }
    throw std::invalid_argument("quantize: unknown family");
}

// The density integrand at radius r is nonzero only where |c_s| stays under
// the tail cut, an s'-window of width O(delta) around r^2. Integrating just
// that window (with enough initial panels) keeps the narrow band visible to
// the adaptive scheme; a cold pass over [-10, 10] can land every node on an
// exact zero and return 0.
inline QuadResult quant_inner_integral(double r, int d, double eff_n, double delta, double alpha,
                                       double tol) {
    const double dd = static_cast<double>(d);
    const double a1 = 2.0 * alpha + 1.0;
    const double kappa = dd * delta * delta * alpha / (a1 * (2.0 * alpha + 3.0));
    const double shift = dd * delta * delta / a1;
    const double spread = std::sqrt(4.0 * dd / 45.0);
    const double sp_max = dd / 3.0 + 10.0 * spread;
    const double window =
        (kDensityTailCut + 1.0) * 2.0 * delta * std::sqrt(sp_max + kappa) / std::sqrt(a1);
    const double s_lo = std::max((r * r - shift - window - dd / 3.0) / spread, -10.0);
    const double s_hi = std::min((r * r - shift + window - dd / 3.0) / spread, 10.0);
    if (s_lo >= s_hi) return {};
    auto weighted = [&](double s) {
        return quant_density_integrand(s, r, d, eff_n, delta, alpha) * normal_pdf(s);
    };
    return integrate(weighted, s_lo, s_hi, tol, 4000, 16);
}

// Radii outside this window make |c_s| exceed the tail cut for every s' the
// Gaussian weight can reach, so the density integrand is identically zero
// there. The window also sets the initial panel count: at small delta the
// density lives on an O(delta) band that a cold adaptive pass can miss.
struct DensitySupport {
    double lo = 0.0, hi = 0.0;
    int initial_segments = 32;
};

inline DensitySupport density_support(int d, double delta, double alpha) {
    const double dd = static_cast<double>(d);
    const double a1 = 2.0 * alpha + 1.0;
    const double kappa = dd * delta * delta * alpha / (a1 * (2.0 * alpha + 3.0));
    const double shift = dd * delta * delta / a1;
    const double spread = std::sqrt(4.0 * dd / 45.0);
    const double sp_min = std::max(dd / 3.0 - 10.0 * spread, 0.0);
    const double sp_max = dd / 3.0 + 10.0 * spread;
    const double window =
        (kDensityTailCut + 1.0) * 2.0 * delta * std::sqrt(sp_max + kappa) / std::sqrt(a1);
    DensitySupport support;
    support.lo = std::sqrt(std::max(sp_min + shift - window, 0.0));
    support.hi = std::sqrt(sp_max + shift + window);
    const double r_mid = std::sqrt(dd / 3.0 + shift);
    const double band =
        6.0 * delta * std::sqrt(dd / 3.0 + kappa) / (std::sqrt(a1) * std::max(r_mid, 0.5));
    const double panels = 3.0 * (support.hi - support.lo) / std::max(band, 1e-9);
    support.initial_segments = static_cast<int>(std::clamp(panels, 32.0, 1024.0));
    return support;
}

}  // namespace detail

// Density of the nearest-distance distribution, d/dr C_d(Z_n, r), from the
// refined coverage approximations. Small negative excursions (Edgeworth
// artifacts) are clipped to zero; `clamped` reports whether that happened.
inline double quant_density(ApproxFamily family, double r, int d, double n, double delta,
                            double alpha, double tol = 1e-10, bool* clamped = nullptr) {
    if (r < 0.0) throw std::invalid_argument("quant_density: r must be >= 0");
    if (d < 1 || n < 1.0 || delta <= 0.0)
        throw std::invalid_argument("quant_density: bad parameters");
    double eff_alpha = alpha;
    const double eff_n = detail::resolve_quant_n(family, d, n, eff_alpha);
    if (r == 0.0) return 0.0;
    const QuadResult q = detail::quant_inner_integral(r, d, eff_n, delta, eff_alpha, tol);
    if (!q.converged && q.error > 1e-5)
        throw std::runtime_error("quant_density: inner quadrature failed");
    const double value = eff_n * r / delta * q.value;
    if (value < 0.0) {
        if (clamped) *clamped = true;
        return 0.0;
    }
    return value;
}

// Mean squared quantization error theta = int r^2 f(r) dr for the selected
// family, evaluated by nested adaptive quadrature (s inside, r outside).
inline QuantResult quant_error(ApproxFamily family, int d, double n, double delta, double alpha,
                               double tol = 1e-7) {
    if (d < 1 || n < 1.0 || delta <= 0.0) throw std::invalid_argument("quant_error: bad parameters");
    double eff_alpha = alpha;
    const double eff_n = detail::resolve_quant_n(family, d, n, eff_alpha);
    QuantResult out;
    bool clamped = false;
    auto weighted = [&](double r) {
        if (r <= 0.0) return 0.0;
        const QuadResult inner = detail::quant_inner_integral(r, d, eff_n, delta, eff_alpha, 1e-10);
        double f = eff_n * r / delta * inner.value;
        if (f < 0.0) {
            clamped = true;
            f = 0.0;
        }
        return r * r * f;
    };
    const double rmax = quant_r_max(d, delta);
    const auto support = detail::density_support(d, delta, eff_alpha);
    const double lo = std::min(support.lo, rmax);
    const double hi = std::min(support.hi, rmax);
    const QuadResult q =
        integrate(weighted, lo, hi, tol, std::max(2000, 2 * support.initial_segments),
                  support.initial_segments);
    out.theta = std::max(q.value, 0.0);
    out.normalized = normalized_quant(n, d, out.theta);
    out.quadrature_error = q.error;
    out.converged = q.converged;
    out.density_clamped = clamped;
    if (!q.converged && q.error > 1e-4)
        throw std::runtime_error("quant_error: outer quadrature failed");
    return out;
}

// Same quantity through the tail identity theta = 2 int r (1 - C(r)) dr;
// kept as an independent route for consistency checks.
inline double quant_error_by_parts(ApproxFamily family, int d, double n, double delta,
                                   double alpha, double tol = 1e-7) {
    auto tail = [&](double r) {
        const CoverageApprox c =
            coverage_approx(family, d, n, delta, alpha, r, ApproxVariant::Refined, 1e-10);
        return 2.0 * r * (1.0 - c.value);
    };
    const QuadResult q = integrate(tail, 0.0, quant_r_max(d, delta), tol, 2000, 32);
    return q.value;
}

}  // namespace covq
