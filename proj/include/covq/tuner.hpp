#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "covq/approx.hpp"
#include "covq/montecarlo.hpp"
#include "covq/quantize.hpp"

namespace covq {

enum class TuneMethod { Approx, MonteCarlo };

struct TuneResult {
    double delta_star = 0.0;
    double objective_star = 0.0;  // r* or n^(2/d) theta*
    std::vector<std::pair<double, double>> trace;  // (delta, objective), grid order
    TuneMethod method = TuneMethod::MonteCarlo;
};

// 0.02-step grid on [0.02, 1.00], the resolution implied by the two-decimal
// bracketed deltas we compare against. Ties break toward smaller delta.
inline std::vector<double> default_delta_grid(double step = 0.02, double lo = 0.02,
                                              double hi = 1.0) {
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 1e-12) break;
        grid.push_back(std::min(v, hi));
    }
    return grid;
}

namespace detail {

// Sampling without replacement of every vertex is the full factorial on the
// same vertices; the swap makes those cells deterministic (one replication).
inline DesignSpec effective_spec(DesignSpec spec) {
    if (spec.family == Family::VertexWithout && spec.d <= 22 && spec.n == (1LL << spec.d)) {
        spec.family = Family::Factorial;
        spec.k = 0;
    }
    return spec;
}

inline ApproxFamily approx_family_of(const DesignSpec& spec) {
    switch (spec.family) {
        case Family::Beta: return ApproxFamily::Design1;
        case Family::VertexWith: return ApproxFamily::Design2a;
        case Family::VertexWithout: return ApproxFamily::Design2b;
        default:
            throw std::invalid_argument(
                "tuner: analytic approximations exist for Designs 1/2a/2b only");
    }
}

inline double search_ceiling(const DesignSpec& spec) {
    return std::sqrt(static_cast<double>(spec.d)) * (1.0 + spec.delta) + 1.0;
}

// Bisection for the smallest r with coverage(r) >= target; valid because
// every coverage functional used here is non-decreasing in r.
template <typename Coverage>
double bisect_radius(const Coverage& coverage, double lo, double hi, double target,
                     double bracket) {
    while (hi - lo > bracket) {
        const double mid = 0.5 * (lo + hi);
        if (coverage(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Smallest radius achieving the target coverage for one design. The Monte
// Carlo path freezes one set of nearest-distance samples (common random
// numbers) and bisects the empirical c.d.f.; the approx path bisects the
// refined analytic coverage.
inline double radius_for_coverage(const DesignSpec& spec, const Domain& dom, double target,
                                  const McConfig& cfg, TuneMethod method) {
    if (target <= 0.0 || target >= 1.0)
        throw std::invalid_argument("radius_for_coverage: target must be in (0,1)");
    const double hi = detail::search_ceiling(spec);
    if (method == TuneMethod::Approx) {
        const ApproxFamily fam = detail::approx_family_of(spec);
        auto coverage = [&](double r) {
            return coverage_approx(fam, spec.d, static_cast<double>(spec.n), spec.delta,
                                   spec.alpha, r, ApproxVariant::Refined)
                .value;
        };
        return detail::bisect_radius(coverage, 0.0, hi, target, 1e-4);
    }
    auto sq = mc_min_sq_samples(detail::effective_spec(spec), dom, cfg);
    std::sort(sq.begin(), sq.end());
    const double total = static_cast<double>(sq.size());
    auto coverage = [&](double r) {
        const double r2 = r * r;
        return static_cast<double>(std::upper_bound(sq.begin(), sq.end(), r2) - sq.begin()) / total;
    };
    return detail::bisect_radius(coverage, 0.0, hi, target, 1e-3);
}

// Minimizes radius_for_coverage over the delta grid with common random
// numbers across grid points (identical seeds; design draws couple linearly
// with delta).
inline TuneResult optimal_delta_for_coverage(DesignSpec spec, const Domain& dom, double target,
                                             const std::vector<double>& delta_grid,
                                             const McConfig& cfg, TuneMethod method) {
    if (delta_grid.empty()) throw std::invalid_argument("optimal_delta_for_coverage: empty grid");
    TuneResult result;
    result.method = method;
    for (double delta : delta_grid) {
        spec.delta = delta;
        const double r = radius_for_coverage(spec, dom, target, cfg, method);
        result.trace.emplace_back(delta, r);
        if (result.trace.size() == 1 || r < result.objective_star) {
            result.objective_star = r;
            result.delta_star = delta;
        }
    }
    return result;
}

// Normalized quantization error n^(2/d) * theta at one delta.
inline double normalized_quant_objective(const DesignSpec& spec, const Domain& dom,
                                         const McConfig& cfg, TuneMethod method) {
    const double n = static_cast<double>(spec.n);
    if (method == TuneMethod::Approx) {
        const ApproxFamily fam = detail::approx_family_of(spec);
        return quant_error(fam, spec.d, n, spec.delta, spec.alpha).normalized;
    }
    const McEstimate theta = mc_quantization(detail::effective_spec(spec), dom, cfg);
    return normalized_quant(n, spec.d, theta.value);
}

inline TuneResult optimal_delta_for_quantization(DesignSpec spec, const Domain& dom,
                                                 const std::vector<double>& delta_grid,
                                                 const McConfig& cfg, TuneMethod method) {
    if (delta_grid.empty())
        throw std::invalid_argument("optimal_delta_for_quantization: empty grid");
    TuneResult result;
    result.method = method;
    for (double delta : delta_grid) {
        spec.delta = delta;
        const double obj = normalized_quant_objective(spec, dom, cfg, method);
        result.trace.emplace_back(delta, obj);
        if (result.trace.size() == 1 || obj < result.objective_star) {
            result.objective_star = obj;
            result.delta_star = delta;
        }
    }
    return result;
}

}  // namespace covq
