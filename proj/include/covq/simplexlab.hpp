#pragma once

#include <stdexcept>
#include <vector>

#include "covq/montecarlo.hpp"

namespace covq {

// Delta-sweep results on the simplex: one column of estimates per delta
// (shared samples within a column), |delta_grid| x |r_grid| for coverage or
// |delta_grid| x 1 for quantization.
struct SimplexSweep {
    Family design = Family::SimplexS1;
    int d = 1;
    long long n = 1;
    std::vector<double> delta_grid;
    std::vector<double> r_grid;  // empty for quantization sweeps
    std::vector<McEstimate> results;  // delta-major

    const McEstimate& at(std::size_t delta_idx, std::size_t r_idx = 0) const {
        const std::size_t cols = r_grid.empty() ? 1 : r_grid.size();
        return results[delta_idx * cols + r_idx];
    }
};

namespace detail {

inline void check_simplex_design(Family design) {
    if (design != Family::SimplexS1 && design != Family::SimplexS2)
        throw std::invalid_argument("simplexlab: design must be S1 or S2");
}

}  // namespace detail

inline SimplexSweep sweep_coverage(Family design, int d, long long n,
                                   const std::vector<double>& delta_grid,
                                   const std::vector<double>& r_grid, const McConfig& cfg) {
    detail::check_simplex_design(design);
    if (delta_grid.empty() || r_grid.empty())
        throw std::invalid_argument("sweep_coverage: grids must be nonempty");
    SimplexSweep sweep{design, d, n, delta_grid, r_grid, {}};
    for (double delta : delta_grid) {
        DesignSpec spec{design, d, n, delta};
        const CoverageCurve curve = mc_cdf_curve(spec, Domain::simplex(), r_grid, cfg);
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            McEstimate est;
            est.value = curve.values[i];
            est.std_error = curve.std_errors[i];
            est.samples_used = cfg.samples;
            sweep.results.push_back(est);
        }
    }
    return sweep;
}

inline SimplexSweep sweep_quantization(Family design, int d, long long n,
                                       const std::vector<double>& delta_grid,
                                       const McConfig& cfg) {
    detail::check_simplex_design(design);
    if (delta_grid.empty()) throw std::invalid_argument("sweep_quantization: empty delta grid");
    SimplexSweep sweep{design, d, n, delta_grid, {}, {}};
    for (double delta : delta_grid) {
        DesignSpec spec{design, d, n, delta};
        sweep.results.push_back(mc_quantization(spec, Domain::simplex(), cfg));
    }
    return sweep;
}

}  // namespace covq
