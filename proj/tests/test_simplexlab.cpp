#include <gtest/gtest.h>

#include <cmath>

#include "covq/simplexlab.hpp"

using namespace covq;

namespace {

McConfig quick() {
    McConfig cfg;
    cfg.samples = 40000;
    cfg.reps = 20;
    cfg.seed = 2;
    return cfg;
}

}  // namespace

TEST(SimplexSweep, CoverageShapeAndMonotonicity) {
    const std::vector<double> deltas = {0.4, 0.7, 1.0};
    const std::vector<double> radii = {0.11, 0.13, 0.15, 0.17};
    const auto sweep = sweep_coverage(Family::SimplexS1, 5, 128, deltas, radii, quick());
    ASSERT_EQ(sweep.results.size(), deltas.size() * radii.size());
    for (std::size_t di = 0; di < deltas.size(); ++di)
        for (std::size_t ri = 1; ri < radii.size(); ++ri)
            EXPECT_GE(sweep.at(di, ri).value, sweep.at(di, ri - 1).value);
}

TEST(SimplexSweep, S1AndS2CoincideAtDeltaOne) {
    const std::vector<double> deltas = {1.0};
    const std::vector<double> radii = {0.12, 0.16};
    const auto s1 = sweep_coverage(Family::SimplexS1, 5, 64, deltas, radii, quick());
    const auto s2 = sweep_coverage(Family::SimplexS2, 5, 64, deltas, radii, quick());
    for (std::size_t ri = 0; ri < radii.size(); ++ri)
        EXPECT_NEAR(s1.at(0, ri).value, s2.at(0, ri).value,
                    3.0 * (s1.at(0, ri).std_error + s2.at(0, ri).std_error) + 1e-3);
}

TEST(SimplexSweep, SampledPointsRespectDomain) {
    for (Family design : {Family::SimplexS1, Family::SimplexS2}) {
        DesignSpec spec;
        spec.family = design;
        spec.d = 7;
        spec.n = 500;
        spec.delta = 0.6;
        spec.seed = 5;
        const PointSet pts = generate(spec);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double sum = 0.0;
            for (double v : pts[i]) {
                EXPECT_GE(v, -1e-12);
                sum += v;
            }
            EXPECT_LE(sum, 1.0 + 1e-12);
        }
    }
}

TEST(SimplexSweep, OnePointQuantizerAtCentroid) {
    // the delta -> 0 limit of S2 concentrates at the centroid; E theta equals
    // the mean squared distance from a uniform simplex point to the centroid
    const int d = 4;
    const double centroid = 1.0 / (d + 1);
    const PointSet one(d, std::vector<double>(static_cast<std::size_t>(d), centroid));
    McConfig cfg = quick();
    cfg.samples = 300000;
    const auto direct = mc_quantization(one, Domain::simplex(), cfg);

    // independent cross-check: E||Y - c||^2 from spacings moments
    // E Y_i = 1/(d+1), E Y_i^2 = 2/((d+1)(d+2)) for uniform simplex spacings
    const double ey2 = 2.0 / ((d + 1.0) * (d + 2.0));
    const double expected = d * (ey2 - centroid * centroid);
    EXPECT_NEAR(direct.value, expected, 5.0 * direct.std_error);
}

TEST(SimplexSweep, QuantizationMonotoneInN) {
    const std::vector<double> deltas = {0.8};
    const auto cfg = quick();
    const auto small = sweep_quantization(Family::SimplexS2, 5, 64, deltas, cfg);
    const auto large = sweep_quantization(Family::SimplexS2, 5, 128, deltas, cfg);
    EXPECT_LE(large.at(0).value,
              small.at(0).value + 2.0 * (small.at(0).std_error + large.at(0).std_error));
}

TEST(SimplexSweep, RejectsNonSimplexDesign) {
    EXPECT_THROW(sweep_quantization(Family::Beta, 5, 64, {0.5}, quick()), std::invalid_argument);
    EXPECT_THROW(sweep_coverage(Family::SimplexS1, 5, 64, {}, {0.1}, quick()),
                 std::invalid_argument);
}
