#include <gtest/gtest.h>

#include <cmath>

#include "covq/quantize.hpp"

using namespace covq;

TEST(NormalizedQuant, Identities) {
    EXPECT_DOUBLE_EQ(normalized_quant(1, 7, 0.42), 0.42);
    EXPECT_DOUBLE_EQ(normalized_quant(1024, 10, 0.85), 4.0 * 0.85);
}

TEST(QuantDensity, ZeroAtOrigin) {
    EXPECT_DOUBLE_EQ(quant_density(ApproxFamily::Design2a, 0.0, 10, 512, 0.5, 0.0), 0.0);
}

TEST(QuantDensity, MatchesCoverageDerivative) {
    // central difference of the refined coverage approximation
    const double h = 3e-4;
    struct Case {
        ApproxFamily family;
        int d;
        double n, delta, alpha;
        double r;
    };
    const Case cases[] = {
        {ApproxFamily::Design2a, 10, 512, 0.48, 0.0, 1.0},
        {ApproxFamily::Design2a, 10, 512, 0.48, 0.0, 1.25},
        {ApproxFamily::Design1, 20, 500, 0.60, 1.0, 2.35},
        {ApproxFamily::Design1, 10, 128, 0.65, 0.5, 1.45},
        {ApproxFamily::Design2b, 10, 512, 0.48, 0.0, 1.1},
    };
    for (const auto& c : cases) {
        const double f = quant_density(c.family, c.r, c.d, c.n, c.delta, c.alpha);
        const double c_plus =
            coverage_approx(c.family, c.d, c.n, c.delta, c.alpha, c.r + h, ApproxVariant::Refined, 1e-11)
                .value;
        const double c_minus =
            coverage_approx(c.family, c.d, c.n, c.delta, c.alpha, c.r - h, ApproxVariant::Refined, 1e-11)
                .value;
        const double fd = (c_plus - c_minus) / (2.0 * h);
        ASSERT_GT(fd, 0.05);  // probe in the bulk where the density is substantial
        EXPECT_LT(std::abs(f - fd) / fd, 1e-3)
            << "family=" << static_cast<int>(c.family) << " r=" << c.r;
    }
}

TEST(QuantDensity, IntegratesToOne) {
    // d=20, alpha=1, n=500 at a sensible delta: total mass within 1e-3
    const auto mass = integrate(
        [&](double r) { return quant_density(ApproxFamily::Design1, r, 20, 500, 0.64, 1.0); }, 0.0,
        quant_r_max(20, 0.64), 1e-6, 2000, 32);
    EXPECT_NEAR(mass.value, 1.0, 1e-3);
}

TEST(QuantError, TwoRoutesAgree) {
    struct Case {
        ApproxFamily family;
        int d;
        double n, delta, alpha;
    };
    const Case cases[] = {
        {ApproxFamily::Design2a, 10, 512, 0.48, 0.0},
        {ApproxFamily::Design1, 20, 500, 0.60, 1.0},
        {ApproxFamily::Design2b, 10, 128, 0.44, 0.0},
    };
    for (const auto& c : cases) {
        const QuantResult direct = quant_error(c.family, c.d, c.n, c.delta, c.alpha);
        const double parts = quant_error_by_parts(c.family, c.d, c.n, c.delta, c.alpha);
        EXPECT_NEAR(direct.theta, parts, 2e-3 * parts)
            << "family=" << static_cast<int>(c.family);
        EXPECT_DOUBLE_EQ(direct.normalized, normalized_quant(c.n, c.d, direct.theta));
    }
}

TEST(QuantError, DecreasesWithMorePoints) {
    double prev = 1e9;
    for (double n : {128.0, 512.0, 2048.0, 8192.0}) {
        const double theta = quant_error(ApproxFamily::Design2a, 10, n, 0.5, 0.0).theta;
        EXPECT_LT(theta, prev);
        prev = theta;
    }
}

TEST(QuantError, DeltaEffectHasInteriorMinimum) {
    // d=20, n=500, alpha=1 on a 0.02 grid: the minimum is strictly inside (0,1)
    double best = 1e9, best_delta = 0.0;
    double at_0_02 = 0.0, at_1 = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double delta = 0.02 * i;
        const double theta = quant_error(ApproxFamily::Design1, 20, 500, delta, 1.0).theta;
        if (i == 1) at_0_02 = theta;
        if (i == 50) at_1 = theta;
        if (theta < best) {
            best = theta;
            best_delta = delta;
        }
    }
    EXPECT_GT(best_delta, 0.02);
    EXPECT_LT(best_delta, 1.0);
    EXPECT_LT(best, at_0_02);
    EXPECT_LT(best, at_1);
}

TEST(QuantError, RejectsBadArguments) {
    EXPECT_THROW(quant_error(ApproxFamily::Design1, 10, 128, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(quant_error(ApproxFamily::Design2a, 10, 0.5, 0.5, 0.0), std::invalid_argument);
    EXPECT_THROW(quant_density(ApproxFamily::Design2a, -1.0, 10, 128, 0.5, 0.0),
                 std::invalid_argument);
}
