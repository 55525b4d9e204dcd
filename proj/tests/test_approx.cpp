#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "covq/approx.hpp"
#include "covq/designs.hpp"
#include "covq/moments.hpp"
#include "covq/parallel.hpp"

using namespace covq;

TEST(CoverageProduct, BasicIdentities) {
    EXPECT_DOUBLE_EQ(coverage_exact_product(0.37, 1), 0.37);
    EXPECT_DOUBLE_EQ(coverage_exact_product(0.0, 50), 0.0);
    EXPECT_DOUBLE_EQ(coverage_exact_product(1.0, 50), 1.0);
    EXPECT_NEAR(coverage_exact_product(0.01, 100), 0.633968, 5e-7);
}

TEST(CoverageProduct, ExpBoundNeverExceedsProduct) {
    for (double p : {1e-6, 1e-4, 0.01, 0.1, 0.5, 0.9})
        for (long long n : {1LL, 2LL, 10LL, 100LL, 10000LL}) {
            const double exact = coverage_exact_product(p, n);
            const double exp_form = -std::expm1(-static_cast<double>(n) * p);
            EXPECT_LE(exp_form, exact + 1e-15) << "p=" << p << " n=" << n;
        }
}

TEST(EquivalentM, Values) {
    for (int d : {3, 10, 20, 50}) EXPECT_DOUBLE_EQ(equivalent_m(d, 1.0), 1.0);
    EXPECT_NEAR(equivalent_m(10, 512), std::log(2.0) / std::log(1024.0 / 1023.0), 1e-9);
    EXPECT_NEAR(equivalent_m(10, 512), 709.4, 0.05);
    EXPECT_GE(equivalent_m(20, 700), 700.0);
    EXPECT_THROW(equivalent_m(10, 1024), std::invalid_argument);
    EXPECT_THROW(equivalent_m(10, 1500), std::invalid_argument);
}

TEST(PBall, LargeRadiusSaturates) {
    EXPECT_DOUBLE_EQ(p_ball(3.0, 10, 0.5, 0.5, 100.0, ApproxVariant::Refined), 1.0);
    EXPECT_DOUBLE_EQ(p_ball(3.0, 10, 0.5, 0.0, 100.0, ApproxVariant::Normal), 1.0);
    EXPECT_NEAR(p_ball(3.0, 10, 0.5, 0.5, 0.0, ApproxVariant::Refined), 0.0, 1e-12);
}

TEST(PBall, RefinedEqualsNormalWhereCorrectionVanishes) {
    // alpha > 0: the correction carries (1 - t^2) phi(t); solve r so t = 1.
    const double normU2 = 2.5;
    const int d = 10;
    const double delta = 0.5, alpha = 0.7;
    const auto agg = aggregate(Point(d, std::sqrt(normU2 / d)), delta, alpha);
    const double r = std::sqrt(agg.mu + std::sqrt(agg.sigma2));  // t = +1
    EXPECT_NEAR(p_ball(normU2, d, delta, alpha, r, ApproxVariant::Refined),
                p_ball(normU2, d, delta, alpha, r, ApproxVariant::Normal), 1e-14);

    // alpha = 0: correction carries (t^3 - 3t) phi(t); t = sqrt(3) kills it.
    const auto agg0 = aggregate(Point(d, std::sqrt(normU2 / d)), delta, 0.0);
    const double r0 = std::sqrt(agg0.mu + std::sqrt(3.0 * agg0.sigma2));
    EXPECT_NEAR(p_ball(normU2, d, delta, 0.0, r0, ApproxVariant::Refined),
                p_ball(normU2, d, delta, 0.0, r0, ApproxVariant::Normal), 1e-14);
}

TEST(PBall, MatchesMomentBasedNormalApproximation) {
    // Normal variant must equal Phi((r^2 - mu) / sigma) with Lemma-1 moments.
    const Point U = {0.5, -0.2, 0.8, 0.1, -0.6, 0.3, 0.9, -0.4};
    double normU2 = 0.0;
    for (double u : U) normU2 += u * u;
    for (double alpha : {0.0, 0.4, 1.0}) {
        const auto agg = aggregate(U, 0.45, alpha);
        for (double r : {0.8, 1.2, 1.6}) {
            const double t = (r * r - agg.mu) / std::sqrt(agg.sigma2);
            EXPECT_NEAR(p_ball(normU2, 8, 0.45, alpha, r, ApproxVariant::Normal), normal_cdf(t),
                        1e-12);
        }
    }
}

TEST(CoverageApprox, DegenerateRadii) {
    const auto zero = coverage_approx(ApproxFamily::Design1, 10, 128, 0.5, 0.5, 0.0,
                                      ApproxVariant::Refined);
    EXPECT_LT(zero.value, 1e-6);
    const double diameter = std::sqrt(10.0) * 1.5;
    const auto one = coverage_approx(ApproxFamily::Design1, 10, 128, 0.5, 0.5, diameter + 1.0,
                                     ApproxVariant::Refined);
    EXPECT_GT(one.value, 1.0 - 1e-9);
}

TEST(CoverageApprox, Design2bIsDesign2aAtEquivalentM) {
    const int d = 12;
    const double n = 900;
    const double m = equivalent_m(d, n);
    for (double r : {1.0, 1.3, 1.6}) {
        const auto b = coverage_approx(ApproxFamily::Design2b, d, n, 0.4, 0.0, r,
                                       ApproxVariant::Refined);
        const auto a = coverage_approx(ApproxFamily::Design2a, d, m, 0.4, 0.0, r,
                                       ApproxVariant::Refined);
        EXPECT_EQ(b.value, a.value);  // bit-equal by construction
    }
    EXPECT_THROW(coverage_approx(ApproxFamily::Design2b, 10, 1024, 0.5, 0.0, 1.2,
                                 ApproxVariant::Refined),
                 std::invalid_argument);
}

TEST(CoverageApprox, AlphaContinuityToDesign2a) {
    for (double r : {1.1, 1.3}) {
        const auto d1 = coverage_approx(ApproxFamily::Design1, 10, 512, 0.5, 1e-4, r,
                                        ApproxVariant::Normal);
        const auto d2a = coverage_approx(ApproxFamily::Design2a, 10, 512, 0.5, 0.0, r,
                                         ApproxVariant::Normal);
        EXPECT_NEAR(d1.value, d2a.value, 1e-3);
    }
}

TEST(CoverageApprox, MonotoneInRadiusAndCount) {
    const double tol = 1e-8;
    double prev = -1.0;
    for (double r = 0.6; r <= 2.2; r += 0.1) {
        const auto c = coverage_approx(ApproxFamily::Design2a, 10, 512, 0.5, 0.0, r,
                                       ApproxVariant::Refined, tol);
        EXPECT_GE(c.value, prev - 2 * tol) << "r=" << r;
        prev = c.value;
    }
    prev = -1.0;
    for (double n : {64.0, 128.0, 256.0, 512.0, 1024.0, 4096.0}) {
        const auto c = coverage_approx(ApproxFamily::Design1, 10, n, 0.6, 0.5, 1.2,
                                       ApproxVariant::Refined, tol);
        EXPECT_GE(c.value, prev - 2 * tol) << "n=" << n;
        prev = c.value;
    }
}

TEST(CoverageApprox, TableAnchors) {
    // 0.9-coverage settings from the published benchmark tables (MC-derived
    // entries, so the analytic value should land within a few hundredths).
    EXPECT_NEAR(coverage_approx(ApproxFamily::Design2a, 10, 512, 0.50, 0.0, 1.228,
                                ApproxVariant::Refined)
                    .value,
                0.9, 0.03);
    EXPECT_NEAR(coverage_approx(ApproxFamily::Design1, 20, 128, 0.48, 0.5, 2.455,
                                ApproxVariant::Refined)
                    .value,
                0.9, 0.03);
}

TEST(PBall, RefinedTracksMonteCarloInSmallProbabilityRegime) {
    // d=10, delta=1/2, U=(1/2,...,1/2), alpha=0.5: brute-force single-ball
    // probability against the refined approximation in the small-p range
    const int d = 10;
    const double delta = 0.5, alpha = 0.5, r = 1.035;
    const double u = 0.5;
    const long long N = 10000000;
    const std::size_t chunk = 100000;
    std::vector<long long> hits((N + chunk - 1) / chunk, 0);
    parallel_chunks(static_cast<std::size_t>(N), chunk, [&](std::size_t ci, std::size_t b, std::size_t e) {
        long long h = 0;
        for (std::size_t i = b; i < e; ++i) {
            CounterRng rng(99, 0xB411, i);
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                const double z = sample_beta_scalar(alpha, delta, rng);
                s += (u - z) * (u - z);
            }
            h += (s <= r * r);
        }
        hits[ci] = h;
    });
    long long total = 0;
    for (long long h : hits) total += h;
    const double truth = static_cast<double>(total) / static_cast<double>(N);
    const double se = std::sqrt(truth * (1.0 - truth) / static_cast<double>(N));
    const double refined = p_ball(d * u * u, d, delta, alpha, r, ApproxVariant::Refined);
    EXPECT_LT(truth, 0.02);  // probe sits in the small-probability regime
    EXPECT_NEAR(refined, truth, 2e-3 + 3.0 * se);
}

TEST(CoverageApprox, RejectsBadArguments) {
    EXPECT_THROW(coverage_approx(ApproxFamily::Design1, 10, 128, 0.5, 0.0, 1.0,
                                 ApproxVariant::Refined),
                 std::invalid_argument);
    EXPECT_THROW(coverage_approx(ApproxFamily::Design2a, 0, 128, 0.5, 0.0, 1.0,
                                 ApproxVariant::Refined),
                 std::invalid_argument);
    EXPECT_THROW(p_ball(-1.0, 10, 0.5, 0.5, 1.0, ApproxVariant::Normal), std::invalid_argument);
}
