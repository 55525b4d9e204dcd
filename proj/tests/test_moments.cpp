#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "covq/moments.hpp"
#include "oracle.hpp"

using namespace covq;

namespace {

double rel_diff(double a, double b) {
    // floor keeps exactly-zero moments comparable against oracle roundoff
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

}  // namespace

TEST(Moments, ClosedFormsMatchQuadratureOracle) {
    const auto start = std::chrono::steady_clock::now();
    const double us[] = {0.0, 0.3, 1.0};
    const double deltas[] = {0.25, 0.5, 1.0};
    const double alphas[] = {0.1, 0.5, 1.0, 1.5};
    for (double u : us)
        for (double delta : deltas)
            for (double alpha : alphas) {
                const EtaMoments closed = eta_moments(u, delta, alpha);
                const oracles::EtaOracle oracle = oracles::eta_oracle(u, delta, alpha);
                EXPECT_LT(rel_diff(closed.mean, oracle.mean), 1e-8)
                    << "mean u=" << u << " delta=" << delta << " alpha=" << alpha;
                EXPECT_LT(rel_diff(closed.variance, oracle.variance), 1e-8)
                    << "variance u=" << u << " delta=" << delta << " alpha=" << alpha;
                EXPECT_LT(rel_diff(closed.third_central, oracle.third), 1e-8)
                    << "third u=" << u << " delta=" << delta << " alpha=" << alpha;
            }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 10.0);
}

TEST(Moments, TwoPointLawAtAlphaZero) {
    const auto m = eta_moments(1.0, 0.5, 0.0);
    EXPECT_DOUBLE_EQ(m.mean, 1.25);
    EXPECT_DOUBLE_EQ(m.variance, 1.0);
    EXPECT_DOUBLE_EQ(m.third_central, 0.0);
}

TEST(Moments, KnownValuesAtUniform) {
    const auto m = eta_moments(0.0, 1.0, 1.0);
    EXPECT_NEAR(m.mean, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(m.variance, 4.0 / 45.0, 1e-15);
    EXPECT_NEAR(m.third_central, 16.0 / 945.0, 1e-15);
}

TEST(Moments, MeanOffsetIsDeltaSqOver2AlphaPlus1) {
    for (double u : {0.0, 0.4, 1.3})
        for (double delta : {0.3, 0.9})
            for (double alpha : {0.2, 1.0, 2.5})
                EXPECT_NEAR(eta_moments(u, delta, alpha).mean - u * u,
                            delta * delta / (2.0 * alpha + 1.0), 1e-14);
}

TEST(Moments, ContinuityAtAlphaZero) {
    for (double u : {0.2, 0.8})
        for (double delta : {0.4, 1.0}) {
            const auto limit = eta_moments(u, delta, 0.0);
            const auto near0 = eta_moments(u, delta, 1e-6);
            EXPECT_LT(rel_diff(limit.mean, near0.mean), 1e-4);
            EXPECT_LT(rel_diff(limit.variance, near0.variance), 1e-4);
            EXPECT_LT(std::abs(limit.third_central - near0.third_central), 1e-4);
        }
}

TEST(Moments, ThirdMomentSignFollows2AlphaMinus1) {
    EXPECT_GT(eta_moments(0.0, 1.0, 1.0).third_central, 0.0);
    EXPECT_LT(eta_moments(0.0, 1.0, 0.3).third_central, 0.0);
    EXPECT_NEAR(eta_moments(0.0, 1.0, 0.5).third_central, 0.0, 1e-15);
}

TEST(Aggregate, SumsCoordinateMoments) {
    const Point U = {0.1, -0.7, 0.4, 1.0};
    for (double alpha : {0.0, 0.5, 1.2}) {
        const auto agg = aggregate(U, 0.6, alpha);
        double mu = 0.0, var = 0.0, third = 0.0;
        for (double u : U) {
            const auto m = eta_moments(u, 0.6, alpha);
            mu += m.mean;
            var += m.variance;
            third += m.third_central;
        }
        EXPECT_NEAR(agg.mu, mu, 1e-13);
        EXPECT_NEAR(agg.sigma2, var, 1e-13);
        EXPECT_NEAR(agg.mu3, third, 1e-13);
    }
}

TEST(Aggregate, FourthCumulantAtAlphaZero) {
    const Point zero(7, 0.0);
    const auto at_zero = aggregate(zero, 0.5, 0.0);
    EXPECT_DOUBLE_EQ(at_zero.mu, 7 * 0.25);
    EXPECT_DOUBLE_EQ(at_zero.sigma2, 0.0);
    EXPECT_DOUBLE_EQ(at_zero.kappa4, 0.0);

    const Point ones(6, 1.0);
    const double delta = 0.7;
    const auto agg = aggregate(ones, delta, 0.0);
    EXPECT_NEAR(agg.kappa4, -32.0 * std::pow(delta, 4) * 6.0, 1e-12);
    EXPECT_LE(agg.kappa4, 0.0);

    // moment identity on one coordinate: mu4 - 3 mu2^2 = -32 delta^4 u^4
    const double u = 0.9;
    const double mu2 = 4.0 * delta * delta * u * u;           // (2 delta u)^2
    const double mu4 = std::pow(2.0 * delta * u, 4);          // (2 delta u)^4
    EXPECT_NEAR(mu4 - 3.0 * mu2 * mu2, -32.0 * std::pow(delta, 4) * std::pow(u, 4), 1e-12);
}

TEST(Aggregate, MuDominatesNormSq) {
    const Point U = {0.3, -1.0, 0.6};
    double norm2 = 0.0;
    for (double u : U) norm2 += u * u;
    for (double alpha : {0.0, 0.7, 2.0})
        EXPECT_GE(aggregate(U, 0.8, alpha).mu, norm2);
}

TEST(Moments, RejectsBadArguments) {
    EXPECT_THROW(eta_moments(0.0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(eta_moments(0.0, -1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(eta_moments(0.0, 1.0, -0.1), std::invalid_argument);
}
