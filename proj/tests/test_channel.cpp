#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "paoi_jam/channel.hpp"

namespace {

using namespace paoi_jam;

TEST(SnrCdf, MatchesMonteCarloAtUnitParameters) {
    // Frozen from the exponential-fading oracle below: 1 - e^-1.
    EXPECT_NEAR(snr_cdf(1.0, 1.0, 1.0, 1.0), 0.632121, 1e-6);
    const auto mc = oracle::outage_mc(1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1'000'000, 11);
    EXPECT_TRUE(mc.agrees(snr_cdf(1.0, 1.0, 1.0, 1.0))) << mc.p;
}

TEST(SnrCdf, HigherPowerLowersOutage) {
    EXPECT_NEAR(snr_cdf(1.0, 1.0, 10.0, 1.0), 0.095163, 1e-6);
    const auto mc = oracle::outage_mc(1.0, 1.0, 1.0, 10.0, 0.0, 1.0, 0.0, 1'000'000, 12);
    EXPECT_TRUE(mc.agrees(snr_cdf(1.0, 1.0, 10.0, 1.0))) << mc.p;
}

TEST(SnrCdf, ZeroAtOrigin) { EXPECT_EQ(snr_cdf(0.0, 2.5, 3.0, 0.7), 0.0); }

TEST(SnrCdf, RejectsNonPositiveParameters) {
    EXPECT_THROW(snr_cdf(1.0, 0.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(snr_cdf(1.0, 1.0, -1.0, 1.0), DomainError);
    EXPECT_THROW(snr_cdf(1.0, 1.0, 1.0, 0.0), DomainError);
    EXPECT_THROW(snr_cdf(-1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(SinrCdf, MatchesMonteCarloWithUnitGains) {
    // 1 - (10/11) e^-0.1
    EXPECT_NEAR(sinr_cdf(1.0, 10.0, 1.0, 1.0, 1.0, 1.0), 0.177421, 1e-6);
    const auto mc = oracle::outage_mc(1.0, 1.0, 1.0, 10.0, 1.0, 1.0, 1.0, 1'000'000, 13);
    EXPECT_TRUE(mc.agrees(sinr_cdf(1.0, 10.0, 1.0, 1.0, 1.0, 1.0))) << mc.p;
}

TEST(SinrCdf, NoInterferenceLimitIsSnrCdf) {
    EXPECT_NEAR(sinr_cdf(1.0, 10.0, 0.0, 1.0, 1.0, 1.0), 0.095163, 1e-6);
    EXPECT_EQ(sinr_cdf(0.0, 10.0, 3.0, 1.0, 1.0, 1.0), 0.0);
    EXPECT_THROW(sinr_cdf(1.0, 0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST(SinrCdf, PropertiesOverRandomParameters) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(0.05, 20.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double p_t = pos(rng), p_j = pos(rng), h1 = pos(rng), h3 = pos(rng), n = pos(rng);
        double prev_snr = 0.0, prev_sinr = 0.0;
        for (double y = 0.0; y <= 50.0; y += 0.5) {
            const double a = snr_cdf(y, h1, p_t, n);
            const double b = sinr_cdf(y, p_t, p_j, h1, h3, n);
            ASSERT_GE(a, prev_snr);
            ASSERT_GE(b, prev_sinr);
            ASSERT_GE(a, 0.0);
            ASSERT_LE(b, 1.0);
            ASSERT_NEAR(sinr_cdf(y, p_t, 0.0, h1, h3, n), a, 1e-12);
            ASSERT_GE(b, a - 1e-15);
            if (y > 0.0) {
                ASSERT_GE(sinr_cdf(y, p_t, 2.0 * p_j, h1, h3, n), b);
            }
            prev_snr = a;
            prev_sinr = b;
        }
    }
}

TEST(SinrCdf, UnitGainsReproduceTheUnnormalizedForm) {
    // With h1 = h3 = 1: 1 - P_T / (P_T + y P_J) exp(-sigma^2 y / P_T)
    for (double p_t : {0.5, 3.0, 100.0}) {
        for (double p_j : {0.1, 1.0, 7.0}) {
            for (double y : {0.01, 1.0, 5.0}) {
                const double printed = 1.0 - p_t / (p_t + y * p_j) * std::exp(-1.3 * y / p_t);
                EXPECT_NEAR(sinr_cdf(y, p_t, p_j, 1.0, 1.0, 1.3), printed, 1e-12);
            }
        }
    }
}

ChannelConfig unit_channel() {
    return ChannelConfig::from_gain_ratio(1.0, 1.0, 1.0, 1.0, {1.0, 1.0, 1.0, 1.0}, 1.0);
}

TEST(OutageProbability, ConditioningCollapses) {
    const auto c = unit_channel();
    const double clear = snr_cdf(1.0, 1.0, 10.0, 1.0);
    EXPECT_DOUBLE_EQ(outage_probability(c, 10.0, 1.0, 0.0), clear);
    EXPECT_NEAR(outage_probability(c, 10.0, 0.0, 1.0), clear, 1e-15);
    EXPECT_NEAR(outage_probability(c, 10.0, 1.0, 0.5), 0.136292, 1e-6);
}

TEST(OutageProbability, JammingNeverHelps) {
    const auto c = ChannelConfig::from_gain_ratio(1.0, 0.5, 2.0, 1.0, {1, 1, 1, 1}, 2.0);
    double prev = 0.0;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        const double v = outage_probability(c, 8.0, 3.0, p);
        EXPECT_GE(v, prev);
        EXPECT_LE(v, 1.0);
        prev = v;
    }
    EXPECT_THROW(outage_probability(c, 8.0, 3.0, 1.2), DomainError);
}

TEST(ChannelConfig, ValidatesInvariants) {
    EXPECT_THROW(ChannelConfig::from_gain_ratio(1.0, 0.0, 1, 1, {1, 1, 1, 1}, 1), ValidationError);
    EXPECT_THROW(ChannelConfig::from_gain_ratio(1.0, 1.5, 1, 1, {1, 1, 1, 1}, 1), ValidationError);
    EXPECT_THROW(ChannelConfig::from_gain_ratio(1.0, 1.0, 1, 1, {1, 0, 1, 1}, 1), ValidationError);
    EXPECT_THROW(ChannelConfig::from_gain_ratio(1.0, 1.0, 1, 1, {1, 1, 1, 1}, 0), ValidationError);
    const auto c = ChannelConfig::from_gain_ratio(2.0, 0.25, 1, 1, {1, 1, 1, 1}, 1);
    EXPECT_DOUBLE_EQ(c.h1, 8.0);
    EXPECT_GE(c.h1, c.h2);
}

TEST(PowerConfig, EnforcesSharedBudget) {
    PowerConfig p;
    p.p_t = 2.0;
    p.p_d = 1.0;
    p.p_t_max = 1.5;
    EXPECT_NO_THROW(p.validate(0.6, 0.2));  // 1.2 + 0.2
    EXPECT_THROW(p.validate(0.6, 0.4), ValidationError);
    p.p_t_max.reset();
    EXPECT_NO_THROW(p.validate(1.0, 0.0));
}

TEST(SampleFading, MomentsAndEmpiricalCdf) {
    RngStream rng(99);
    const int n = 1'000'000;
    double sum = 0.0;
    int below = 0;
    for (int i = 0; i < n; ++i) {
        const double g = sample_fading(rng, 1.0);
        ASSERT_GE(g, 0.0);
        sum += g;
        below += g <= 1.0;
    }
    EXPECT_NEAR(sum / n, 1.0, 0.004);
    EXPECT_NEAR(static_cast<double>(below) / n, 0.632121, 0.002);
}

TEST(SampleFading, SeededStreamsReproduce) {
    RngStream a(5), b(5);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(sample_fading(a, 2.0), sample_fading(b, 2.0));
    }
    RngStream c = RngStream::derive(5, 1), d = RngStream::derive(5, 2);
    EXPECT_NE(c.uniform(), d.uniform());
}

}  // namespace
