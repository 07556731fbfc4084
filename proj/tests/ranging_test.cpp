#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wsnloc/propagation.hpp"
#include "wsnloc/ranging.hpp"

namespace wsnloc {
namespace {

constexpr double kDiag = 141.4213562373095;

TEST(RssiSample, ZeroSigmaIsExact) {
    RandomStream noise(1, "rssi");
    EXPECT_EQ(rssi_sample(-60.0, 0.0, noise), -60.0);
}

TEST(RssiSample, NoiseMoments) {
    RandomStream noise(2, "rssi");
    double sum = 0.0, sq = 0.0;
    constexpr int kN = 10000;
    for (int i = 0; i < kN; ++i) {
        const double s = rssi_sample(-60.0, 2.0, noise);
        sum += s;
        sq += s * s;
    }
    const double mean = sum / kN;
    EXPECT_NEAR(mean, -60.0, 0.1);
    EXPECT_NEAR(std::sqrt(sq / kN - mean * mean), 2.0, 0.1);
}

TEST(EstimateDistance, InvertsTheNominalRangePower) {
    // -61.22 dBm is PL(30 m) rounded to two decimals; the exact inverse is
    // 29.97197524584074 m (Python).
    EXPECT_NEAR(estimate_distance(-61.22, RadioParams{}, kDiag), 29.97197524584074, 1e-9);
}

TEST(EstimateDistance, ExactInversionIdentity) {
    const RadioParams radio;
    for (double d : {0.5, 1.0, 7.3, 30.0, 99.0}) {
        EXPECT_NEAR(estimate_distance(radio.tx_power_dbm - path_loss_free_space(d, 916e6), radio, kDiag), d,
                    1e-9 * d);
    }
}

TEST(EstimateDistance, ShadowingBiasIsMultiplicative) {
    const RadioParams radio;
    for (double d : {5.0, 12.0, 25.0}) {
        const double rssi = received_power({0, 0}, {d, 0}, ChannelKind::Shadowing, 6.0, radio);
        EXPECT_NEAR(estimate_distance(rssi, radio, kDiag) / d, std::pow(10.0, 6.0 / 20.0), 1e-9);
    }
    EXPECT_NEAR(std::pow(10.0, 6.0 / 20.0), 1.9952623149688795, 1e-15);
}

TEST(EstimateDistance, ClampsImplausibleReadings) {
    const RadioParams radio;
    EXPECT_EQ(estimate_distance(5.0, radio, kDiag), kMinRangeEstimate_m);
    EXPECT_EQ(estimate_distance(-200.0, radio, kDiag), kDiag);
}

TEST(EstimateDistance, StrictlyDecreasingInRssi) {
    const RadioParams radio;
    double prev = 0.0;
    for (double rssi = -30.0; rssi > -75.0; rssi -= 0.5) {
        const double d = estimate_distance(rssi, radio, kDiag);
        EXPECT_GT(d, prev);
        prev = d;
    }
}

TEST(RangingTable, AveragesInDbm) {
    const std::vector<BeaconReception> log = {
        {0.1, 4, {10, 10}, -60.0}, {1.1, 4, {10, 10}, -62.0}, {2.1, 4, {10, 10}, -61.0}};
    const auto table = build_ranging_table(log, RadioParams{}, kDiag);
    ASSERT_EQ(table.size(), 1u);
    EXPECT_EQ(table[0].anchor_id, 4u);
    EXPECT_EQ(table[0].sample_count, 3u);
    EXPECT_DOUBLE_EQ(table[0].mean_rssi_dbm, -61.0);
    EXPECT_EQ(table[0].anchor_position, (Position{10, 10}));
    EXPECT_DOUBLE_EQ(table[0].first_heard_s, 0.1);
}

TEST(RangingTable, EmptyLogEmptyTable) {
    EXPECT_TRUE(build_ranging_table({}, RadioParams{}, kDiag).empty());
}

TEST(RangingTable, OneEntryPerAnchorInConnectionOrder) {
    const std::vector<BeaconReception> log = {
        {0.05, 9, {1, 1}, -50.0}, {0.07, 2, {5, 5}, -55.0}, {1.05, 9, {1, 1}, -52.0}};
    const auto table = build_ranging_table(log, RadioParams{}, kDiag);
    ASSERT_EQ(table.size(), 2u);
    EXPECT_EQ(table[0].anchor_id, 9u);
    EXPECT_EQ(table[1].anchor_id, 2u);
    EXPECT_EQ(table[0].sample_count, 2u);
    EXPECT_EQ(table[1].sample_count, 1u);
}

}  // namespace
}  // namespace wsnloc
