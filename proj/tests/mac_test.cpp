#include <gtest/gtest.h>

#include <algorithm>

#include "wsnloc/mac.hpp"
#include "wsnloc/propagation.hpp"

namespace wsnloc {
namespace {

Deployment make_deployment(std::initializer_list<std::pair<Position, Role>> nodes) {
    Deployment d;
    NodeId id = 0;
    for (const auto& [pos, role] : nodes) {
        NodeState s;
        s.id = id++;
        s.role = role;
        s.true_position = pos;
        d.nodes.push_back(s);
        d.anchor_count += role == Role::Anchor ? 1 : 0;
    }
    return d;
}

BeaconPhase run(const Deployment& d, const MacParams& mac, double sigma_rssi = 0.0,
                std::vector<TraceEvent>* trace = nullptr, std::uint64_t seed = 1) {
    const RadioParams radio;
    const LinkBudget links(d.nodes, ChannelKind::FreeSpace, nullptr, radio);
    RandomStream backoff(seed, "mac");
    RandomStream noise(seed, "rssi");
    return run_beacon_phase({d, links, mac, radio, sigma_rssi}, backoff, noise, trace);
}

TEST(BeaconAirtime, TableTwoDefaults) {
    EXPECT_DOUBLE_EQ(beacon_airtime(MacParams{}, RadioParams{}), 0.02125);
}

TEST(BeaconAirtime, EmptyFrameTakesNoTime) {
    MacParams mac;
    mac.header_bytes = 0;
    mac.beacon_payload_bytes = 0;
    EXPECT_EQ(beacon_airtime(mac, RadioParams{}), 0.0);
}

TEST(BeaconAirtime, ProportionalToInverseRate) {
    RadioParams fast;
    fast.data_rate_bps *= 2.0;
    EXPECT_DOUBLE_EQ(beacon_airtime(MacParams{}, fast), beacon_airtime(MacParams{}, RadioParams{}) / 2.0);
}

TEST(BeaconPhase, LoneAnchorDeliversEveryBeacon) {
    const auto d = make_deployment({{{40, 50}, Role::Anchor}, {{50, 50}, Role::Unknown}});
    const auto phase = run(d, MacParams{});
    ASSERT_EQ(phase.log[1].size(), 10u);
    const double expected = -path_loss_free_space(10.0, 916e6);  // -51.6857 dBm
    for (const auto& r : phase.log[1]) {
        EXPECT_EQ(r.sender, 0u);
        EXPECT_NEAR(r.rssi_dbm, expected, 1e-9);
        EXPECT_EQ(r.payload, (Position{40, 50}));
    }
    EXPECT_TRUE(phase.log[0].empty());
    EXPECT_NEAR(phase.airtime.tx_time_s[0], 10 * 0.02125, 1e-12);
    EXPECT_EQ(phase.airtime.tx_time_s[1], 0.0);
    EXPECT_DOUBLE_EQ(phase.airtime.phase_duration_s, 10.0);
}

TEST(BeaconPhase, IdenticalBackoffsCollideAtAnEquidistantReceiver) {
    // CW = 1 forces a zero backoff for every draw, so both anchors sense and
    // start at the same instants.
    MacParams mac;
    mac.contention_window = 1;
    const auto d = make_deployment(
        {{{40, 50}, Role::Anchor}, {{60, 50}, Role::Anchor}, {{50, 50}, Role::Unknown}});
    const auto phase = run(d, mac);
    EXPECT_TRUE(phase.log[2].empty());
    EXPECT_EQ(phase.transmissions.size(), 20u);
}

TEST(BeaconPhase, CarrierSenseSerialisesNeighbours) {
    const auto d = make_deployment(
        {{{40, 50}, Role::Anchor}, {{60, 50}, Role::Anchor}, {{50, 50}, Role::Unknown}});
    const auto phase = run(d, MacParams{});
    // Anchors hear each other (20 m), so their frames never overlap.
    const auto& t = phase.transmissions;
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GE(t[i].start_s, t[i - 1].end_s - 1e-12);
}

TEST(BeaconPhase, NoAnchorsNoReceptions) {
    const auto d = make_deployment({{{10, 10}, Role::Unknown}, {{20, 20}, Role::Unknown}});
    const auto phase = run(d, MacParams{});
    for (const auto& l : phase.log) EXPECT_TRUE(l.empty());
    EXPECT_TRUE(phase.transmissions.empty());
}

TEST(BeaconPhase, OutOfRangeAnchorIsNeverHeard) {
    const auto d = make_deployment({{{0, 0}, Role::Anchor}, {{40, 0}, Role::Unknown}});
    EXPECT_TRUE(run(d, MacParams{}).log[1].empty());
}

TEST(BeaconPhase, HiddenTerminalsCanCollide) {
    // Anchors 56 m apart cannot sense each other; the receiver hears both.
    const auto d = make_deployment(
        {{{22, 50}, Role::Anchor}, {{78, 50}, Role::Anchor}, {{50, 50}, Role::Unknown}});
    std::vector<TraceEvent> trace;
    const auto phase = run(d, MacParams{}, 0.0, &trace, 3);
    const auto collisions = std::count_if(trace.begin(), trace.end(),
                                          [](const TraceEvent& e) { return e.kind == TraceKind::RxCollision; });
    EXPECT_EQ(static_cast<std::size_t>(collisions) + phase.log[2].size(), 20u);
}

TEST(BeaconPhase, DeterministicForASeed) {
    const auto d = make_deployment({{{40, 50}, Role::Anchor},
                                    {{55, 50}, Role::Anchor},
                                    {{60, 62}, Role::Anchor},
                                    {{50, 50}, Role::Unknown}});
    const auto a = run(d, MacParams{}, 2.0);
    const auto b = run(d, MacParams{}, 2.0);
    ASSERT_EQ(a.log[3].size(), b.log[3].size());
    for (std::size_t i = 0; i < a.log[3].size(); ++i) {
        EXPECT_EQ(a.log[3][i].time_s, b.log[3][i].time_s);
        EXPECT_EQ(a.log[3][i].rssi_dbm, b.log[3][i].rssi_dbm);
    }
}

TEST(BeaconPhase, ReceiversNeverLogTheirOwnFrames) {
    ScenarioConfig cfg;
    cfg.anchor_density = 1.0;
    RandomStream rng(4, "deploy");
    const auto d = deploy(cfg, rng);
    const auto phase = run(d, MacParams{}, 2.0);
    std::size_t total = 0;
    for (NodeId r = 0; r < phase.log.size(); ++r) {
        for (const auto& rec : phase.log[r]) EXPECT_NE(rec.sender, r);
        total += phase.log[r].size();
    }
    EXPECT_GT(total, 0u);
}

}  // namespace
}  // namespace wsnloc
