#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsnloc/config.hpp"
#include "wsnloc/deployment.hpp"
#include "wsnloc/mac.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

/// Straight-line distance between an estimate and the true position.
inline double node_error(const Position& estimate, const Position& truth) {
    return distance(estimate, truth);
}

/// (E_L * n_L + E_BB * n_BB) / (n_L + n_BB); nullopt when both counts are 0.
std::optional<double> composed_average_error(double lateration_error, std::size_t n_lateration,
                                             double bbox_error, std::size_t n_bbox);

/// One realisation of the network for a seed: deployment, beacon phase and
/// every node's ranging table. Localization modes are evaluated on top of
/// it, so they see identical connectivity.
struct NetworkRun {
    ScenarioConfig config;
    std::uint64_t seed = 0;
    Deployment deployment;
    BeaconPhase phase;
    std::vector<RangingTable> tables;  // per node, connection order
};

/// Streams are keyed by `seed`: "deploy", "shadowing", "mac", "rssi".
NetworkRun simulate_network(const ScenarioConfig& config, std::uint64_t seed,
                            std::vector<TraceEvent>* trace = nullptr);

/// Nodes whose position is estimated and scored: the unknowns, or every
/// node when there are none (full anchor density).
std::vector<NodeId> evaluated_nodes(const Deployment& deployment);

struct ReplicationMetrics {
    std::size_t evaluated = 0;
    double mean_anchors = 0.0;
    double located_fraction = 0.0;
    double mean_energy_mj = 0.0;
    std::optional<double> mean_error_m;  // over located nodes
    std::size_t n_lateration = 0;        // located nodes by final protocol
    std::size_t n_bbox = 0;
};

struct ReplicationResult {
    ProtocolMode mode = ProtocolMode::Procedure;
    std::vector<NodeState> nodes;
    std::vector<bool> evaluated;  // per node
    std::vector<std::size_t> bbox_executions;
    ReplicationMetrics metrics;
};

/// Runs the localization procedure for `mode` on every evaluated node and
/// bills every node's energy.
ReplicationResult localize(const NetworkRun& run, ProtocolMode mode);

/// simulate_network + localize with the config's own seed and mode.
ReplicationResult run_replication(const ScenarioConfig& config);

/// Checks the NodeState invariants; throws std::logic_error on violation.
void validate_nodes(const ReplicationResult& result);

/// Per-node CSV for one replication.
void write_nodes_csv(std::ostream& out, const ReplicationResult& result);

inline constexpr std::string_view kSweepCsvHeader =
    "channel,mode,density,reps,mean_anchors,ci_anchors,located_frac,ci_located,mean_energy_mj,"
    "ci_energy,mean_error_m,ci_error,n_lateration,n_bbox";

/// Sample mean with a two-sided Student-t confidence half-width.
struct MeanCi {
    double mean = 0.0;
    std::optional<double> half_width;  // needs >= 2 samples

    friend bool operator==(const MeanCi&, const MeanCi&) = default;
};

MeanCi mean_with_ci(std::span<const double> samples, double level = 0.99);

struct SweepRow {
    ChannelKind channel = ChannelKind::FreeSpace;
    ProtocolMode mode = ProtocolMode::Procedure;
    double density = 0.0;
    int reps = 0;
    MeanCi anchors;
    MeanCi located;
    MeanCi energy_mj;
    std::optional<MeanCi> error_m;  // absent when no replication located a node
    std::size_t n_lateration = 0;   // summed over replications
    std::size_t n_bbox = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepSpec {
    ScenarioConfig base;
    std::vector<double> densities;
    int replications = 100;
    std::vector<ProtocolMode> modes;
    std::vector<ChannelKind> channels;
    unsigned jobs = 1;
};

/// 0.1, 0.2, ..., 1.0
std::vector<double> default_densities();

/// Replication r of every cell uses seed base.rng_seed + r, shared by all
/// modes. Rows are sorted by (channel, mode, density). Throws
/// std::invalid_argument when replications < 2.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
/// Parses what write_sweep_csv emits. Throws std::runtime_error on a
/// malformed file.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace wsnloc
