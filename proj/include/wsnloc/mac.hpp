#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "wsnloc/config.hpp"
#include "wsnloc/deployment.hpp"
#include "wsnloc/propagation.hpp"
#include "wsnloc/rng.hpp"
#include "wsnloc/types.hpp"

namespace wsnloc {

/// Frame airtime: (header + payload) * 8 / data_rate.
double beacon_airtime(const MacParams& mac, const RadioParams& radio);

struct Transmission {
    NodeId sender = 0;
    int beacon_index = 0;
    double start_s = 0.0;
    double end_s = 0.0;
};

struct AirtimeAccount {
    std::vector<double> tx_time_s;  // indexed by node id
    double phase_duration_s = 0.0;
};

enum class TraceKind { Defer, TxStart, RxOk, RxCollision };

std::string_view to_string(TraceKind kind);

struct TraceEvent {
    double time_s = 0.0;
    TraceKind kind = TraceKind::TxStart;
    NodeId sender = 0;
    std::optional<NodeId> receiver;
};

struct BeaconPhase {
    /// Decoded beacons per receiver, in decode order.
    std::vector<std::vector<BeaconReception>> log;
    AirtimeAccount airtime;
    std::vector<Transmission> transmissions;  // sorted by (start, sender)
};

struct BeaconPhaseInputs {
    const Deployment& deployment;
    const LinkBudget& links;
    const MacParams& mac;
    const RadioParams& radio;
    double sigma_rssi_db = 0.0;
};

/// Runs the beacon broadcast phase.
///
/// Every anchor attempts `beacons_per_anchor` frames. Attempt k is due at
/// k * beacon_interval (or when the anchor's previous frame ends, if later)
/// and senses the medium after a uniform backoff in [0, CW - 1] slots. A
/// busy medium (any sensed frame that started strictly earlier and is still
/// on air) defers the anchor to the end of that activity plus a fresh
/// backoff. Same-instant events are ordered by sender id.
///
/// A receiver decodes a frame iff the frame is audible there, no other
/// frame audible at the receiver overlaps it, and the receiver is not
/// itself transmitting during it. There is no capture.
BeaconPhase run_beacon_phase(const BeaconPhaseInputs& inputs, RandomStream& backoff,
                             RandomStream& rssi_noise, std::vector<TraceEvent>* trace = nullptr);

/// CSV with header `time,event_kind,sender,receiver`.
void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace);

}  // namespace wsnloc
