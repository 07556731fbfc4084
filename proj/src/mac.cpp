#include "wsnloc/mac.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <tuple>

#include <fmt/format.h>

#include "wsnloc/ranging.hpp"

namespace wsnloc {

double beacon_airtime(const MacParams& mac, const RadioParams& radio) {
    return static_cast<double>(mac.header_bytes + mac.beacon_payload_bytes) * 8.0 /
           radio.data_rate_bps;
}

std::string_view to_string(TraceKind kind) {
    switch (kind) {
    case TraceKind::Defer:
        return "defer";
    case TraceKind::TxStart:
        return "tx_start";
    case TraceKind::RxOk:
        return "rx_ok";
    case TraceKind::RxCollision:
        return "rx_collision";
    }
    return "?";
}

namespace {

struct SenseEvent {
    double time_s;
    NodeId sender;
    int beacon_index;

    // Min-heap on (time, sender).
    bool operator>(const SenseEvent& o) const {
        return std::tie(time_s, sender) > std::tie(o.time_s, o.sender);
    }
};

void emit(std::vector<TraceEvent>* trace, double t, TraceKind kind, NodeId sender,
          std::optional<NodeId> receiver = std::nullopt) {
    if (trace != nullptr) trace->push_back({t, kind, sender, receiver});
}

std::vector<Transmission> schedule_transmissions(const BeaconPhaseInputs& in, double airtime,
                                                 RandomStream& backoff,
                                                 std::vector<TraceEvent>* trace) {
    const auto& mac = in.mac;
    auto draw_backoff = [&] {
        return static_cast<double>(backoff.below(static_cast<std::uint64_t>(mac.contention_window))) *
               mac.slot_time_s;
    };

    std::priority_queue<SenseEvent, std::vector<SenseEvent>, std::greater<>> queue;
    for (const auto& node : in.deployment.nodes) {
        if (node.role == Role::Anchor) queue.push({draw_backoff(), node.id, 0});
    }

    std::vector<Transmission> sent;
    std::vector<Transmission> on_air;
    while (!queue.empty()) {
        const SenseEvent ev = queue.top();
        queue.pop();

        std::erase_if(on_air, [&](const Transmission& t) { return t.end_s <= ev.time_s; });
        double busy_until = -1.0;
        for (const auto& t : on_air) {
            if (t.sender != ev.sender && t.start_s < ev.time_s && in.links.sensed(t.sender, ev.sender)) {
                busy_until = std::max(busy_until, t.end_s);
            }
        }
        if (busy_until >= 0.0) {
            emit(trace, ev.time_s, TraceKind::Defer, ev.sender);
            queue.push({busy_until + draw_backoff(), ev.sender, ev.beacon_index});
            continue;
        }

        const Transmission tx{ev.sender, ev.beacon_index, ev.time_s, ev.time_s + airtime};
        emit(trace, tx.start_s, TraceKind::TxStart, tx.sender);
        sent.push_back(tx);
        on_air.push_back(tx);

        const int next = ev.beacon_index + 1;
        if (next < mac.beacons_per_anchor) {
            const double due = std::max(next * mac.beacon_interval_s, tx.end_s);
            queue.push({due + draw_backoff(), ev.sender, next});
        }
    }
    std::sort(sent.begin(), sent.end(), [](const Transmission& a, const Transmission& b) {
        return std::tie(a.start_s, a.sender) < std::tie(b.start_s, b.sender);
    });
    return sent;
}

}  // namespace

BeaconPhase run_beacon_phase(const BeaconPhaseInputs& in, RandomStream& backoff,
                             RandomStream& rssi_noise, std::vector<TraceEvent>* trace) {
    const auto& nodes = in.deployment.nodes;
    const std::size_t n = nodes.size();
    const double airtime = beacon_airtime(in.mac, in.radio);

    BeaconPhase phase;
    phase.log.resize(n);
    phase.airtime.tx_time_s.assign(n, 0.0);
    phase.transmissions = schedule_transmissions(in, airtime, backoff, trace);

    const auto& txs = phase.transmissions;
    double last_end = 0.0;
    for (const auto& t : txs) {
        phase.airtime.tx_time_s[t.sender] += t.end_s - t.start_s;
        last_end = std::max(last_end, t.end_s);
    }
    phase.airtime.phase_duration_s =
        std::max(in.mac.beacons_per_anchor * in.mac.beacon_interval_s, last_end);

    // Frames overlapping txs[i]; sorted by start so a window scan suffices.
    std::vector<std::size_t> overlapping;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        const auto& x = txs[i];
        overlapping.clear();
        // Every frame lasts `airtime`, so earlier frames starting more than
        // one airtime before x cannot reach it.
        for (std::size_t j = i; j-- > 0 && x.start_s - txs[j].start_s <= airtime;) {
            if (txs[j].end_s > x.start_s) overlapping.push_back(j);
        }
        for (std::size_t j = i + 1; j < txs.size() && txs[j].start_s < x.end_s; ++j) {
            overlapping.push_back(j);
        }

        for (NodeId r = 0; r < n; ++r) {
            if (r == x.sender || !in.links.audible(x.sender, r)) continue;
            const bool collided = std::any_of(overlapping.begin(), overlapping.end(), [&](std::size_t j) {
                const NodeId other = txs[j].sender;
                return other == r || in.links.audible(other, r);
            });
            if (collided) {
                emit(trace, x.end_s, TraceKind::RxCollision, x.sender, r);
                continue;
            }
            emit(trace, x.end_s, TraceKind::RxOk, x.sender, r);
            phase.log[r].push_back({x.end_s, x.sender, nodes[x.sender].true_position,
                                    rssi_sample(in.links.power_dbm(x.sender, r), in.sigma_rssi_db,
                                                rssi_noise)});
        }
    }

    if (trace != nullptr) {
        std::stable_sort(trace->begin(), trace->end(),
                         [](const TraceEvent& a, const TraceEvent& b) { return a.time_s < b.time_s; });
    }
    return phase;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceEvent>& trace) {
    out << "time,event_kind,sender,receiver\n";
    for (const auto& e : trace) {
        out << fmt::format("{:.9f},{},{},", e.time_s, to_string(e.kind), e.sender);
        if (e.receiver) out << *e.receiver;
        out << '\n';
    }
}

}  // namespace wsnloc
