#include "wsnloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "wsnloc/energy.hpp"
#include "wsnloc/pme.hpp"
#include "wsnloc/propagation.hpp"
#include "wsnloc/ranging.hpp"

namespace wsnloc {

std::optional<double> composed_average_error(double lateration_error, std::size_t n_lateration,
                                             double bbox_error, std::size_t n_bbox) {
    const std::size_t n = n_lateration + n_bbox;
    if (n == 0) return std::nullopt;
    // A protocol nobody used contributes nothing, even if its mean is NaN.
    double sum = 0.0;
    if (n_lateration > 0) sum += lateration_error * static_cast<double>(n_lateration);
    if (n_bbox > 0) sum += bbox_error * static_cast<double>(n_bbox);
    return sum / static_cast<double>(n);
}

NetworkRun simulate_network(const ScenarioConfig& config, std::uint64_t seed,
                            std::vector<TraceEvent>* trace) {
    validate(config);
    NetworkRun run;
    run.config = config;
    run.seed = seed;

    RandomStream deploy_rng(seed, "deploy");
    run.deployment = deploy(config, deploy_rng);
    const std::size_t n = run.deployment.nodes.size();

    ShadowingField shadowing;
    if (config.channel.kind == ChannelKind::Shadowing) {
        RandomStream shadow_rng(seed, "shadowing");
        shadowing = ShadowingField(n, config.channel.sigma_shadowing_db, shadow_rng);
    }
    const LinkBudget links(run.deployment.nodes, config.channel.kind, &shadowing, config.radio);

    RandomStream mac_rng(seed, "mac");
    RandomStream rssi_rng(seed, "rssi");
    run.phase = run_beacon_phase({run.deployment, links, config.mac, config.radio,
                                  config.channel.sigma_rssi_db},
                                 mac_rng, rssi_rng, trace);

    const double max_range = config.plane.diagonal();
    run.tables.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        run.tables.push_back(build_ranging_table(run.phase.log[i], config.radio, max_range));
    }
    return run;
}

std::vector<NodeId> evaluated_nodes(const Deployment& deployment) {
    std::vector<NodeId> ids;
    for (const auto& node : deployment.nodes) {
        if (node.role == Role::Unknown) ids.push_back(node.id);
    }
    if (ids.empty()) {
        for (const auto& node : deployment.nodes) ids.push_back(node.id);
    }
    return ids;
}

ReplicationResult localize(const NetworkRun& run, ProtocolMode mode) {
    const auto& config = run.config;
    const auto registry = registry_for(mode);
    const ProcedureParams params{config.plane, config.radio.nominal_range_m, config.consideration};

    ReplicationResult result;
    result.mode = mode;
    result.nodes = run.deployment.nodes;
    const std::size_t n = result.nodes.size();
    result.evaluated.assign(n, false);
    result.bbox_executions.assign(n, 0);

    for (NodeId id : evaluated_nodes(run.deployment)) result.evaluated[id] = true;

    double anchors_sum = 0.0;
    double energy_sum = 0.0;
    double err_l = 0.0;
    double err_bb = 0.0;
    std::size_t located = 0;
    auto& m = result.metrics;

    for (NodeId id = 0; id < n; ++id) {
        auto& node = result.nodes[id];
        node.ranging_table = run.tables[id];
        std::size_t lat_runs = 0;
        if (result.evaluated[id]) {
            const auto outcome = run_procedure(node.ranging_table, registry, params);
            node.estimate = outcome.estimate;
            lat_runs = outcome.lateration_executions;
            result.bbox_executions[id] = outcome.bbox_executions;
        }
        node.energy = charge_node(run.phase.airtime.tx_time_s[id], run.phase.airtime.phase_duration_s,
                                  lat_runs, result.bbox_executions[id], config.energy);

        if (!result.evaluated[id]) continue;
        ++m.evaluated;
        anchors_sum += static_cast<double>(node.ranging_table.size());
        energy_sum += node.energy.total_mj;
        if (node.estimate) {
            ++located;
            const double e = node_error(node.estimate->position, node.true_position);
            if (node.estimate->protocol == ProtocolKind::Lateration) {
                err_l += e;
                ++m.n_lateration;
            } else {
                err_bb += e;
                ++m.n_bbox;
            }
        }
    }

    const auto evaluated = static_cast<double>(m.evaluated);
    m.mean_anchors = anchors_sum / evaluated;
    m.located_fraction = static_cast<double>(located) / evaluated;
    m.mean_energy_mj = energy_sum / evaluated;
    const double mean_l = m.n_lateration > 0 ? err_l / static_cast<double>(m.n_lateration) : 0.0;
    const double mean_bb = m.n_bbox > 0 ? err_bb / static_cast<double>(m.n_bbox) : 0.0;
    m.mean_error_m = composed_average_error(mean_l, m.n_lateration, mean_bb, m.n_bbox);
    return result;
}

ReplicationResult run_replication(const ScenarioConfig& config) {
    return localize(simulate_network(config, config.rng_seed), config.mode);
}

void validate_nodes(const ReplicationResult& result) {
    auto fail = [](NodeId id, const std::string& what) {
        throw std::logic_error(fmt::format("node {}: {}", id, what));
    };
    const bool all_anchors = std::all_of(result.nodes.begin(), result.nodes.end(),
                                         [](const NodeState& s) { return s.role == Role::Anchor; });
    for (const auto& node : result.nodes) {
        for (const auto& e : node.ranging_table) {
            if (e.sample_count < 1) fail(node.id, "ranging entry without samples");
            if (!(e.estimated_distance_m > 0.0) || !std::isfinite(e.estimated_distance_m)) {
                fail(node.id, "ranging distance not positive and finite");
            }
            if (e.anchor_id == node.id) fail(node.id, "heard its own beacon");
        }
        if (!node.estimate) continue;
        const auto& est = *node.estimate;
        if (node.role == Role::Anchor && !all_anchors) fail(node.id, "anchor holds an estimate");
        if (node.ranging_table.empty()) fail(node.id, "estimate without any anchor");
        if (!std::isfinite(est.position.x) || !std::isfinite(est.position.y)) {
            fail(node.id, "non-finite estimate");
        }
        if (est.protocol == ProtocolKind::BoundingBox) {
            if (!est.location_area) fail(node.id, "Bounding-Box estimate without a location area");
            if (!(est.location_area->center() == est.position)) fail(node.id, "estimate is not the LA centre");
        } else if (est.anchors_used < 4 || est.anchors_used > 6) {
            fail(node.id, "Lateration with anchors outside 4..6");
        }
    }
}

void write_nodes_csv(std::ostream& out, const ReplicationResult& result) {
    out << "node_id,role,x,y,evaluated,anchors_connected,located,protocol,est_x,est_y,error_m,"
           "energy_mj,lateration_execs\n";
    for (std::size_t i = 0; i < result.nodes.size(); ++i) {
        const auto& node = result.nodes[i];
        out << fmt::format("{},{},{},{},{},{},", node.id, to_string(node.role), node.true_position.x,
                           node.true_position.y, result.evaluated[i] ? 1 : 0, node.ranging_table.size());
        if (node.estimate) {
            const auto& e = *node.estimate;
            out << fmt::format("1,{},{},{},{},", to_string(e.protocol), e.position.x, e.position.y,
                               node_error(e.position, node.true_position));
        } else {
            out << "0,,,,,";
        }
        out << fmt::format("{},{}\n", node.energy.total_mj, node.energy.lateration_executions);
    }
}

MeanCi mean_with_ci(std::span<const double> samples, double level) {
    MeanCi out;
    if (samples.empty()) return out;
    const auto n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double v : samples) sum += v;
    out.mean = sum / n;
    if (samples.size() < 2) return out;
    double ss = 0.0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - level) / 2.0));
    out.half_width = t * sd / std::sqrt(n);
    return out;
}

std::vector<double> default_densities() {
    std::vector<double> d;
    for (int i = 1; i <= 10; ++i) d.push_back(i / 10.0);
    return d;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.replications < 2) {
        throw std::invalid_argument("run_sweep: replications must be >= 2 for a confidence interval");
    }
    const std::size_t reps = static_cast<std::size_t>(spec.replications);
    const std::size_t n_modes = spec.modes.size();
    const std::size_t n_cells = spec.densities.size() * spec.channels.size();

    // metrics[(cell * reps + rep) * n_modes + mode]
    std::vector<ReplicationMetrics> metrics(n_cells * reps * n_modes);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < n_cells * reps; job = next++) {
            const std::size_t cell = job / reps;
            const std::size_t rep = job % reps;
            ScenarioConfig cfg = spec.base;
            cfg.anchor_density = spec.densities[cell / spec.channels.size()];
            cfg.channel.kind = spec.channels[cell % spec.channels.size()];
            const auto run = simulate_network(cfg, spec.base.rng_seed + rep);
            for (std::size_t m = 0; m < n_modes; ++m) {
                metrics[job * n_modes + m] = localize(run, spec.modes[m]).metrics;
            }
        }
    };
    {
        const unsigned jobs = std::max(1u, spec.jobs);
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
    }

    std::vector<SweepRow> rows;
    std::vector<double> anchors, located, energy, error;
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        for (std::size_t m = 0; m < n_modes; ++m) {
            anchors.clear();
            located.clear();
            energy.clear();
            error.clear();
            SweepRow row;
            row.density = spec.densities[cell / spec.channels.size()];
            row.channel = spec.channels[cell % spec.channels.size()];
            row.mode = spec.modes[m];
            row.reps = spec.replications;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                const auto& r = metrics[(cell * reps + rep) * n_modes + m];
                anchors.push_back(r.mean_anchors);
                located.push_back(r.located_fraction);
                energy.push_back(r.mean_energy_mj);
                if (r.mean_error_m) error.push_back(*r.mean_error_m);
                row.n_lateration += r.n_lateration;
                row.n_bbox += r.n_bbox;
            }
            row.anchors = mean_with_ci(anchors);
            row.located = mean_with_ci(located);
            row.energy_mj = mean_with_ci(energy);
            if (!error.empty()) row.error_m = mean_with_ci(error);
            rows.push_back(row);
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.channel, a.mode, a.density) < std::tie(b.channel, b.mode, b.density);
    });
    return rows;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error(fmt::format("sweep csv line {}: bad number '{}'", line, s));
    }
    return v;
}

std::optional<double> parse_optional(const std::string& s, std::size_t line) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, line);
}

std::size_t parse_count(const std::string& s, std::size_t line) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error(fmt::format("sweep csv line {}: bad count '{}'", line, s));
    }
    return v;
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},", to_string(r.channel), to_string(r.mode),
                           r.density, r.reps, r.anchors.mean, opt(r.anchors.half_width), r.located.mean,
                           opt(r.located.half_width), r.energy_mj.mean, opt(r.energy_mj.half_width));
        if (r.error_m) {
            out << fmt::format("{},{},", r.error_m->mean, opt(r.error_m->half_width));
        } else {
            out << ",,";
        }
        out << fmt::format("{},{}\n", r.n_lateration, r.n_bbox);
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) {
        throw std::runtime_error("sweep csv: missing or unexpected header");
    }
    std::vector<SweepRow> rows;
    for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 14) {
            throw std::runtime_error(fmt::format("sweep csv line {}: expected 14 fields, got {}", lineno, f.size()));
        }
        SweepRow r;
        try {
            r.channel = parse_channel(f[0]);
            r.mode = parse_mode(f[1]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(fmt::format("sweep csv line {}: {}", lineno, e.what()));
        }
        r.density = parse_double(f[2], lineno);
        r.reps = static_cast<int>(parse_count(f[3], lineno));
        r.anchors = {parse_double(f[4], lineno), parse_optional(f[5], lineno)};
        r.located = {parse_double(f[6], lineno), parse_optional(f[7], lineno)};
        r.energy_mj = {parse_double(f[8], lineno), parse_optional(f[9], lineno)};
        if (!f[10].empty()) r.error_m = MeanCi{parse_double(f[10], lineno), parse_optional(f[11], lineno)};
        r.n_lateration = parse_count(f[12], lineno);
        r.n_bbox = parse_count(f[13], lineno);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace wsnloc
