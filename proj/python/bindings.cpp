#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wsnloc/config_io.hpp"
#include "wsnloc/energy.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/localization.hpp"
#include "wsnloc/pme.hpp"
#include "wsnloc/propagation.hpp"
#include "wsnloc/ranging.hpp"

namespace py = pybind11;
using namespace wsnloc;

namespace {

LaterationProblem make_problem(const std::vector<std::pair<Position, double>>& anchors) {
    std::vector<RangedAnchor> ranged;
    for (const auto& [p, d] : anchors) ranged.push_back({p, d});
    return LaterationProblem(std::move(ranged));
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    write_sweep_csv(out, rows);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_wsnloc, m) {
    m.doc() = "Wireless sensor network localization simulator";

    py::enum_<ChannelKind>(m, "ChannelKind")
        .value("FREE_SPACE", ChannelKind::FreeSpace)
        .value("SHADOWING", ChannelKind::Shadowing);
    py::enum_<ProtocolKind>(m, "ProtocolKind")
        .value("LATERATION", ProtocolKind::Lateration)
        .value("BOUNDING_BOX", ProtocolKind::BoundingBox);
    py::enum_<ProtocolMode>(m, "ProtocolMode")
        .value("LATERATION_ONLY", ProtocolMode::LaterationOnly)
        .value("BOUNDING_BOX_ONLY", ProtocolMode::BoundingBoxOnly)
        .value("PROCEDURE", ProtocolMode::Procedure);
    py::enum_<DeploymentConsideration>(m, "DeploymentConsideration")
        .value("ACCURACY_FIRST", DeploymentConsideration::AccuracyFirst)
        .value("LIFETIME_FIRST", DeploymentConsideration::LifetimeFirst);

    py::class_<Position>(m, "Position")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Position{x, y}; }), py::arg("x"), py::arg("y"))
        .def(py::init([](const py::tuple& t) {
            if (t.size() != 2) throw py::value_error("expected an (x, y) pair");
            return Position{t[0].cast<double>(), t[1].cast<double>()};
        }))
        .def_readwrite("x", &Position::x)
        .def_readwrite("y", &Position::y)
        .def("__repr__", [](const Position& p) { return "Position(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; });
    py::implicitly_convertible<py::tuple, Position>();

    py::class_<Plane>(m, "Plane")
        .def(py::init<>())
        .def_readwrite("width", &Plane::width)
        .def_readwrite("height", &Plane::height);

    py::class_<LocationArea>(m, "LocationArea")
        .def_readonly("x_min", &LocationArea::x_min)
        .def_readonly("y_min", &LocationArea::y_min)
        .def_readonly("x_max", &LocationArea::x_max)
        .def_readonly("y_max", &LocationArea::y_max)
        .def("empty", &LocationArea::empty)
        .def("center", &LocationArea::center)
        .def("contains", &LocationArea::contains);

    py::class_<RadioParams>(m, "RadioParams")
        .def(py::init<>())
        .def_readwrite("tx_power_dbm", &RadioParams::tx_power_dbm)
        .def_readwrite("carrier_frequency_hz", &RadioParams::carrier_frequency_hz)
        .def_readwrite("reception_threshold_dbm", &RadioParams::reception_threshold_dbm)
        .def_readwrite("carrier_sense_threshold_dbm", &RadioParams::carrier_sense_threshold_dbm)
        .def_readwrite("nominal_range_m", &RadioParams::nominal_range_m);

    py::class_<EnergyParams>(m, "EnergyParams")
        .def(py::init<>())
        .def_readwrite("p_tx_mw", &EnergyParams::p_tx_mw)
        .def_readwrite("p_rx_idle_mw", &EnergyParams::p_rx_idle_mw)
        .def_readwrite("e_lateration_mj", &EnergyParams::e_lateration_mj)
        .def_readwrite("e_bbox_mj", &EnergyParams::e_bbox_mj);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("plane", &ScenarioConfig::plane)
        .def_readwrite("node_count", &ScenarioConfig::node_count)
        .def_readwrite("anchor_density", &ScenarioConfig::anchor_density)
        .def_readwrite("radio", &ScenarioConfig::radio)
        .def_readwrite("energy", &ScenarioConfig::energy)
        .def_readwrite("mode", &ScenarioConfig::mode)
        .def_readwrite("consideration", &ScenarioConfig::consideration)
        .def_readwrite("rng_seed", &ScenarioConfig::rng_seed)
        .def_property(
            "channel", [](const ScenarioConfig& c) { return c.channel.kind; },
            [](ScenarioConfig& c, ChannelKind k) { c.channel.kind = k; })
        .def("validate", [](const ScenarioConfig& c) { validate(c); });

    m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
    m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));

    m.def("path_loss", &path_loss_free_space, py::arg("distance_m"), py::arg("frequency_hz") = 916e6);
    m.def(
        "received_power",
        [](const Position& sender, const Position& receiver, ChannelKind channel, double pair_loss_db,
           const RadioParams& radio) { return received_power(sender, receiver, channel, pair_loss_db, radio); },
        py::arg("sender"), py::arg("receiver"), py::arg("channel") = ChannelKind::FreeSpace,
        py::arg("pair_loss_db") = 0.0, py::arg("radio") = RadioParams{});
    m.def("estimate_distance", &estimate_distance, py::arg("mean_rssi_dbm"), py::arg("radio") = RadioParams{},
          py::arg("max_distance_m") = Plane{}.diagonal());

    py::class_<LaterationSolution>(m, "LaterationSolution")
        .def_readonly("position", &LaterationSolution::position)
        .def_readonly("objective", &LaterationSolution::objective)
        .def_readonly("iterations", &LaterationSolution::iterations)
        .def_readonly("converged", &LaterationSolution::converged)
        .def_readonly("degenerate", &LaterationSolution::degenerate);

    m.def(
        "solve_lateration",
        [](const std::vector<std::pair<Position, double>>& anchors, const Plane& plane) {
            return solve_lateration(make_problem(anchors), plane);
        },
        py::arg("anchors"), py::arg("plane") = Plane{},
        "anchors: list of ((x, y), distance) pairs, 4 to 6 of them");
    m.def(
        "oracle_lateration",
        [](const std::vector<std::pair<Position, double>>& anchors, const Plane& plane, double step) {
            return oracle_lateration(make_problem(anchors), plane, step);
        },
        py::arg("anchors"), py::arg("plane") = Plane{}, py::arg("grid_step_m") = 0.25);
    m.def(
        "lateration_objective",
        [](const Position& candidate, const std::vector<std::pair<Position, double>>& anchors) {
            return lateration_objective(candidate, make_problem(anchors));
        },
        py::arg("candidate"), py::arg("anchors"));

    py::class_<BoundingBoxResult>(m, "BoundingBoxResult")
        .def_readonly("area", &BoundingBoxResult::area)
        .def_readonly("estimate", &BoundingBoxResult::estimate)
        .def_readonly("anchors_used", &BoundingBoxResult::anchors_used)
        .def_readonly("fallback", &BoundingBoxResult::fallback);
    m.def(
        "bounding_box",
        [](const std::vector<std::tuple<Position, double, double>>& anchors, const Plane& plane) {
            std::vector<BoxAnchor> boxes;
            for (const auto& [p, r, rssi] : anchors) boxes.push_back({p, r, rssi});
            return bounding_box(boxes, plane);
        },
        py::arg("anchors"), py::arg("plane") = Plane{}, "anchors: list of ((x, y), range_m, mean_rssi_dbm)");

    m.def(
        "select_protocol",
        [](std::size_t connected, DeploymentConsideration c, ProtocolMode mode) {
            return select_protocol({connected}, c, registry_for(mode));
        },
        py::arg("connected_anchors"), py::arg("consideration") = DeploymentConsideration::AccuracyFirst,
        py::arg("mode") = ProtocolMode::Procedure);

    py::class_<EnergyLedger>(m, "EnergyLedger")
        .def_readonly("tx_time_s", &EnergyLedger::tx_time_s)
        .def_readonly("listen_time_s", &EnergyLedger::listen_time_s)
        .def_readonly("lateration_executions", &EnergyLedger::lateration_executions)
        .def_readonly("total_mj", &EnergyLedger::total_mj);
    m.def("charge_node", &charge_node, py::arg("tx_time_s"), py::arg("phase_duration_s"),
          py::arg("lateration_executions"), py::arg("bbox_executions"), py::arg("params") = EnergyParams{});

    py::class_<ReplicationMetrics>(m, "ReplicationMetrics")
        .def_readonly("evaluated", &ReplicationMetrics::evaluated)
        .def_readonly("mean_anchors", &ReplicationMetrics::mean_anchors)
        .def_readonly("located_fraction", &ReplicationMetrics::located_fraction)
        .def_readonly("mean_energy_mj", &ReplicationMetrics::mean_energy_mj)
        .def_readonly("mean_error_m", &ReplicationMetrics::mean_error_m)
        .def_readonly("n_lateration", &ReplicationMetrics::n_lateration)
        .def_readonly("n_bbox", &ReplicationMetrics::n_bbox);
    m.def("run_replication", [](const ScenarioConfig& c) { return run_replication(c).metrics; }, py::arg("config"));
    m.def(
        "nodes_csv",
        [](const ScenarioConfig& c) {
            std::ostringstream out;
            write_nodes_csv(out, run_replication(c));
            return out.str();
        },
        py::arg("config"));

    py::class_<MeanCi>(m, "MeanCi")
        .def_readonly("mean", &MeanCi::mean)
        .def_readonly("half_width", &MeanCi::half_width);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("channel", &SweepRow::channel)
        .def_readonly("mode", &SweepRow::mode)
        .def_readonly("density", &SweepRow::density)
        .def_readonly("reps", &SweepRow::reps)
        .def_readonly("anchors", &SweepRow::anchors)
        .def_readonly("located", &SweepRow::located)
        .def_readonly("energy_mj", &SweepRow::energy_mj)
        .def_readonly("error_m", &SweepRow::error_m)
        .def_readonly("n_lateration", &SweepRow::n_lateration)
        .def_readonly("n_bbox", &SweepRow::n_bbox);
    m.def(
        "run_sweep",
        [](const ScenarioConfig& base, std::vector<double> densities, int replications,
           std::vector<ProtocolMode> modes, std::vector<ChannelKind> channels, unsigned jobs) {
            SweepSpec spec{base, std::move(densities), replications, std::move(modes), std::move(channels), jobs};
            if (spec.densities.empty()) spec.densities = default_densities();
            py::gil_scoped_release release;
            return run_sweep(spec);
        },
        py::arg("base") = ScenarioConfig{}, py::arg("densities") = std::vector<double>{},
        py::arg("replications") = 100,
        py::arg("modes") = std::vector{ProtocolMode::LaterationOnly, ProtocolMode::BoundingBoxOnly,
                                       ProtocolMode::Procedure},
        py::arg("channels") = std::vector{ChannelKind::FreeSpace, ChannelKind::Shadowing}, py::arg("jobs") = 1u);
    m.def("sweep_csv", &sweep_csv, py::arg("rows"));
}
