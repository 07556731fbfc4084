// wsnloc: run localization scenarios, density sweeps and topology dumps.
//
// Exit status: 0 success, 1 configuration or usage error, 2 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wsnloc/config_io.hpp"
#include "wsnloc/deployment.hpp"
#include "wsnloc/experiment.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::string config_path;
    std::optional<double> density;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> channel;
    std::optional<std::string> mode;
    std::optional<std::string> preset;
    std::string out;
};

void add_common(CLI::App& cmd, CommonArgs& args) {
    cmd.add_option("-c,--config", args.config_path, "Scenario file (key = value)");
    cmd.add_option("--density", args.density, "Anchor density in [0, 1]");
    cmd.add_option("--seed", args.seed, "RNG seed");
    cmd.add_option("--channel", args.channel, "freespace | shadowing");
    cmd.add_option("--mode", args.mode, "lateration | bbox | pme");
    cmd.add_option("--preset", args.preset, "default | table2-raw");
    cmd.add_option("-o,--out", args.out, "Output CSV (default: stdout)");
}

wsnloc::ConfigOverrides overrides_from(const CommonArgs& args) {
    wsnloc::ConfigOverrides o;
    o.anchor_density = args.density;
    o.rng_seed = args.seed;
    o.preset = args.preset;
    try {
        if (args.channel) o.channel = wsnloc::parse_channel(*args.channel);
        if (args.mode) o.mode = wsnloc::parse_mode(*args.mode);
    } catch (const std::invalid_argument& e) {
        throw wsnloc::ConfigError(e.what());
    }
    return o;
}

template <typename Writer>
void write_output(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoFailure(fmt::format("cannot open '{}' for writing", path));
    write(file);
    file.flush();
    if (!file) throw IoFailure(fmt::format("failed writing '{}'", path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localization simulator for randomly deployed wireless sensor networks"};
    app.require_subcommand(1);

    CommonArgs run_args;
    std::string trace_path;
    auto* run_cmd = app.add_subcommand("run", "One replication; per-node CSV");
    add_common(*run_cmd, run_args);
    run_cmd->add_option("--trace", trace_path, "Write the MAC event trace CSV here");

    CommonArgs sweep_args;
    int reps = 100;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<double> densities;
    auto* sweep_cmd = app.add_subcommand("sweep", "Density sweep; one CSV row per (channel, mode, density)");
    add_common(*sweep_cmd, sweep_args);
    sweep_cmd->add_option("--reps", reps, "Replications per density")->capture_default_str();
    sweep_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    sweep_cmd->add_option("--densities", densities, "Anchor densities (default 0.1 .. 1.0)");

    CommonArgs topo_args;
    auto* topo_cmd = app.add_subcommand("dump-topology", "Deployment CSV: node_id,role,x,y");
    add_common(*topo_cmd, topo_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run_cmd) {
            const auto config = wsnloc::load_config(run_args.config_path, overrides_from(run_args));
            std::vector<wsnloc::TraceEvent> trace;
            const auto run =
                wsnloc::simulate_network(config, config.rng_seed, trace_path.empty() ? nullptr : &trace);
            const auto result = wsnloc::localize(run, config.mode);
            wsnloc::validate_nodes(result);
            write_output(run_args.out, [&](std::ostream& os) { wsnloc::write_nodes_csv(os, result); });
            if (!trace_path.empty()) {
                write_output(trace_path, [&](std::ostream& os) { wsnloc::write_trace_csv(os, trace); });
            }
        } else if (*sweep_cmd) {
            wsnloc::SweepSpec spec;
            const auto overrides = overrides_from(sweep_args);
            spec.base = wsnloc::load_config(sweep_args.config_path, overrides);
            spec.densities = densities.empty() ? wsnloc::default_densities() : densities;
            if (sweep_args.density) spec.densities = {*sweep_args.density};
            for (double d : spec.densities) {
                if (!(d >= 0.0 && d <= 1.0)) throw wsnloc::ConfigError("anchor_density: must be in [0, 1]");
            }
            spec.replications = reps;
            if (reps < 2) throw wsnloc::ConfigError("reps: must be >= 2");
            spec.jobs = jobs;
            spec.channels = overrides.channel
                                ? std::vector{*overrides.channel}
                                : std::vector{wsnloc::ChannelKind::FreeSpace, wsnloc::ChannelKind::Shadowing};
            spec.modes = overrides.mode ? std::vector{*overrides.mode}
                                        : std::vector{wsnloc::ProtocolMode::LaterationOnly,
                                                      wsnloc::ProtocolMode::BoundingBoxOnly,
                                                      wsnloc::ProtocolMode::Procedure};
            const auto rows = wsnloc::run_sweep(spec);
            write_output(sweep_args.out, [&](std::ostream& os) { wsnloc::write_sweep_csv(os, rows); });
        } else if (*topo_cmd) {
            const auto config = wsnloc::load_config(topo_args.config_path, overrides_from(topo_args));
            wsnloc::RandomStream rng(config.rng_seed, "deploy");
            const auto deployment = wsnloc::deploy(config, rng);
            write_output(topo_args.out,
                         [&](std::ostream& os) { wsnloc::write_topology_csv(os, deployment); });
        }
    } catch (const wsnloc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wsnloc::ConfigIoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoFailure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
