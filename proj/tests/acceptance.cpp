// Acceptance suite: one PASS/FAIL line per criterion.
//
//   wsnloc_acceptance                 run every criterion
//   wsnloc_acceptance --criterion N   run criterion N only

#include <fmt/format.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "problem_gen.hpp"
#include "wsnloc/experiment.hpp"
#include "wsnloc/localization.hpp"

using namespace wsnloc;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : "n/a"; }

Verdict exact_recovery() {
    std::mt19937_64 rng(20240601);
    const Plane plane;
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto p = testing::random_problem(rng, 0.0);
        const auto sol = solve_lateration(LaterationProblem(p.anchors), plane);
        const double err = distance(sol.position, p.truth);
        worst = std::max(worst, err);
        if (!(err < 1e-6)) ++bad;
    }
    return {bad == 0, fmt::format("1000 exact problems, {} with error >= 1e-6 m, worst {:.3e} m", bad, worst)};
}

Verdict oracle_equivalence() {
    std::mt19937_64 rng(20240602);
    const Plane plane;
    int bad = 0;
    double worst = -1e300;
    for (int i = 0; i < 100; ++i) {
        const auto p = testing::random_problem(rng, 2.0);
        const LaterationProblem problem(p.anchors);
        const auto sol = solve_lateration(problem, plane);
        const double grid = lateration_objective(oracle_lateration(problem, plane, 0.25), problem);
        worst = std::max(worst, sol.objective - grid);
        if (!(sol.objective <= grid + 1e-9)) ++bad;
    }
    return {bad == 0, fmt::format("100 noisy problems, {} above the 0.25 m grid optimum, max excess {:.3e}", bad, worst)};
}

Verdict la_containment() {
    ScenarioConfig base;
    base.channel.kind = ChannelKind::FreeSpace;
    std::size_t checked = 0, outside = 0;
    for (const double density : default_densities()) {
        for (std::uint64_t rep = 0; rep < 5; ++rep) {
            auto cfg = base;
            cfg.anchor_density = density;
            const auto run = simulate_network(cfg, rep);
            for (const auto mode : {ProtocolMode::BoundingBoxOnly, ProtocolMode::Procedure}) {
                const auto result = localize(run, mode);
                for (std::size_t i = 0; i < result.nodes.size(); ++i) {
                    const auto& node = result.nodes[i];
                    if (!result.evaluated[i] || !node.estimate || node.estimate->protocol != ProtocolKind::BoundingBox)
                        continue;
                    std::vector<BoxAnchor> anchors;
                    for (std::size_t k = 0; k < node.estimate->anchors_used; ++k) {
                        const auto& e = node.ranging_table.at(k);
                        anchors.push_back({e.anchor_position, cfg.radio.nominal_range_m, e.mean_rssi_dbm});
                    }
                    const auto la = raw_location_area(anchors, cfg.plane);
                    ++checked;
                    if (la.empty() || !la.contains(node.true_position)) ++outside;
                }
            }
        }
    }
    return {checked > 0 && outside == 0,
            fmt::format("{} Bounding-Box-located nodes over all densities, {} outside their raw LA", checked, outside)};
}

// Desk-scale sweep shared by criteria 4-9.
class Desk {
public:
    const std::vector<SweepRow>& rows() {
        if (rows_.empty()) {
            SweepSpec spec;
            spec.densities = default_densities();
            spec.replications = 100;
            spec.modes = {ProtocolMode::LaterationOnly, ProtocolMode::BoundingBoxOnly, ProtocolMode::Procedure};
            spec.channels = {ChannelKind::FreeSpace, ChannelKind::Shadowing};
            spec.jobs = std::max(1u, std::thread::hardware_concurrency());
            rows_ = run_sweep(spec);
        }
        return rows_;
    }

    const SweepRow& at(ChannelKind ch, ProtocolMode mode, double density) {
        for (const auto& r : rows())
            if (r.channel == ch && r.mode == mode && std::abs(r.density - density) < 1e-9) return r;
        throw std::logic_error("missing sweep cell");
    }

private:
    std::vector<SweepRow> rows_;
};

Desk desk;

constexpr ChannelKind kChannels[] = {ChannelKind::FreeSpace, ChannelKind::Shadowing};
constexpr ProtocolMode kModes[] = {ProtocolMode::LaterationOnly, ProtocolMode::BoundingBoxOnly, ProtocolMode::Procedure};

Verdict located_nodes() {
    bool ok = true;
    std::string detail;
    for (const auto ch : kChannels) {
        const double lat = desk.at(ch, ProtocolMode::LaterationOnly, 0.3).located.mean;
        const double bb = desk.at(ch, ProtocolMode::BoundingBoxOnly, 0.3).located.mean;
        ok = ok && lat >= 0.70 && lat <= 1.0 && lat < bb && bb >= 0.95;
        detail += fmt::format("{}: lateration {:.4f}, bbox {:.4f}; ", to_string(ch), lat, bb);
    }
    return {ok, "density 0.3 " + detail};
}

Verdict procedure_coverage() {
    bool ok = true;
    std::string detail;
    for (const auto ch : kChannels) {
        const double v = desk.at(ch, ProtocolMode::Procedure, 0.3).located.mean;
        ok = ok && v >= 0.99;
        detail += fmt::format("{} @0.3 {:.4f}; ", to_string(ch), v);
    }
    double free_min = 1.0;
    for (const double d : default_densities()) {
        if (d < 0.3 - 1e-9) continue;
        free_min = std::min(free_min, desk.at(ChannelKind::FreeSpace, ProtocolMode::Procedure, d).located.mean);
    }
    ok = ok && free_min >= 0.995;
    detail += fmt::format("freespace min over >=0.3 {:.4f}; ", free_min);
    std::optional<double> full_at;
    for (const double d : default_densities()) {
        if (desk.at(ChannelKind::Shadowing, ProtocolMode::Procedure, d).located.mean >= 0.995) {
            full_at = d;
            break;
        }
    }
    ok = ok && full_at && *full_at <= 0.6 + 1e-9;
    detail += fmt::format("shadowing reaches 1.00 at density {}", fmt_opt(full_at));
    return {ok, detail};
}

Verdict energy_difference() {
    double worst = 0.0;
    for (const auto ch : kChannels) {
        for (const double d : default_densities()) {
            const double lat = desk.at(ch, ProtocolMode::LaterationOnly, d).energy_mj.mean;
            const double pme = desk.at(ch, ProtocolMode::Procedure, d).energy_mj.mean;
            worst = std::max(worst, std::abs(pme - lat) / lat);
        }
    }
    return {worst <= 0.05, fmt::format("max relative energy difference procedure vs lateration {:.4f}%", 100.0 * worst)};
}

Verdict error_ordering() {
    bool order_ok = true;
    std::size_t compared = 0;
    std::string violations;
    for (const auto mode : kModes) {
        for (const double d : default_densities()) {
            const auto& f = desk.at(ChannelKind::FreeSpace, mode, d);
            const auto& s = desk.at(ChannelKind::Shadowing, mode, d);
            if (f.n_lateration + f.n_bbox < 30 || s.n_lateration + s.n_bbox < 30 || !f.error_m || !s.error_m) continue;
            ++compared;
            if (!(s.error_m->mean > f.error_m->mean)) {
                order_ok = false;
                violations += fmt::format(" {}@{:.1f}", to_string(mode), d);
            }
        }
    }
    bool band_ok = true;
    std::string band;
    for (const double d : default_densities()) {
        if (d < 0.4 - 1e-9) continue;
        const auto& err = desk.at(ChannelKind::FreeSpace, ProtocolMode::LaterationOnly, d).error_m;
        const bool in = err && err->mean >= 2.0 && err->mean <= 10.0;
        band_ok = band_ok && in;
        if (!in) band += fmt::format(" {:.1f}:{}", d, err ? fmt::format("{:.3f}", err->mean) : "n/a");
    }
    return {order_ok && band_ok,
            fmt::format("shadowing > freespace in {} cells{}{}; lateration freespace error in [2,10] m for >=0.4{}",
                        compared, order_ok ? "" : ", violated at", violations,
                        band_ok ? "" : ", outside at" + band)};
}

Verdict composability_gain() {
    bool ok = true;
    for (const auto ch : kChannels) {
        for (const double d : default_densities()) {
            ok = ok && desk.at(ch, ProtocolMode::Procedure, d).located.mean >=
                           desk.at(ch, ProtocolMode::LaterationOnly, d).located.mean;
        }
    }
    bool strict = false;
    std::string detail;
    for (const double d : {0.1, 0.2}) {
        const double p = desk.at(ChannelKind::FreeSpace, ProtocolMode::Procedure, d).located.mean;
        const double l = desk.at(ChannelKind::FreeSpace, ProtocolMode::LaterationOnly, d).located.mean;
        strict = strict || p > l;
        detail += fmt::format(" {:.1f}: {:.4f} vs {:.4f};", d, p, l);
    }
    return {ok && strict, fmt::format("procedure >= lateration everywhere: {}; freespace{}", ok ? "yes" : "no", detail)};
}

Verdict anchors_connected() {
    bool monotone = true;
    bool below = true;
    std::string violations;
    for (const auto ch : kChannels) {
        double prev = -1.0;
        for (const double d : default_densities()) {
            const double v = desk.at(ch, ProtocolMode::Procedure, d).anchors.mean;
            monotone = monotone && v >= prev;
            prev = v;
        }
    }
    for (const double d : default_densities()) {
        const double f = desk.at(ChannelKind::FreeSpace, ProtocolMode::Procedure, d).anchors.mean;
        const double s = desk.at(ChannelKind::Shadowing, ProtocolMode::Procedure, d).anchors.mean;
        if (s > f) {
            below = false;
            violations += fmt::format(" {:.1f}: {:.2f} > {:.2f};", d, s, f);
        }
    }
    return {monotone && below, fmt::format("non-decreasing in density: {}; shadowing <= freespace: {}{}",
                                           monotone ? "yes" : "no", below ? "yes" : "no, at", violations)};
}

Verdict determinism() {
#ifdef WSNLOC_CLI_PATH
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "wsnloc_acceptance_determinism";
    fs::create_directories(dir);
    std::string outputs[2];
    for (int i = 0; i < 2; ++i) {
        const auto out = dir / fmt::format("sweep{}.csv", i);
        const auto cmd = fmt::format("{} sweep --reps 5 --seed 11 --out {}", WSNLOC_CLI_PATH, out.string());
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            fs::remove_all(dir);
            return {false, "CLI sweep exited with an error"};
        }
        std::ifstream in(out, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        outputs[i] = s.str();
    }
    fs::remove_all(dir);
    return {!outputs[0].empty() && outputs[0] == outputs[1],
            fmt::format("two identical sweep invocations, {} bytes, identical: {}", outputs[0].size(),
                        outputs[0] == outputs[1] ? "yes" : "no")};
#else
    return {false, "CLI not built"};
#endif
}

const std::map<int, std::pair<const char*, std::function<Verdict()>>> kCriteria = {
    {1, {"exact recovery", exact_recovery}},
    {2, {"oracle equivalence", oracle_equivalence}},
    {3, {"location area containment", la_containment}},
    {4, {"located nodes per protocol", located_nodes}},
    {5, {"procedure coverage", procedure_coverage}},
    {6, {"energy difference", energy_difference}},
    {7, {"error ordering", error_ordering}},
    {8, {"composability gain", composability_gain}},
    {9, {"anchors connected", anchors_connected}},
    {10, {"determinism", determinism}},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            fmt::print(stderr, "usage: {} [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (selected.empty())
        for (const auto& [n, _] : kCriteria) selected.push_back(n);

    int failures = 0;
    for (const int n : selected) {
        const auto it = kCriteria.find(n);
        if (it == kCriteria.end()) {
            fmt::print(stderr, "no criterion {}\n", n);
            return 2;
        }
        Verdict v;
        try {
            v = it->second.second();
        } catch (const std::exception& e) {
            v = {false, fmt::format("exception: {}", e.what())};
        }
        fmt::print("[{}] criterion {}: {}: {}\n", v.pass ? "PASS" : "FAIL", n, it->second.first, v.detail);
        std::fflush(stdout);
        if (!v.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
