#include "attractoscope/cli/run.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <unistd.h>

#include <json.hpp>

#include "attractoscope/classical/dmkrm.hpp"
#include "attractoscope/classical/dpdds.hpp"
#include "attractoscope/diagnostics.hpp"
#include "attractoscope/errors.hpp"
#include "attractoscope/io.hpp"
#include "attractoscope/quantum/husimi.hpp"
#include "attractoscope/quantum/state_io.hpp"
#include "attractoscope/rng.hpp"
#include "attractoscope/scan/attractor.hpp"
#include "attractoscope/scan/eta_map.hpp"
#include "attractoscope/scan/search.hpp"

namespace attractoscope::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string Manifest::to_json() const {
    ordered_json j;
    j["command"] = command;
    j["config_hash"] = config_hash;
    j["status"] = status;
    if (!error.empty()) j["error"] = error;
    ordered_json files = ordered_json::array();
    for (const auto& f : this->files) files.push_back({{"name", f.name}, {"format", f.format}});
    j["files"] = files;
    return j.dump(2) + "\n";
}

namespace {

void prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    const fs::path p(dir);
    if (fs::exists(p, ec) && !fs::is_directory(p, ec)) throw IoError("output_dir '" + dir + "' is not a directory");
    fs::create_directories(p, ec);
    if (ec) throw IoError("cannot create output_dir '" + dir + "': " + ec.message());
    if (::access(p.c_str(), W_OK | X_OK) != 0) throw IoError("output_dir '" + dir + "' is not writable");
}

class Emitter {
public:
    Emitter(const RunConfig& config, Manifest& manifest) : dir_(config.output_dir), manifest_(manifest) {}

    void file(const std::string& name, const std::string& format, const std::function<void(std::ostream&)>& writer,
              bool binary = false) {
        write_file(dir_ / name, writer, binary);
        manifest_.files.push_back({name, format});
    }

    void text(const std::string& name, const std::string& format, const std::string& content) {
        file(name, format, [&](std::ostream& o) { o << content; });
    }

    void distribution(const std::string& stem, const PhaseDistribution& d) {
        file(stem + ".txt", "distribution-text", [&](std::ostream& o) { write_distribution_text(o, d); });
        file(stem + ".pgm", "pgm", [&](std::ostream& o) { write_distribution_pgm(o, d); }, true);
    }

    void manifest() {
        write_file(dir_ / "manifest.json", [&](std::ostream& o) { o << manifest_.to_json(); });
    }

private:
    fs::path dir_;
    Manifest& manifest_;
};

ordered_json point_json(const scan::ModelParams& m) {
    ordered_json j;
    j["system"] = std::string(scan::to_string(m.system));
    j["k"] = m.k();
    j[m.system == scan::System::dmkrm ? "gamma" : "Gamma"] = m.d();
    j["hbar_eff"] = m.hbar_eff();
    return j;
}

std::optional<std::size_t> classical_period(const RunConfig& c) {
    const PhasePoint ic = Ensemble::uniform_member(c.protocol.seed, 0);
    const std::uint64_t samples = 2 * c.q_max;
    std::vector<PhasePoint> orbit;
    if (c.model.system == scan::System::dmkrm) {
        orbit = classical::dmkrm_orbit(ic, c.model.dmkrm, c.protocol.n_periods, samples);
    } else {
        classical::DpddsParams p = c.model.dpdds;
        p.steps_per_period = c.protocol.steps_per_period;
        orbit = classical::dpdds_orbit(ic, p, c.protocol.n_periods, samples);
    }
    return detect_period(orbit, c.period_tol, c.q_max);
}

void run_quantum(const RunConfig& c, Emitter& out, const std::string& stem) {
    const auto rho = scan::quantum_equilibrium(c.model, c.protocol);
    const auto fold =
        c.model.system == scan::System::dmkrm ? quantum::MomentumFold::fold : quantum::MomentumFold::window;
    const auto hus = quantum::husimi(rho, c.grid, fold);
    const auto mom = quantum::momentum_distribution(rho, c.protocol.hist_bins, fold);
    out.distribution(stem, hus);
    out.file("momentum.csv", "csv", [&](std::ostream& o) { write_histogram_csv(o, mom.histogram); });
    if (c.write_state) out.file("state.txt", "density-matrix-text", [&](std::ostream& o) { quantum::write_state(o, rho); });
    ordered_json s;
    s["point"] = point_json(c.model);
    s["mode"] = "quantum";
    s["quantum_periods"] = c.protocol.quantum_periods;
    s["n_levels"] = rho.basis().size();
    s["eta"] = participation_ratio(mom.histogram);
    s["purity"] = rho.purity();
    s["edge_population"] = rho.edge_population();
    s["window_population"] = mom.window_population;
    s["escaping"] = mom.escaping;
    out.text("summary.json", "json", s.dump(2) + "\n");
}

void run_simulate(const RunConfig& c, Emitter& out) {
    if (c.mode == scan::Mode::quantum) return run_quantum(c, out, "husimi");
    const auto result = scan::attractor_distribution(c.model, c.mode, c.protocol, c.grid);
    out.distribution("distribution", result.distribution);
    const auto hist = scan::momentum_snapshot(c.model, c.mode, c.protocol, c.protocol.seed);
    out.file("momentum.csv", "csv", [&](std::ostream& o) { write_histogram_csv(o, hist); });
    ordered_json s;
    s["point"] = point_json(c.model);
    s["mode"] = std::string(scan::to_string(c.mode));
    s["eta"] = participation_ratio(hist);
    s["eta_accumulated"] = result.eta;
    s["dropped_fraction"] = result.dropped_fraction;
    if (c.mode == scan::Mode::classical) {
        const auto period = classical_period(c);
        if (period)
            s["period"] = *period;
        else
            s["period"] = nullptr;
    }
    out.text("summary.json", "json", s.dump(2) + "\n");
}

void write_map(const scan::EtaMap& map, Emitter& out, const std::string& stem) {
    out.file(stem + ".csv", "csv", [&](std::ostream& o) { scan::write_eta_csv(o, map); });
    out.file(stem + ".pgm", "pgm", [&](std::ostream& o) { scan::write_eta_pgm(o, map); }, true);
}

void run_scan(const RunConfig& c, Emitter& out) {
    const auto map = scan::eta_map(c.model, c.protocol, c.k_axis, c.d_axis, c.mode);
    write_map(map, out, "eta_map");
    ordered_json s;
    s["system"] = std::string(scan::to_string(map.system));
    s["mode"] = std::string(scan::to_string(map.mode));
    s["k_axis"] = {map.k_axis.min, map.k_axis.max, map.k_axis.count};
    s["d_axis"] = {map.d_axis.min, map.d_axis.max, map.d_axis.count};
    s["failed_fraction"] = map.failed_fraction();
    ordered_json failures = ordered_json::array();
    for (std::size_t i = 0; i < map.values.size(); ++i)
        if (map.status[i] == scan::CellStatus::failed) failures.push_back({{"cell", i}, {"error", map.errors[i]}});
    s["failures"] = failures;
    s["cell_seeds"] = map.seeds;
    out.text("scan.json", "json", s.dump(2) + "\n");
    if (map.failed_fraction() >= 0.01)
        throw ComputeError("scan failed in " + std::to_string(map.failed_fraction() * 100.0) + "% of cells");
}

scan::ChaoticTarget locate_chaotic(const RunConfig& c, Emitter& out) {
    scan::EtaMap map;
    if (c.search == scan::SearchDirections::k_only) {
        const scan::Axis line{c.model.d(), c.model.d(), 1};
        std::vector<std::size_t> cells(c.k_axis.count);
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
        map = scan::eta_map_cells(c.model, c.protocol, c.k_axis, line, scan::Mode::classical, cells);
    } else {
        map = scan::eta_map(c.model, c.protocol, c.k_axis, c.d_axis, scan::Mode::classical);
    }
    write_map(map, out, "eta_search");
    return scan::nearest_chaotic(map, c.model.k(), c.model.d(), c.eta_threshold, c.search);
}

void run_report(const RunConfig& c, Emitter& out) {
    scan::ModelParams chaotic;
    ordered_json search;
    if (c.chaotic_k) {
        chaotic = c.model.at(*c.chaotic_k, *c.chaotic_d);
        search["source"] = "config";
    } else {
        const auto target = locate_chaotic(c, out);
        chaotic = c.model.at(target.k, target.d);
        search["source"] = "nearest_chaotic";
        search["distance"] = target.distance;
        search["eta_threshold"] = c.eta_threshold;
        search["directions"] = c.search == scan::SearchDirections::k_only ? "k_only" : "both";
    }
    const auto report = scan::correspondence_report(c.model, chaotic, c.protocol, c.grid);
    out.distribution("noisy_start", report.noisy_start.distribution);
    out.distribution("quantum_start", report.quantum_start.distribution);
    out.distribution("noiseless_chaotic", report.noiseless_chaotic.distribution);
    out.distribution("quantum_chaotic", report.quantum_chaotic.distribution);
    auto j = ordered_json::parse(report.to_json());
    j["search"] = search;
    out.text("report.json", "json", j.dump(2) + "\n");
}

}  // namespace

Manifest run(const RunConfig& config) {
    config.validate();
    prepare_output_dir(config.output_dir);
    Manifest manifest;
    manifest.command = std::string(to_string(config.command));
    manifest.config_hash = config_hash(config);
    Emitter out(config, manifest);
    out.text("config.txt", "config-text", echo(config));
    try {
        switch (config.command) {
            case Command::simulate: run_simulate(config, out); break;
            case Command::husimi: run_quantum(config, out, "husimi"); break;
            case Command::scan: run_scan(config, out); break;
            case Command::report: run_report(config, out); break;
        }
    } catch (const ComputeError& e) {
        manifest.status = "failed";
        manifest.error = e.what();
        out.manifest();
        throw;
    }
    out.manifest();
    return manifest;
}

}  // namespace attractoscope::cli
