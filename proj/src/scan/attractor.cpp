#include "attractoscope/scan/attractor.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "attractoscope/classical/dmkrm.hpp"
#include "attractoscope/classical/dpdds.hpp"
#include "attractoscope/diagnostics.hpp"
#include "attractoscope/errors.hpp"
#include "attractoscope/parallel.hpp"
#include "attractoscope/quantum/evolution.hpp"
#include "attractoscope/quantum/husimi.hpp"
#include "attractoscope/rng.hpp"

namespace attractoscope::scan {

namespace {

constexpr std::size_t kPilotMembers = 2048;
constexpr std::uint64_t kPilotStream = 0x9b1c;
constexpr double kLeakMarginSigmas = 8.0;

classical::DpddsParams quantum_dpdds(const ModelParams& model, const ScanProtocol& protocol) {
    classical::DpddsParams p = model.dpdds;
    p.steps_per_period = protocol.quantum_steps_per_period;
    return p;
}

quantum::MomentumFold fold_for(System s) {
    return s == System::dmkrm ? quantum::MomentumFold::fold : quantum::MomentumFold::window;
}

MomentumHistogram momentum_marginal(const PhaseCounts& counts) {
    const auto& g = counts.grid();
    std::vector<double> mass(g.np, 0.0);
    const auto c = counts.counts();
    for (std::size_t ip = 0; ip < g.np; ++ip)
        for (std::size_t ix = 0; ix < g.nx; ++ix) mass[ip] += static_cast<double>(c[ip * g.nx + ix]);
    return MomentumHistogram(std::move(mass), g.p_min, g.p_max);
}

}  // namespace

double pilot_momentum_envelope(const ModelParams& model, const ScanProtocol& protocol) {
    model.validate();
    const std::uint64_t seed = split_seed(protocol.seed, Stream::trajectory, kPilotStream);
    std::vector<double> peak(kPilotMembers, kPi);
    if (model.system == System::dmkrm) {
        classical::DmkrmParams p = model.dmkrm;
        p.noise = true;
        parallel_for(kPilotMembers, protocol.threads, [&](std::size_t i) {
            PhasePoint s = Ensemble::uniform_member(seed, i);
            auto noise = classical::dmkrm_member_noise(p, seed, i);
            try {
                for (std::size_t t = 0; t < protocol.quantum_periods; ++t) {
                    s = classical::dmkrm_step(s, p, &noise, t);
                    peak[i] = std::max(peak[i], std::abs(s.p));
                }
            } catch (const DivergenceError&) {
            }
        });
    } else {
        classical::DpddsParams p = quantum_dpdds(model, protocol);
        p.noise = true;
        parallel_for(kPilotMembers, protocol.threads, [&](std::size_t i) {
            const PhasePoint ic = Ensemble::uniform_member(seed, i);
            classical::DpddsState s{ic.x, ic.p / p.mass, 0.0};
            auto noise = classical::dpdds_member_noise(p, seed, i);
            std::uint64_t step = 0;
            try {
                for (std::size_t k = 0; k < protocol.quantum_periods; ++k) {
                    for (std::size_t j = 0; j < p.steps_per_period; ++j, ++step) {
                        s = classical::dpdds_step(s, p, &noise, step);
                        peak[i] = std::max(peak[i], std::abs(p.mass * s.v));
                    }
                    s.t = kTwoPi * static_cast<double>(k + 1);
                }
            } catch (const DivergenceError&) {
            }
        });
    }
    return *std::max_element(peak.begin(), peak.end());
}

quantum::MomentumBasis quantum_basis(const ModelParams& model, const ScanProtocol& protocol) {
    const double hbar = model.hbar_eff();
    if (protocol.n_levels != 0) return quantum::MomentumBasis(protocol.n_levels, hbar);
    const double envelope = pilot_momentum_envelope(model, protocol);
    const double reach = (envelope + kLeakMarginSigmas * std::sqrt(hbar)) / 0.95;
    return quantum::MomentumBasis::covering(reach, hbar);
}

quantum::DensityMatrix quantum_equilibrium(const ModelParams& model, const ScanProtocol& protocol) {
    model.validate();
    const auto basis = quantum_basis(model, protocol);
    auto rho = quantum::DensityMatrix::uniform_mixture(basis, kPi);
    if (model.system == System::dmkrm) {
        quantum::DmkrmPropagator(model.dmkrm, basis).evolve(rho, protocol.quantum_periods);
    } else {
        quantum::DpddsPropagator(quantum_dpdds(model, protocol), basis).evolve(rho, protocol.quantum_periods);
    }
    return rho;
}

MomentumHistogram momentum_snapshot(const ModelParams& model, Mode mode, const ScanProtocol& protocol,
                                    std::uint64_t seed) {
    protocol.validate(model.system, mode);
    if (mode == Mode::quantum) {
        const auto rho = quantum_equilibrium(model, protocol);
        return quantum::momentum_distribution(rho, protocol.hist_bins, fold_for(model.system)).histogram;
    }
    const ModelParams m = model.with_noise(mode == Mode::noisy);
    const Ensemble e = Ensemble::uniform(seed, protocol.n_ic);
    if (m.system == System::dmkrm)
        return classical::dmkrm_evolve_ensemble(e, m.dmkrm, protocol.n_periods, protocol.threads, protocol.hist_bins)
            .histogram;
    classical::DpddsParams p = m.dpdds;
    p.steps_per_period = protocol.steps_per_period;
    return classical::dpdds_stroboscopic_evolve(e, p, protocol.n_periods, protocol.keep_last, protocol.threads,
                                                protocol.hist_bins)
        .histogram;
}

double cell_eta(const ModelParams& model, Mode mode, const ScanProtocol& protocol, std::uint64_t seed) {
    return participation_ratio(momentum_snapshot(model, mode, protocol, seed));
}

AttractorResult attractor_distribution(const ModelParams& model, Mode mode, const ScanProtocol& protocol,
                                       const GridSpec& grid) {
    protocol.validate(model.system, mode);
    grid.validate();
    AttractorResult out;
    if (mode == Mode::quantum) {
        const auto rho = quantum_equilibrium(model, protocol);
        out.distribution = quantum::husimi(rho, grid, fold_for(model.system));
        out.eta = participation_ratio(
            quantum::momentum_distribution(rho, protocol.hist_bins, fold_for(model.system)).histogram);
        out.n_levels = rho.basis().size();
        out.purity = rho.purity();
        return out;
    }
    const ModelParams m = model.with_noise(mode == Mode::noisy);
    m.validate();
    PhaseCounts counts = [&] {
        if (m.system == System::dmkrm)
            return classical::dmkrm_accumulate(protocol.seed, protocol.n_ic, m.dmkrm, protocol.n_periods,
                                               protocol.keep_last, grid, protocol.threads);
        classical::DpddsParams p = m.dpdds;
        p.steps_per_period = protocol.steps_per_period;
        return classical::dpdds_accumulate(protocol.seed, protocol.n_ic, p, protocol.n_periods, protocol.keep_last,
                                           grid, protocol.threads);
    }();
    out.distribution = counts.normalized();
    out.eta = participation_ratio(momentum_marginal(counts));
    out.dropped_fraction = counts.dropped_fraction();
    return out;
}

CorrespondenceReport correspondence_report(const ModelParams& start, const ModelParams& chaotic,
                                           const ScanProtocol& protocol, const GridSpec& grid) {
    if (start.system != chaotic.system) throw ConfigError("report points belong to different systems");
    CorrespondenceReport r;
    r.start = start;
    r.chaotic = chaotic;
    r.noisy_start = attractor_distribution(start, Mode::noisy, protocol, grid);
    r.quantum_start = attractor_distribution(start, Mode::quantum, protocol, grid);
    r.noiseless_chaotic = attractor_distribution(chaotic, Mode::classical, protocol, grid);
    r.quantum_chaotic = attractor_distribution(chaotic, Mode::quantum, protocol, grid);
    r.overlap_noisy_quantum = overlap(r.noisy_start.distribution, r.quantum_start.distribution);
    r.overlap_noisy_quantum_chaotic = overlap(r.noisy_start.distribution, r.quantum_chaotic.distribution);
    r.overlap_noisy_noiseless_chaotic = overlap(r.noisy_start.distribution, r.noiseless_chaotic.distribution);
    return r;
}

std::string CorrespondenceReport::to_json(const std::string& file_prefix) const {
    using nlohmann::ordered_json;
    auto point = [](const ModelParams& m) {
        ordered_json j;
        j["k"] = m.k();
        j[m.system == System::dmkrm ? "gamma" : "Gamma"] = m.d();
        return j;
    };
    auto entry = [&](const char* name, const AttractorResult& a, const ModelParams& m, const char* mode) {
        ordered_json j;
        j["mode"] = mode;
        j["point"] = point(m);
        j["eta"] = a.eta;
        if (a.n_levels) {
            j["n_levels"] = a.n_levels;
            j["purity"] = a.purity;
        } else {
            j["dropped_fraction"] = a.dropped_fraction;
        }
        j["file"] = file_prefix + name + ".txt";
        return j;
    };
    ordered_json j;
    j["system"] = std::string(to_string(start.system));
    j["hbar_eff"] = start.hbar_eff();
    j["start"] = point(start);
    j["chaotic"] = point(chaotic);
    j["distributions"] = {
        {"noisy_start", entry("noisy_start", noisy_start, start, "noisy")},
        {"quantum_start", entry("quantum_start", quantum_start, start, "quantum")},
        {"noiseless_chaotic", entry("noiseless_chaotic", noiseless_chaotic, chaotic, "classical")},
        {"quantum_chaotic", entry("quantum_chaotic", quantum_chaotic, chaotic, "quantum")},
    };
    j["overlaps"] = {
        {"noisy_start__quantum_start", overlap_noisy_quantum},
        {"noisy_start__quantum_chaotic", overlap_noisy_quantum_chaotic},
        {"noisy_start__noiseless_chaotic", overlap_noisy_noiseless_chaotic},
    };
    return j.dump(2) + "\n";
}

}  // namespace attractoscope::scan
