#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "attractoscope/distribution.hpp"
#include "attractoscope/quantum/basis.hpp"
#include "attractoscope/quantum/state.hpp"
#include "attractoscope/scan/model.hpp"

namespace attractoscope::scan {

// Largest |p| met by a noisy-classical pilot ensemble over the quantum run
// duration, sampled at every integration step.
double pilot_momentum_envelope(const ModelParams& model, const ScanProtocol& protocol);

// Basis for a quantum run: protocol.n_levels if set, otherwise the smallest
// size keeping the pilot envelope plus 8 sqrt(ħ) inside the leak-guard margin.
quantum::MomentumBasis quantum_basis(const ModelParams& model, const ScanProtocol& protocol);

// Density matrix after protocol.quantum_periods starting from the uniform
// mixture |p_n| ≤ π. Throws ComputeError on a truncation leak.
quantum::DensityMatrix quantum_equilibrium(const ModelParams& model, const ScanProtocol& protocol);

// η of one parameter point. classical/noisy: momentum histogram of the final
// ensemble (kicked map, momenta folded) or of the kept stroboscopic window
// (driven system). quantum: rebinned level populations after quantum_periods.
double cell_eta(const ModelParams& model, Mode mode, const ScanProtocol& protocol, std::uint64_t seed);

// The momentum histogram behind cell_eta.
MomentumHistogram momentum_snapshot(const ModelParams& model, Mode mode, const ScanProtocol& protocol,
                                    std::uint64_t seed);

struct AttractorResult {
    PhaseDistribution distribution;
    double eta = 0.0;               // participation ratio of the momentum marginal
    double dropped_fraction = 0.0;  // classical: points outside the p-window
    std::size_t n_levels = 0;       // quantum: basis size
    double purity = 0.0;            // quantum
};

// Stationary distribution on the grid. Classical modes accumulate the last
// keep_last steps of n_ic members; quantum mode returns the Husimi function.
// Momenta are folded for the kicked map and windowed for the driven system.
AttractorResult attractor_distribution(const ModelParams& model, Mode mode, const ScanProtocol& protocol,
                                       const GridSpec& grid = {});

struct CorrespondenceReport {
    ModelParams start;
    ModelParams chaotic;  // noiseless chaotic counterpart
    AttractorResult noisy_start;
    AttractorResult quantum_start;
    AttractorResult noiseless_chaotic;
    AttractorResult quantum_chaotic;
    double overlap_noisy_quantum = 0.0;
    double overlap_noisy_quantum_chaotic = 0.0;
    double overlap_noisy_noiseless_chaotic = 0.0;

    // Single-record JSON text (parameters, η values, overlaps, file names).
    std::string to_json(const std::string& file_prefix = "") const;
};

CorrespondenceReport correspondence_report(const ModelParams& start, const ModelParams& chaotic,
                                           const ScanProtocol& protocol, const GridSpec& grid = {});

}  // namespace attractoscope::scan
