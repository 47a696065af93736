#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "attractoscope/scan/model.hpp"

namespace attractoscope::scan {

struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t count = 2;

    void validate(const char* name) const;
    double value(std::size_t i) const;
    // Position rescaled to [0, 1] over the window (0 for a single-value axis).
    double normalized(double v) const;
    // Nearest grid index to v.
    std::size_t nearest(double v) const;

    friend bool operator==(const Axis&, const Axis&) = default;
};

enum class CellStatus { ok, failed };

struct EtaMap {
    System system = System::dmkrm;
    Mode mode = Mode::classical;
    Axis k_axis;
    Axis d_axis;
    std::vector<double> values;  // index = id * k_axis.count + ik
    std::vector<CellStatus> status;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> errors;  // empty for ok cells

    std::size_t index(std::size_t ik, std::size_t id) const { return id * k_axis.count + ik; }
    double at(std::size_t ik, std::size_t id) const { return values[index(ik, id)]; }
    double failed_fraction() const;
};

// Default windows: kicked map k ∈ [2, 7.5] × γ ∈ [0.05, 0.95], driven system
// k ∈ [2, 6] × Γ ∈ [0.02, 0.20], 111 × 91 cells (28 × 23 for the coarse preset).
Axis default_k_axis(System system, bool coarse = false);
Axis default_d_axis(System system, bool coarse = false);

// Seed of cell `index` for a scan with the given base seed.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t index);

// Evaluates every cell; failures are recorded per cell instead of aborting.
// Cells run in parallel over protocol.threads and depend only on their seed.
EtaMap eta_map(const ModelParams& base, const ScanProtocol& protocol, const Axis& k_axis, const Axis& d_axis,
               Mode mode);

// Evaluates only the listed cell indices (others are marked failed with
// "not evaluated"); used for sub-sampled quantum scans.
EtaMap eta_map_cells(const ModelParams& base, const ScanProtocol& protocol, const Axis& k_axis,
                     const Axis& d_axis, Mode mode, const std::vector<std::size_t>& cells);

// "k,d,eta,status" rows, k fastest.
void write_eta_csv(std::ostream& out, const EtaMap& map);
// Heatmap with k along x and the largest d on the top row; failed cells black.
void write_eta_pgm(std::ostream& out, const EtaMap& map);

}  // namespace attractoscope::scan
