#pragma once

#include <cstddef>

#include "attractoscope/distribution.hpp"
#include "attractoscope/quantum/state.hpp"

namespace attractoscope::quantum {

// How momenta outside the analysis window are treated: folded back onto
// [-π, π) (kicked map, where x' = x + p' only sees p mod 2π) or dropped.
enum class MomentumFold { fold, window };

// H(x0, p0) = ⟨α|ρ|α⟩ / (2πħ) at every cell centre, normalized on the grid.
// With fold, the images p0 + 2πj inside the basis range are summed.
PhaseDistribution husimi(const DensityMatrix& state, const GridSpec& grid, MomentumFold fold);

// Unnormalized Husimi value at a single phase-space point.
double husimi_value(const DensityMatrix& state, double x0, double p0);

struct QuantumMomentum {
    MomentumHistogram histogram;
    double window_population = 1.0;  // population that fell inside [-π, π]
    bool escaping = false;           // window_population < 0.99
};

// Level populations rebinned onto n_bins analysis bins over [-π, π]: each level
// spreads its population uniformly over [p_n - ħ/2, p_n + ħ/2].
QuantumMomentum momentum_distribution(const DensityMatrix& state, std::size_t n_bins, MomentumFold fold);

// Same rebinning for an arbitrary population vector on the basis.
QuantumMomentum rebin_populations(const MomentumBasis& basis, const std::vector<double>& populations,
                                  std::size_t n_bins, MomentumFold fold);

}  // namespace attractoscope::quantum
