#pragma once

#include <cstdint>
#include <vector>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/distribution.hpp"
#include "attractoscope/geometry.hpp"
#include "attractoscope/rng.hpp"

namespace attractoscope::classical {

// k [sin x + a sin(2x + φ)], the momentum change of one kick.
double dmkrm_kick(double x, const DmkrmParams& params);

// One map iteration. Pass a noise source iff params.noise; the source's sigma
// is normally sqrt(ħ_eff). Throws DivergenceError(step) on a non-finite or
// runaway momentum.
PhasePoint dmkrm_step(PhasePoint s, const DmkrmParams& params, GaussianNoise* noise,
                      std::uint64_t step = 0);

// Noise source for ensemble member `index` of an ensemble seeded with `seed`.
GaussianNoise dmkrm_member_noise(const DmkrmParams& params, std::uint64_t seed, std::uint64_t index);

struct EnsembleEvolution {
    Ensemble final_state;              // converged members only, in member order
    MomentumHistogram histogram;       // final momenta folded onto [-π, π)
    std::vector<std::size_t> diverged; // indices of members that blew up
};

// Iterates every member n_steps times. More than 1% divergent members is a
// ComputeError.
EnsembleEvolution dmkrm_evolve_ensemble(const Ensemble& e, const DmkrmParams& params,
                                        std::uint64_t n_steps, unsigned threads = 1,
                                        std::size_t n_bins = kDefaultBins);

// Orbit of one point, sampled after every iteration following `transient`.
std::vector<PhasePoint> dmkrm_orbit(PhasePoint start, const DmkrmParams& params,
                                    std::uint64_t transient, std::uint64_t samples,
                                    GaussianNoise* noise = nullptr);

// Streams a uniform ensemble of n_ic members through n_steps iterations and
// accumulates the last keep_last steps (momenta folded) on the grid.
PhaseCounts dmkrm_accumulate(std::uint64_t seed, std::size_t n_ic, const DmkrmParams& params,
                             std::uint64_t n_steps, std::uint64_t keep_last, const GridSpec& grid,
                             unsigned threads = 1);

}  // namespace attractoscope::classical
