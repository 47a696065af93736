#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/quantum/basis.hpp"
#include "attractoscope/quantum/dissipator.hpp"
#include "attractoscope/quantum/fourier.hpp"
#include "attractoscope/quantum/operators.hpp"
#include "attractoscope/rng.hpp"

namespace attractoscope::quantum {

// Monte Carlo wavefunction unravelling of the same first-order Kraus map used
// by the density-matrix engine. Each trajectory owns an engine derived from
// (seed, index), so results do not depend on how trajectories are scheduled.
class TrajectoryBundle {
public:
    // Trajectory i starts in a momentum eigenstate drawn uniformly from the
    // levels with |p_n| ≤ p_half, reproducing the uniform incoherent mixture.
    TrajectoryBundle(const MomentumBasis& basis, std::size_t count, std::uint64_t seed, double p_half);

    const MomentumBasis& basis() const { return basis_; }
    std::size_t size() const { return states_.size(); }
    const Eigen::VectorXcd& state(std::size_t i) const { return states_[i]; }

    void evolve_dmkrm(const classical::DmkrmParams& params, std::size_t periods, unsigned threads = 1);
    void evolve_dpdds(const classical::DpddsParams& params, std::size_t periods, unsigned threads = 1);

    // Mean level populations and their standard errors across trajectories.
    std::vector<double> populations() const;
    std::vector<double> population_standard_errors() const;

private:
    MomentumBasis basis_;
    std::vector<Eigen::VectorXcd> states_;
    std::vector<Engine> engines_;
};

// One substep of jumps or no-jump decay on a normalized vector.
void trajectory_substep(Eigen::VectorXcd& psi, const MomentumBasis& basis, const DissipatorSpec& spec, Engine& engine);

}  // namespace attractoscope::quantum
