#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/quantum/basis.hpp"

namespace attractoscope::quantum {

// Diagonal unitary on the DFT position grid.
struct PositionDiagonal {
    std::vector<std::complex<double>> phases;
};

// Diagonal unitary in the momentum basis.
struct MomentumDiagonal {
    std::vector<std::complex<double>> phases;
};

// exp(-i (k/ħ) [cos x + (a/2) cos(2x + φ)]); k is the rescaled kick strength,
// so the momentum change of a point-like packet is k [sin x + a sin(2x+φ)].
PositionDiagonal build_kick_unitary(const classical::DmkrmParams& params, const MomentumBasis& basis);

// exp(-i τ n̂² / 2) with τ = ħ.
MomentumDiagonal build_free_unitary(const MomentumBasis& basis);

// exp(-i V(x, t) duration / ħ).
PositionDiagonal build_potential_propagator(const classical::DpddsParams& params, const MomentumBasis& basis,
                                            double t, double duration);

// exp(-i p̂² duration / (2 m ħ)).
MomentumDiagonal build_kinetic_propagator(const classical::DpddsParams& params, const MomentumBasis& basis,
                                          double duration);

// ρ_ij ← u_i ρ_ij conj(u_j), and the vector analogue ψ_i ← u_i ψ_i.
void conjugate_diagonal(Eigen::MatrixXcd& rho, const std::vector<std::complex<double>>& u);
void multiply_diagonal(Eigen::VectorXcd& psi, const std::vector<std::complex<double>>& u);

}  // namespace attractoscope::quantum
