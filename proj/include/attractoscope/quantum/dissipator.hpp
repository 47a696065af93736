#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "attractoscope/quantum/basis.hpp"
#include "attractoscope/quantum/state.hpp"

namespace attractoscope::quantum {

// Both ladder families lower |n| by one with amplitude sqrt(rate · |n|):
//   L+ = Σ_{n≥0} sqrt(n+1) |n⟩⟨n+1|,  L- = Σ_{n≥0} sqrt(n+1) |-n⟩⟨-n-1|.
// The kicked map uses rate g² = -ln γ over unit time; the driven system uses
// rate ε = Γ. Written with j = n + 1 the two forms are the same operator.
enum class LadderKind { dmkrm, dpdds };

inline constexpr double kKrausValidityBound = 0.05;

struct DissipatorSpec {
    LadderKind kind = LadderKind::dmkrm;
    double rate = 0.0;
    double dt_sub = 0.0;

    // rate · n_max · dt_sub ≤ 0.05, else ComputeError("substep too coarse").
    void validate(const MomentumBasis& basis) const;
};

// Substep count that keeps rate · n_max · (duration / count) within the bound.
std::size_t substeps_for(double rate, double duration, const MomentumBasis& basis);

// Spec for integrating `duration` with the minimal valid substep.
DissipatorSpec make_dissipator(LadderKind kind, double rate, double duration, const MomentumBasis& basis);

// One Kraus substep ρ ← C0 ρ C0† + Σ± C1± ρ C1±†, then unit trace. The no-jump
// element is C0 = sqrt(1 - Σ C1±† C1±), which equals 1 - ½ Σ C1±† C1± to first
// order and keeps the set exactly complete, so ⟨n̂⟩ contracts by exactly
// (1 - rate dt_sub) per substep.
// Reference implementation working on the full matrix.
void dissipative_substep(DensityMatrix& state, const DissipatorSpec& spec);

// `count` consecutive substeps. Each diagonal line of the ± blocks evolves on
// its own under the ladder map, so lines are processed independently and the
// trace is restored once at the end (equivalent, since every step is linear).
// Returns |trace - 1| before the final renormalization.
double dissipate(DensityMatrix& state, const DissipatorSpec& spec, std::size_t count);

// Dense Kraus set {C0, C1+, C1-} for verification.
std::vector<Eigen::MatrixXd> kraus_operators(const MomentumBasis& basis, const DissipatorSpec& spec);

// max |Σ C†C - 1|
double kraus_completeness_residual(const std::vector<Eigen::MatrixXd>& kraus);

}  // namespace attractoscope::quantum
