#pragma once

#include <cstddef>
#include <vector>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/quantum/dissipator.hpp"
#include "attractoscope/quantum/fourier.hpp"
#include "attractoscope/quantum/operators.hpp"
#include "attractoscope/quantum/state.hpp"

namespace attractoscope::quantum {

// Per-period bookkeeping of a density-matrix run.
struct PeriodLog {
    double trace_drift = 0.0;   // |tr ρ - 1| before renormalization
    double edge_population = 0.0;
    double purity = 0.0;
};

// One map period of the open kicked system: ladder dissipation over unit time
// (contraction γ of ⟨n̂⟩), then the kick, then free rotation.
class DmkrmPropagator {
public:
    DmkrmPropagator(const classical::DmkrmParams& params, const MomentumBasis& basis);

    PeriodLog period(DensityMatrix& state) const;
    std::vector<PeriodLog> evolve(DensityMatrix& state, std::size_t periods) const;

    const DissipatorSpec& dissipator() const { return dissipator_; }
    std::size_t substeps() const { return substeps_; }
    const PositionDiagonal& kick() const { return kick_; }
    const MomentumDiagonal& free() const { return free_; }
    const FourierTransform& fourier() const { return fft_; }

private:
    MomentumBasis basis_;
    DissipatorSpec dissipator_;
    std::size_t substeps_;
    PositionDiagonal kick_;
    MomentumDiagonal free_;
    FourierTransform fft_;
};

DensityMatrix dmkrm_quantum_period(DensityMatrix state, const classical::DmkrmParams& params);

// Split-operator propagation of the driven system. A step of length dt is
// V(t+dt/2)/2 → kinetic → ladder dissipation → V(t+dt/2)/2; consecutive half
// potentials are fused when whole periods are propagated.
class DpddsPropagator {
public:
    DpddsPropagator(const classical::DpddsParams& params, const MomentumBasis& basis);

    void step(DensityMatrix& state, double t) const;
    // Whole forcing period starting at t0 (a multiple of 2π in normal use).
    PeriodLog period(DensityMatrix& state, double t0) const;
    std::vector<PeriodLog> evolve(DensityMatrix& state, std::size_t periods) const;

    const DissipatorSpec& dissipator() const { return dissipator_; }
    std::size_t substeps_per_step() const { return substeps_; }
    const FourierTransform& fourier() const { return fft_; }

private:
    std::vector<std::complex<double>> half_potential(double t_mid) const;

    classical::DpddsParams params_;
    MomentumBasis basis_;
    DissipatorSpec dissipator_;
    std::size_t substeps_;
    MomentumDiagonal kinetic_;
    std::vector<double> static_potential_;  // 1 - cos x - A cos(2x + φ_a)
    std::vector<double> drive_profile_;     // k sin x
    FourierTransform fft_;
};

DensityMatrix dpdds_quantum_step(DensityMatrix state, const classical::DpddsParams& params, double t);

}  // namespace attractoscope::quantum
