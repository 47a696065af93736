#pragma once

#include <cstdint>
#include <vector>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/distribution.hpp"
#include "attractoscope/geometry.hpp"
#include "attractoscope/rng.hpp"

namespace attractoscope::classical {

// -∂V/∂x = -[sin x + 2A sin(2x + φ_a) + k cos x cos t]
double dpdds_force(double x, double t, const DpddsParams& params);

// V(x, t) itself, used by energy checks and the quantum propagator.
double dpdds_potential(double x, double t, const DpddsParams& params);

// ∂V/∂t = -k sin x sin t
double dpdds_potential_time_derivative(double x, double t, const DpddsParams& params);

struct DpddsState {
    double x = 0.0;  // unwrapped position
    double v = 0.0;
    double t = 0.0;
};

// Stochastic Heun step of dx/dt = v, dv/dt = accel(x, v, t) with the additive
// velocity increment dw; dw = 0 gives the deterministic Heun step.
template <class Accel>
DpddsState heun_step(const DpddsState& s, Accel&& accel, double dt, double dw) {
    const double a0 = accel(s.x, s.v, s.t);
    const double xp = s.x + dt * s.v;
    const double vp = s.v + dt * a0 + dw;
    const double a1 = accel(xp, vp, s.t + dt);
    return {s.x + 0.5 * dt * (s.v + vp), s.v + 0.5 * dt * (a0 + a1) + dw, s.t + dt};
}

// One step of length params.dt(). With a noise source: stochastic Heun with an
// additive increment sqrt(ħ_eff dt) N(0,1) / m on v. Without: RK4 (or
// deterministic Heun when params.integrator says so).
DpddsState dpdds_step(DpddsState s, const DpddsParams& params, GaussianNoise* noise,
                      std::uint64_t step = 0);

// Wiener increment source for ensemble member `index`: sigma = sqrt(ħ_eff dt) / m.
GaussianNoise dpdds_member_noise(const DpddsParams& params, std::uint64_t seed, std::uint64_t index);

// Integrates whole forcing periods; the state time is reset to j*T exactly at
// each period boundary so stroboscopic samples share one phase.
DpddsState dpdds_advance_periods(DpddsState s, const DpddsParams& params, std::uint64_t periods,
                                 GaussianNoise* noise, std::uint64_t& step_counter);

// Section sample (x mod 2π, p = m v).
inline PhasePoint section_point(const DpddsState& s, const DpddsParams& params) {
    return {wrap_angle(s.x), params.mass * s.v};
}

struct StroboscopicEvolution {
    std::vector<PhasePoint> samples;    // member-major: keep_last samples per member
    MomentumHistogram histogram;        // kept momenta inside [-π, π]
    std::vector<std::size_t> diverged;
};

// Initial conditions are read as (x, p) with v = p / m at t = 0.
StroboscopicEvolution dpdds_stroboscopic_evolve(const Ensemble& e, const DpddsParams& params,
                                                std::uint64_t n_periods, std::uint64_t keep_last,
                                                unsigned threads = 1,
                                                std::size_t n_bins = kDefaultBins);

// Stroboscopic orbit of one initial condition after `transient` periods.
std::vector<PhasePoint> dpdds_orbit(PhasePoint start, const DpddsParams& params,
                                    std::uint64_t transient, std::uint64_t samples,
                                    GaussianNoise* noise = nullptr);

// Streaming version: uniform ensemble, last keep_last sections on the grid.
PhaseCounts dpdds_accumulate(std::uint64_t seed, std::size_t n_ic, const DpddsParams& params,
                             std::uint64_t n_periods, std::uint64_t keep_last, const GridSpec& grid,
                             unsigned threads = 1);

}  // namespace attractoscope::classical
