#include "attractoscope/quantum/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "attractoscope/errors.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope::quantum {

namespace {

PeriodLog finish_period(DensityMatrix& state, double drift) {
    state.hermitize();
    PeriodLog log;
    log.trace_drift = std::max(drift, state.renormalize());
    log.edge_population = state.edge_population();
    log.purity = state.purity();
    return log;
}

}  // namespace

DmkrmPropagator::DmkrmPropagator(const classical::DmkrmParams& params, const MomentumBasis& basis)
    : basis_(basis),
      dissipator_(make_dissipator(LadderKind::dmkrm, params.gamma > 0.0 ? -std::log(params.gamma) : 0.0, 1.0, basis)),
      substeps_(substeps_for(dissipator_.rate, 1.0, basis)),
      kick_(build_kick_unitary(params, basis)),
      free_(build_free_unitary(basis)),
      fft_(basis) {
    params.validate();
    if (params.gamma <= 0.0) throw ConfigError("quantum kicked map needs gamma > 0");
    if (std::abs(params.hbar_eff - basis.hbar()) > 1e-15 * params.hbar_eff)
        throw ConfigError("basis hbar_eff does not match parameters");
}

PeriodLog DmkrmPropagator::period(DensityMatrix& state) const {
    const double drift = dissipate(state, dissipator_, substeps_);
    auto& rho = state.rho();
    fft_.to_position(rho);
    conjugate_diagonal(rho, kick_.phases);
    fft_.to_momentum(rho);
    conjugate_diagonal(rho, free_.phases);
    return finish_period(state, drift);
}

std::vector<PeriodLog> DmkrmPropagator::evolve(DensityMatrix& state, std::size_t periods) const {
    std::vector<PeriodLog> logs;
    logs.reserve(periods);
    for (std::size_t i = 0; i < periods; ++i) {
        logs.push_back(period(state));
        state.check_truncation();
    }
    return logs;
}

DensityMatrix dmkrm_quantum_period(DensityMatrix state, const classical::DmkrmParams& params) {
    const DmkrmPropagator prop(params, state.basis());
    prop.period(state);
    return state;
}

DpddsPropagator::DpddsPropagator(const classical::DpddsParams& params, const MomentumBasis& basis)
    : params_(params),
      basis_(basis),
      dissipator_(make_dissipator(LadderKind::dpdds, params.Gamma, params.dt(), basis)),
      substeps_(substeps_for(params.Gamma, params.dt(), basis)),
      kinetic_(build_kinetic_propagator(params, basis, params.dt())),
      fft_(basis) {
    params.validate();
    if (std::abs(params.hbar_eff - basis.hbar()) > 1e-15 * params.hbar_eff)
        throw ConfigError("basis hbar_eff does not match parameters");
    static_potential_.resize(basis.size());
    drive_profile_.resize(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const double x = basis.position(j);
        static_potential_[j] = 1.0 - std::cos(x) - params.A * std::cos(2.0 * x + params.phi_a);
        drive_profile_[j] = params.k * std::sin(x);
    }
}

namespace {

// exp(-i [ws · V0(x) + wd · D(x)] / ħ)
std::vector<std::complex<double>> potential_phases(const std::vector<double>& v0, const std::vector<double>& drive,
                                                   double ws, double wd, double hbar) {
    std::vector<std::complex<double>> u(v0.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::polar(1.0, -(ws * v0[j] + wd * drive[j]) / hbar);
    return u;
}

}  // namespace

std::vector<std::complex<double>> DpddsPropagator::half_potential(double t_mid) const {
    const double h = 0.5 * params_.dt();
    return potential_phases(static_potential_, drive_profile_, h, h * std::cos(t_mid), basis_.hbar());
}

void DpddsPropagator::step(DensityMatrix& state, double t) const {
    const double dt = params_.dt();
    const auto half = half_potential(t + 0.5 * dt);
    auto& rho = state.rho();
    fft_.to_position(rho);
    conjugate_diagonal(rho, half);
    fft_.to_momentum(rho);
    conjugate_diagonal(rho, kinetic_.phases);
    dissipate(state, dissipator_, substeps_);
    fft_.to_position(rho);
    conjugate_diagonal(rho, half);
    fft_.to_momentum(rho);
    state.hermitize();
}

PeriodLog DpddsPropagator::period(DensityMatrix& state, double t0) const {
    const double dt = params_.dt();
    const std::size_t n = params_.steps_per_period;
    auto& rho = state.rho();
    double drift = 0.0;
    auto t_mid = [&](std::size_t s) { return t0 + (static_cast<double>(s) + 0.5) * dt; };
    fft_.to_position(rho);
    conjugate_diagonal(rho, half_potential(t_mid(0)));
    for (std::size_t s = 0; s < n; ++s) {
        fft_.to_momentum(rho);
        conjugate_diagonal(rho, kinetic_.phases);
        drift = std::max(drift, dissipate(state, dissipator_, substeps_));
        fft_.to_position(rho);
        if (s + 1 < n) {
            const double wd = 0.5 * dt * (std::cos(t_mid(s)) + std::cos(t_mid(s + 1)));
            conjugate_diagonal(rho, potential_phases(static_potential_, drive_profile_, dt, wd, basis_.hbar()));
        } else {
            conjugate_diagonal(rho, half_potential(t_mid(s)));
        }
    }
    fft_.to_momentum(rho);
    return finish_period(state, drift);
}

std::vector<PeriodLog> DpddsPropagator::evolve(DensityMatrix& state, std::size_t periods) const {
    std::vector<PeriodLog> logs;
    logs.reserve(periods);
    for (std::size_t i = 0; i < periods; ++i) {
        logs.push_back(period(state, kTwoPi * static_cast<double>(i)));
        state.check_truncation();
    }
    return logs;
}

DensityMatrix dpdds_quantum_step(DensityMatrix state, const classical::DpddsParams& params, double t) {
    const DpddsPropagator prop(params, state.basis());
    prop.step(state, t);
    return state;
}

}  // namespace attractoscope::quantum
