#pragma once

#include <cstddef>

#include "attractoscope/geometry.hpp"

namespace attractoscope::classical {

// Kicked map in rescaled momentum p = τ n:
//   p' = γ p + k [sin x + a sin(2x + φ)] (+ ξ),   x' = x + p'
// ħ_eff = τ sets the quantum scale and the noise variance ⟨ξ²⟩.
struct DmkrmParams {
    double k = 2.6;
    double gamma = 0.7;
    double a = 0.5;
    double phi = kPi / 2.0;
    double hbar_eff = 0.019;
    bool noise = false;

    void validate() const;
    double tau() const { return hbar_eff; }

    friend bool operator==(const DmkrmParams&, const DmkrmParams&) = default;
};

enum class Integrator { rk4, heun };

inline constexpr std::size_t kDefaultStepsPerPeriod = 1000;

// Driven particle in V(x,t) = 1 - cos x - A cos(2x + φ_a) + k sin x cos t with
// friction Γ and white noise of strength ħ_eff. Forcing period T = 2π.
struct DpddsParams {
    double k = 2.6;
    double Gamma = 0.06;
    double A = 0.5;
    double phi_a = kPi / 2.0;
    double mass = 1.0;
    double hbar_eff = 0.041;
    std::size_t steps_per_period = kDefaultStepsPerPeriod;
    bool noise = false;
    // Deterministic integrator; noisy runs always use stochastic Heun.
    Integrator integrator = Integrator::rk4;

    void validate() const;
    double dt() const { return kTwoPi / static_cast<double>(steps_per_period); }

    friend bool operator==(const DpddsParams&, const DpddsParams&) = default;
};

// |p| or |v| above this is treated as divergence.
inline constexpr double kDivergenceBound = 1e6;

}  // namespace attractoscope::classical
