#include "attractoscope/quantum/trajectory.hpp"

#include <cmath>

#include "attractoscope/errors.hpp"
#include "attractoscope/parallel.hpp"
#include "attractoscope/quantum/evolution.hpp"

namespace attractoscope::quantum {

TrajectoryBundle::TrajectoryBundle(const MomentumBasis& basis, std::size_t count, std::uint64_t seed, double p_half)
    : basis_(basis) {
    if (count == 0) throw ConfigError("trajectory count must be >= 1");
    std::vector<long> levels;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (std::abs(basis.momentum(i)) <= p_half) levels.push_back(basis.level(i));
    if (levels.empty()) throw ConfigError("no basis level inside the initial momentum window");
    states_.reserve(count);
    engines_.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        Engine engine = make_engine(seed, Stream::trajectory, t);
        std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
        psi(static_cast<Eigen::Index>(basis.index(levels[pick(engine)]))) = 1.0;
        states_.push_back(std::move(psi));
        engines_.push_back(engine);
    }
}

void trajectory_substep(Eigen::VectorXcd& psi, const MomentumBasis& basis, const DissipatorSpec& spec, Engine& engine) {
    const long L = basis.half();
    const double rdt = spec.rate * spec.dt_sub;
    auto at = [&](long level) -> cplx& { return psi(static_cast<Eigen::Index>(level + L)); };

    // ||C± ψ||² = rdt Σ_{m≥0} (m+1) |ψ_{±(m+1)}|²
    double w_up = 0.0, w_down = 0.0, w_stay = 0.0;
    for (long m = -L; m <= L; ++m) {
        const double a2 = std::norm(at(m));
        w_stay += (1.0 - rdt * static_cast<double>(std::abs(m))) * a2;
        if (m > 0) w_up += rdt * static_cast<double>(m) * a2;
        if (m < 0) w_down += rdt * static_cast<double>(-m) * a2;
    }
    const double total = w_stay + w_up + w_down;
    const double u = std::uniform_real_distribution<double>(0.0, total)(engine);
    if (u < w_up) {
        for (long m = 0; m < L; ++m) at(m) = std::sqrt(static_cast<double>(m + 1)) * at(m + 1);
        for (long m = -L; m < 0; ++m) at(m) = 0.0;
        at(L) = 0.0;
        psi /= std::sqrt(w_up / rdt);
    } else if (u < w_up + w_down) {
        for (long m = 0; m < L; ++m) at(-m) = std::sqrt(static_cast<double>(m + 1)) * at(-m - 1);
        for (long m = 1; m <= L; ++m) at(m) = 0.0;
        at(-L) = 0.0;
        psi /= std::sqrt(w_down / rdt);
    } else {
        for (long m = -L; m <= L; ++m) at(m) *= std::sqrt(1.0 - rdt * static_cast<double>(std::abs(m)));
        psi /= std::sqrt(w_stay);
    }
}

void TrajectoryBundle::evolve_dmkrm(const classical::DmkrmParams& params, std::size_t periods, unsigned threads) {
    const DmkrmPropagator prop(params, basis_);
    parallel_for(states_.size(), threads, [&](std::size_t t) {
        auto& psi = states_[t];
        for (std::size_t k = 0; k < periods; ++k) {
            for (std::size_t s = 0; s < prop.substeps(); ++s) trajectory_substep(psi, basis_, prop.dissipator(), engines_[t]);
            prop.fourier().to_position(psi);
            multiply_diagonal(psi, prop.kick().phases);
            prop.fourier().to_momentum(psi);
            multiply_diagonal(psi, prop.free().phases);
        }
    });
}

void TrajectoryBundle::evolve_dpdds(const classical::DpddsParams& params, std::size_t periods, unsigned threads) {
    const DpddsPropagator prop(params, basis_);
    const auto kinetic = build_kinetic_propagator(params, basis_, params.dt());
    const double dt = params.dt();
    parallel_for(states_.size(), threads, [&](std::size_t t) {
        auto& psi = states_[t];
        for (std::size_t k = 0; k < periods; ++k) {
            for (std::size_t s = 0; s < params.steps_per_period; ++s) {
                const double t_mid = kTwoPi * static_cast<double>(k) + (static_cast<double>(s) + 0.5) * dt;
                const auto half = build_potential_propagator(params, basis_, t_mid, 0.5 * dt);
                prop.fourier().to_position(psi);
                multiply_diagonal(psi, half.phases);
                prop.fourier().to_momentum(psi);
                multiply_diagonal(psi, kinetic.phases);
                for (std::size_t j = 0; j < prop.substeps_per_step(); ++j)
                    trajectory_substep(psi, basis_, prop.dissipator(), engines_[t]);
                prop.fourier().to_position(psi);
                multiply_diagonal(psi, half.phases);
                prop.fourier().to_momentum(psi);
            }
        }
    });
}

std::vector<double> TrajectoryBundle::populations() const {
    std::vector<double> mean(basis_.size(), 0.0);
    for (const auto& psi : states_)
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += std::norm(psi(static_cast<Eigen::Index>(i)));
    for (auto& m : mean) m /= static_cast<double>(states_.size());
    return mean;
}

std::vector<double> TrajectoryBundle::population_standard_errors() const {
    const auto mean = populations();
    std::vector<double> var(basis_.size(), 0.0);
    const auto n = static_cast<double>(states_.size());
    for (const auto& psi : states_)
        for (std::size_t i = 0; i < var.size(); ++i) {
            const double d = std::norm(psi(static_cast<Eigen::Index>(i))) - mean[i];
            var[i] += d * d;
        }
    std::vector<double> se(basis_.size(), 0.0);
    if (states_.size() < 2) return se;
    for (std::size_t i = 0; i < se.size(); ++i) se[i] = std::sqrt(var[i] / (n - 1.0) / n);
    return se;
}

}  // namespace attractoscope::quantum
