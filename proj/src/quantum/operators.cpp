#include "attractoscope/quantum/operators.hpp"

#include <cmath>

#include "attractoscope/classical/dpdds.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope::quantum {

PositionDiagonal build_kick_unitary(const classical::DmkrmParams& params, const MomentumBasis& basis) {
    PositionDiagonal u;
    u.phases.resize(basis.size());
    const double strength = params.k / basis.hbar();
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const double x = basis.position(j);
        const double v = std::cos(x) + 0.5 * params.a * std::cos(2.0 * x + params.phi);
        u.phases[j] = std::polar(1.0, -strength * v);
    }
    return u;
}

MomentumDiagonal build_free_unitary(const MomentumBasis& basis) {
    MomentumDiagonal u;
    u.phases.resize(basis.size());
    const double tau = basis.hbar();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto n = static_cast<double>(basis.level(i));
        // n² τ / 2 grows to ~10^4 rad; reduce with fmod before the exponential.
        u.phases[i] = std::polar(1.0, -std::fmod(0.5 * tau * n * n, kTwoPi));
    }
    return u;
}

PositionDiagonal build_potential_propagator(const classical::DpddsParams& params, const MomentumBasis& basis, double t,
                                            double duration) {
    PositionDiagonal u;
    u.phases.resize(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const double v = classical::dpdds_potential(basis.position(j), t, params);
        u.phases[j] = std::polar(1.0, -v * duration / basis.hbar());
    }
    return u;
}

MomentumDiagonal build_kinetic_propagator(const classical::DpddsParams& params, const MomentumBasis& basis,
                                          double duration) {
    MomentumDiagonal u;
    u.phases.resize(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double p = basis.momentum(i);
        u.phases[i] = std::polar(1.0, -std::fmod(p * p * duration / (2.0 * params.mass * basis.hbar()), kTwoPi));
    }
    return u;
}

void conjugate_diagonal(Eigen::MatrixXcd& rho, const std::vector<std::complex<double>>& u) {
    const auto n = rho.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::complex<double> cj = std::conj(u[static_cast<std::size_t>(j)]);
        std::complex<double>* col = rho.col(j).data();
        for (Eigen::Index i = 0; i < n; ++i) {
            // written out so the loop stays free of the IEEE complex-multiply slow path
            const std::complex<double> f = u[static_cast<std::size_t>(i)];
            const double fr = f.real() * cj.real() - f.imag() * cj.imag();
            const double fi = f.real() * cj.imag() + f.imag() * cj.real();
            const double zr = col[i].real(), zi = col[i].imag();
            col[i] = {zr * fr - zi * fi, zr * fi + zi * fr};
        }
    }
}

void multiply_diagonal(Eigen::VectorXcd& psi, const std::vector<std::complex<double>>& u) {
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) *= u[static_cast<std::size_t>(i)];
}

}  // namespace attractoscope::quantum
