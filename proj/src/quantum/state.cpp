#include "attractoscope/quantum/state.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "attractoscope/errors.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope::quantum {

DensityMatrix::DensityMatrix(MomentumBasis basis, Eigen::MatrixXcd rho) : basis_(basis), rho_(std::move(rho)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (rho_.rows() != n || rho_.cols() != n) throw ConfigError("density matrix size does not match basis");
}

DensityMatrix DensityMatrix::uniform_mixture(const MomentumBasis& basis, double p_half) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    std::size_t count = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (std::abs(basis.momentum(i)) <= p_half) ++count;
    if (count == 0) throw ConfigError("no basis level inside the initial momentum window");
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (std::abs(basis.momentum(i)) <= p_half) rho(i, i) = 1.0 / static_cast<double>(count);
    return DensityMatrix(basis, std::move(rho));
}

DensityMatrix DensityMatrix::pure(const MomentumBasis& basis, const Eigen::VectorXcd& psi) {
    const Eigen::VectorXcd v = psi / psi.norm();
    return DensityMatrix(basis, v * v.adjoint());
}

DensityMatrix DensityMatrix::level(const MomentumBasis& basis, long n) {
    if (std::abs(n) > basis.half()) throw ConfigError("level outside basis");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    v(static_cast<Eigen::Index>(basis.index(n))) = 1.0;
    return pure(basis, v);
}

DensityMatrix DensityMatrix::coherent(const MomentumBasis& basis, double x0, double p0) {
    return pure(basis, coherent_amplitudes(basis, x0, p0));
}

double DensityMatrix::trace() const { return rho_.trace().real(); }

double DensityMatrix::purity() const { return (rho_.cwiseAbs2()).sum(); }

double DensityMatrix::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

void DensityMatrix::hermitize() {
    const auto n = rho_.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        rho_(j, j) = cplx(rho_(j, j).real(), 0.0);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const cplx avg = 0.5 * (rho_(i, j) + std::conj(rho_(j, i)));
            rho_(i, j) = avg;
            rho_(j, i) = std::conj(avg);
        }
    }
}

double DensityMatrix::renormalize() {
    const double tr = trace();
    if (!(tr > 0.0) || !std::isfinite(tr)) throw ComputeError("density matrix lost its trace");
    rho_ /= tr;
    return std::abs(tr - 1.0);
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::vector<double> DensityMatrix::populations() const {
    std::vector<double> pop(basis_.size());
    for (std::size_t i = 0; i < pop.size(); ++i) pop[i] = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    return pop;
}

double DensityMatrix::edge_population() const {
    const std::size_t edge = basis_.edge_levels();
    const std::size_t n = basis_.size();
    double total = 0.0;
    for (std::size_t i = 0; i < edge; ++i) {
        total += rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        total += rho_(static_cast<Eigen::Index>(n - 1 - i), static_cast<Eigen::Index>(n - 1 - i)).real();
    }
    return total;
}

void DensityMatrix::check_truncation() const {
    const double edge = edge_population();
    if (!(edge < kEdgePopulationLimit))
        throw ComputeError("truncation leak: edge population " + std::to_string(edge) + " in a " +
                           std::to_string(basis_.size()) + "-level basis");
}

double DensityMatrix::mean_level() const {
    double m = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        m += static_cast<double>(basis_.level(i)) * rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    return m;
}

double DensityMatrix::mean_momentum() const { return basis_.hbar() * mean_level(); }

cplx DensityMatrix::mean_exp_ix() const {
    // e^{ix}|n⟩ = |n+1⟩, so tr(ρ e^{ix}) = Σ_n ρ_{n,n+1}
    cplx s = 0.0;
    for (Eigen::Index i = 0; i + 1 < rho_.rows(); ++i) s += rho_(i, i + 1);
    return s;
}

double DensityMatrix::mean_position() const { return wrap_angle(std::arg(mean_exp_ix())); }

Eigen::VectorXcd coherent_amplitudes(const MomentumBasis& basis, double x0, double p0) {
    const double hbar = basis.hbar();
    Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double dp = basis.momentum(i) - p0;
        const double amp = std::exp(-dp * dp / (2.0 * hbar));
        const double phase = -static_cast<double>(basis.level(i)) * x0;
        c(static_cast<Eigen::Index>(i)) = std::polar(amp, phase);
    }
    const double norm = c.norm();
    if (!(norm > 0.0)) throw ComputeError("coherent state centre lies outside the basis");
    return c / norm;
}

}  // namespace attractoscope::quantum
