#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "attractoscope/quantum/basis.hpp"

namespace attractoscope::quantum {

using cplx = std::complex<double>;

inline constexpr double kEdgePopulationLimit = 1e-6;

// Density matrix in the momentum basis.
class DensityMatrix {
public:
    DensityMatrix(MomentumBasis basis, Eigen::MatrixXcd rho);

    // Incoherent uniform mixture of all levels with |p_n| ≤ p_half.
    static DensityMatrix uniform_mixture(const MomentumBasis& basis, double p_half);
    static DensityMatrix pure(const MomentumBasis& basis, const Eigen::VectorXcd& psi);
    static DensityMatrix level(const MomentumBasis& basis, long n);
    static DensityMatrix coherent(const MomentumBasis& basis, double x0, double p0);

    const MomentumBasis& basis() const { return basis_; }
    const Eigen::MatrixXcd& rho() const { return rho_; }
    Eigen::MatrixXcd& rho() { return rho_; }

    double trace() const;
    double purity() const;
    double hermiticity_error() const;
    // (ρ + ρ†) / 2
    void hermitize();
    // Rescales to unit trace and returns |trace - 1| before rescaling.
    double renormalize();
    double min_eigenvalue() const;

    std::vector<double> populations() const;
    // Population in the outermost 5% of levels (both sides).
    double edge_population() const;
    // Throws ComputeError("truncation leak ...") above kEdgePopulationLimit.
    void check_truncation() const;

    double mean_level() const;     // ⟨n̂⟩
    double mean_momentum() const;  // ⟨p̂⟩
    cplx mean_exp_ix() const;      // ⟨e^{i x̂}⟩
    // Circular mean of x̂ in [0, 2π).
    double mean_position() const;

private:
    MomentumBasis basis_;
    Eigen::MatrixXcd rho_;
};

// Momentum amplitudes of the cylinder coherent state centred at (x0, p0): a
// Gaussian of width sqrt(ħ/2) in p (and hence in x), normalized on the basis.
Eigen::VectorXcd coherent_amplitudes(const MomentumBasis& basis, double x0, double p0);

}  // namespace attractoscope::quantum
