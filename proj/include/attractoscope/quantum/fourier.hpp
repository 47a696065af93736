#pragma once

#include <memory>

#include <Eigen/Dense>

#include "attractoscope/quantum/basis.hpp"

namespace attractoscope::quantum {

// Unitary DFT between the momentum basis and the position grid x_j = 2πj/N,
// backed by FFTW in estimate mode (bit-reproducible plans). Vectors and
// Hermitian matrices are transformed in place; the constant phase offset of
// the centred level labelling cancels for every position-diagonal operator.
class FourierTransform {
public:
    explicit FourierTransform(const MomentumBasis& basis);
    ~FourierTransform();
    FourierTransform(FourierTransform&&) noexcept;
    FourierTransform& operator=(FourierTransform&&) noexcept;
    FourierTransform(const FourierTransform&) = delete;
    FourierTransform& operator=(const FourierTransform&) = delete;

    std::size_t size() const;

    // ψ(x_j) = Σ_n c_n e^{i n x_j} / √N and its inverse.
    void to_position(Eigen::VectorXcd& psi) const;
    void to_momentum(Eigen::VectorXcd& psi) const;

    // ρ_x = F ρ F†, ρ_p = F† ρ_x F. Input must be Hermitian.
    void to_position(Eigen::MatrixXcd& rho) const;
    void to_momentum(Eigen::MatrixXcd& rho) const;

private:
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

}  // namespace attractoscope::quantum
