#include "attractoscope/quantum/fourier.hpp"

#include <complex>
#include <mutex>

#include <fftw3.h>

namespace attractoscope::quantum {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct FourierTransform::Plans {
    int n = 0;
    fftw_plan vec_backward = nullptr;
    fftw_plan vec_forward = nullptr;
    fftw_plan cols_backward = nullptr;
    fftw_plan cols_forward = nullptr;

    explicit Plans(int size) : n(size) {
        std::lock_guard lock(planner_mutex());
        // Plans are created on scratch arrays and later run on caller memory
        // through the new-array interface; FFTW_UNALIGNED keeps that legal.
        auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        vec_backward = fftw_plan_dft_1d(n, scratch, scratch, FFTW_BACKWARD, flags);
        vec_forward = fftw_plan_dft_1d(n, scratch, scratch, FFTW_FORWARD, flags);
        cols_backward = fftw_plan_many_dft(1, &n, n, scratch, nullptr, 1, n, scratch, nullptr, 1, n, FFTW_BACKWARD, flags);
        cols_forward = fftw_plan_many_dft(1, &n, n, scratch, nullptr, 1, n, scratch, nullptr, 1, n, FFTW_FORWARD, flags);
        fftw_free(scratch);
    }

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        for (auto* p : {vec_backward, vec_forward, cols_backward, cols_forward})
            if (p) fftw_destroy_plan(p);
    }
};

namespace {

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

FourierTransform::FourierTransform(const MomentumBasis& basis)
    : plans_(std::make_unique<Plans>(static_cast<int>(basis.size()))) {}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

std::size_t FourierTransform::size() const { return static_cast<std::size_t>(plans_->n); }

void FourierTransform::to_position(Eigen::VectorXcd& psi) const {
    fftw_execute_dft(plans_->vec_backward, as_fftw(psi.data()), as_fftw(psi.data()));
    psi /= std::sqrt(static_cast<double>(plans_->n));
}

void FourierTransform::to_momentum(Eigen::VectorXcd& psi) const {
    fftw_execute_dft(plans_->vec_forward, as_fftw(psi.data()), as_fftw(psi.data()));
    psi /= std::sqrt(static_cast<double>(plans_->n));
}

// For Hermitian ρ: F ρ F† = F (F ρ)†, so two column passes and one adjoint
// replace the strided row pass.
void FourierTransform::to_position(Eigen::MatrixXcd& rho) const {
    fftw_execute_dft(plans_->cols_backward, as_fftw(rho.data()), as_fftw(rho.data()));
    rho.adjointInPlace();
    fftw_execute_dft(plans_->cols_backward, as_fftw(rho.data()), as_fftw(rho.data()));
    rho /= static_cast<double>(plans_->n);
}

void FourierTransform::to_momentum(Eigen::MatrixXcd& rho) const {
    fftw_execute_dft(plans_->cols_forward, as_fftw(rho.data()), as_fftw(rho.data()));
    rho.adjointInPlace();
    fftw_execute_dft(plans_->cols_forward, as_fftw(rho.data()), as_fftw(rho.data()));
    rho /= static_cast<double>(plans_->n);
}

}  // namespace attractoscope::quantum
