#include "attractoscope/quantum/dissipator.hpp"

#include <cmath>
#include <string>

#include "attractoscope/errors.hpp"

namespace attractoscope::quantum {

void DissipatorSpec::validate(const MomentumBasis& basis) const {
    if (!(rate >= 0.0)) throw ConfigError("dissipation rate must be >= 0");
    if (!(dt_sub > 0.0)) throw ConfigError("dissipation substep must be > 0");
    const double x = rate * static_cast<double>(basis.half()) * dt_sub;
    if (x > kKrausValidityBound * (1.0 + 1e-12))
        throw ComputeError("substep too coarse: rate*n_max*dt_sub = " + std::to_string(x));
}

std::size_t substeps_for(double rate, double duration, const MomentumBasis& basis) {
    const double x = rate * static_cast<double>(basis.half()) * duration / kKrausValidityBound;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(x * (1.0 - 1e-12))));
}

DissipatorSpec make_dissipator(LadderKind kind, double rate, double duration, const MomentumBasis& basis) {
    const std::size_t m = substeps_for(rate, duration, basis);
    return {kind, rate, duration / static_cast<double>(m)};
}

namespace {

struct Coefficients {
    double rdt;
    // no-jump amplitude sqrt(1 - rdt |n|)
    double decay(long n) const { return std::sqrt(1.0 - rdt * static_cast<double>(std::abs(n))); }
    // jump amplitude product for the source pair (|a|+1, |b|+1)
    double feed(long a, long b) const {
        return rdt * std::sqrt(static_cast<double>(std::abs(a) + 1) * static_cast<double>(std::abs(b) + 1));
    }
};

}  // namespace

void dissipative_substep(DensityMatrix& state, const DissipatorSpec& spec) {
    const auto& basis = state.basis();
    spec.validate(basis);
    const Coefficients co{spec.rate * spec.dt_sub};
    const long L = basis.half();
    const Eigen::MatrixXcd old = state.rho();
    auto& rho = state.rho();
    const auto n = static_cast<Eigen::Index>(basis.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        const long mb = basis.level(static_cast<std::size_t>(j));
        for (Eigen::Index i = 0; i < n; ++i) {
            const long ma = basis.level(static_cast<std::size_t>(i));
            cplx v = co.decay(ma) * co.decay(mb) * old(i, j);
            if (ma >= 0 && mb >= 0 && ma < L && mb < L) v += co.feed(ma, mb) * old(i + 1, j + 1);
            if (ma <= 0 && mb <= 0 && ma > -L && mb > -L) v += co.feed(ma, mb) * old(i - 1, j - 1);
            rho(i, j) = v;
        }
    }
    state.renormalize();
}

namespace {

// Runs `count` substeps of v[j] ← a[j] v[j] + b[j] v[j+1] on one line.
void run_line(std::vector<double>& re, std::vector<double>& im, const std::vector<double>& a,
              const std::vector<double>& b, std::size_t count) {
    const std::size_t len = re.size();
    double* __restrict r = re.data();
    double* __restrict m = im.data();
    const double* __restrict ac = a.data();
    const double* __restrict bc = b.data();
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t j = 0; j + 1 < len; ++j) {
            r[j] = ac[j] * r[j] + bc[j] * r[j + 1];
            m[j] = ac[j] * m[j] + bc[j] * m[j + 1];
        }
        r[len - 1] *= ac[len - 1];
        m[len - 1] *= ac[len - 1];
    }
}

}  // namespace

double dissipate(DensityMatrix& state, const DissipatorSpec& spec, std::size_t count) {
    const auto& basis = state.basis();
    spec.validate(basis);
    auto& rho = state.rho();
    if (count == 0 || spec.rate == 0.0) return state.renormalize();
    const Coefficients co{spec.rate * spec.dt_sub};
    const long L = basis.half();
    auto at = [&](long row_level, long col_level) -> cplx& {
        return rho(static_cast<Eigen::Index>(row_level + L), static_cast<Eigen::Index>(col_level + L));
    };

    std::vector<double> re, im, a, b;
    re.reserve(static_cast<std::size_t>(L) + 1);
    im.reserve(static_cast<std::size_t>(L) + 1);
    a.reserve(static_cast<std::size_t>(L) + 1);
    b.reserve(static_cast<std::size_t>(L) + 1);

    // Off-diagonal lines of the non-negative block: (j, j+d), fed by (j+1, j+1+d),
    // and of the non-positive block: (-(j+d), -j), fed by (-(j+d)-1, -j-1).
    for (int sign : {+1, -1}) {
        for (long d = 1; d <= L; ++d) {
            const auto len = static_cast<std::size_t>(L - d + 1);
            re.assign(len, 0.0);
            im.assign(len, 0.0);
            a.assign(len, 0.0);
            b.assign(len, 0.0);
            for (std::size_t j = 0; j < len; ++j) {
                const long lo = static_cast<long>(j);
                const long hi = lo + d;
                const cplx v = sign > 0 ? at(lo, hi) : at(-hi, -lo);
                re[j] = v.real();
                im[j] = v.imag();
                a[j] = co.decay(lo) * co.decay(hi);
                if (j + 1 < len) b[j] = co.feed(lo, hi);
            }
            run_line(re, im, a, b, count);
            for (std::size_t j = 0; j < len; ++j) {
                const long lo = static_cast<long>(j);
                const long hi = lo + d;
                const cplx v(re[j], im[j]);
                if (sign > 0) {
                    at(lo, hi) = v;
                    at(hi, lo) = std::conj(v);
                } else {
                    at(-hi, -lo) = v;
                    at(-lo, -hi) = std::conj(v);
                }
            }
        }
    }

    // Populations: both ladders feed level 0.
    {
        std::vector<double> pop(basis.size());
        for (long n = -L; n <= L; ++n) pop[static_cast<std::size_t>(n + L)] = at(n, n).real();
        std::vector<double> decay2(basis.size()), feed(basis.size(), 0.0);
        for (long n = -L; n <= L; ++n) {
            const auto i = static_cast<std::size_t>(n + L);
            decay2[i] = co.decay(n) * co.decay(n);
            if (n != 0 && std::abs(n) < L) feed[i] = co.feed(n, n);  // from |n|+1
        }
        const auto zero = static_cast<std::size_t>(L);
        const double feed0 = co.feed(0, 0);
        for (std::size_t s = 0; s < count; ++s) {
            pop[zero] = pop[zero] + feed0 * (pop[zero + 1] + pop[zero - 1]);
            for (std::size_t i = zero + 1; i + 1 < pop.size(); ++i) pop[i] = decay2[i] * pop[i] + feed[i] * pop[i + 1];
            pop.back() *= decay2.back();
            for (std::size_t i = zero - 1; i >= 1; --i) pop[i] = decay2[i] * pop[i] + feed[i] * pop[i - 1];
            pop.front() *= decay2.front();
        }
        for (long n = -L; n <= L; ++n) at(n, n) = cplx(pop[static_cast<std::size_t>(n + L)], 0.0);
    }

    // Coherences between negative and positive levels only decay.
    const double steps = static_cast<double>(count);
    for (long m = -L; m < 0; ++m) {
        for (long mp = 1; mp <= L; ++mp) {
            const double f = std::pow(co.decay(m) * co.decay(mp), steps);
            at(m, mp) *= f;
            at(mp, m) *= f;
        }
    }
    return state.renormalize();
}

std::vector<Eigen::MatrixXd> kraus_operators(const MomentumBasis& basis, const DissipatorSpec& spec) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    const long L = basis.half();
    const double rdt = spec.rate * spec.dt_sub;
    Eigen::MatrixXd c0 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd up = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd down = Eigen::MatrixXd::Zero(n, n);
    for (long m = -L; m <= L; ++m) c0(m + L, m + L) = std::sqrt(1.0 - rdt * static_cast<double>(std::abs(m)));
    for (long m = 0; m < L; ++m) {
        const double amp = std::sqrt(rdt * static_cast<double>(m + 1));
        up(m + L, m + 1 + L) = amp;       // |m⟩⟨m+1|
        down(-m + L, -m - 1 + L) = amp;   // |-m⟩⟨-m-1|
    }
    return {c0, up, down};
}

double kraus_completeness_residual(const std::vector<Eigen::MatrixXd>& kraus) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(kraus.front().rows(), kraus.front().cols());
    for (const auto& c : kraus) sum += c.transpose() * c;
    sum -= Eigen::MatrixXd::Identity(sum.rows(), sum.cols());
    return sum.cwiseAbs().maxCoeff();
}

}  // namespace attractoscope::quantum
