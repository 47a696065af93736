#include "attractoscope/classical/dpdds.hpp"

#include <cmath>
#include <mutex>
#include <optional>

#include "attractoscope/errors.hpp"
#include "attractoscope/parallel.hpp"

namespace attractoscope::classical {

double dpdds_force(double x, double t, const DpddsParams& params) {
    return -(std::sin(x) + 2.0 * params.A * std::sin(2.0 * x + params.phi_a) + params.k * std::cos(x) * std::cos(t));
}

double dpdds_potential(double x, double t, const DpddsParams& params) {
    return 1.0 - std::cos(x) - params.A * std::cos(2.0 * x + params.phi_a) + params.k * std::sin(x) * std::cos(t);
}

double dpdds_potential_time_derivative(double x, double t, const DpddsParams& params) {
    return -params.k * std::sin(x) * std::sin(t);
}

namespace {

// Force evaluation with the drive phase cos t supplied by the caller.
struct Drift {
    double A2cos, A2sin;  // 2A cos φ_a, 2A sin φ_a
    double k, Gamma, inv_mass;

    explicit Drift(const DpddsParams& p)
        : A2cos(2.0 * p.A * std::cos(p.phi_a)),
          A2sin(2.0 * p.A * std::sin(p.phi_a)),
          k(p.k),
          Gamma(p.Gamma),
          inv_mass(1.0 / p.mass) {}

    // dv/dt
    double accel(double x, double v, double cos_t) const {
        const double s = std::sin(x);
        const double c = std::cos(x);
        // sin(2x + φ) = 2 s c cos φ + (c² - s²) sin φ
        const double f = -(s + A2cos * 2.0 * s * c + A2sin * (c * c - s * s) + k * c * cos_t);
        return (f - Gamma * v) * inv_mass;
    }
};

void check_finite(const DpddsState& s, std::uint64_t step) {
    if (!std::isfinite(s.x) || !std::isfinite(s.v) || std::abs(s.v) > kDivergenceBound) throw DivergenceError(step);
}

DpddsState rk4(const DpddsState& s, const Drift& d, double dt, double c0, double ch, double c1) {
    const double k1x = s.v;
    const double k1v = d.accel(s.x, s.v, c0);
    const double k2x = s.v + 0.5 * dt * k1v;
    const double k2v = d.accel(s.x + 0.5 * dt * k1x, k2x, ch);
    const double k3x = s.v + 0.5 * dt * k2v;
    const double k3v = d.accel(s.x + 0.5 * dt * k2x, k3x, ch);
    const double k4x = s.v + dt * k3v;
    const double k4v = d.accel(s.x + dt * k3x, k4x, c1);
    return {s.x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
            s.v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v), s.t + dt};
}

DpddsState heun(const DpddsState& s, const Drift& d, double dt, double c0, double c1, double dw) {
    const double t0 = s.t;
    return heun_step(
        s, [&](double x, double v, double t) { return d.accel(x, v, t == t0 ? c0 : c1); }, dt, dw);
}

// Cosine of the drive at every stage time of one period, so all steps with
// the same in-period index see bit-identical forcing.
class PeriodStepper {
public:
    explicit PeriodStepper(const DpddsParams& params)
        : params_(params), drift_(params), dt_(params.dt()), n_(params.steps_per_period),
          cos_full_(n_ + 1), cos_half_(n_) {
        for (std::size_t j = 0; j <= n_; ++j) cos_full_[j] = std::cos(static_cast<double>(j) * dt_);
        for (std::size_t j = 0; j < n_; ++j) cos_half_[j] = std::cos((static_cast<double>(j) + 0.5) * dt_);
    }

    DpddsState period(DpddsState s, GaussianNoise* noise, std::uint64_t& step) const {
        const double t0 = s.t;
        for (std::size_t j = 0; j < n_; ++j, ++step) {
            if (noise) {
                s = heun(s, drift_, dt_, cos_full_[j], cos_full_[j + 1], (*noise)());
            } else if (params_.integrator == Integrator::heun) {
                s = heun(s, drift_, dt_, cos_full_[j], cos_full_[j + 1], 0.0);
            } else {
                s = rk4(s, drift_, dt_, cos_full_[j], cos_half_[j], cos_full_[j + 1]);
            }
            check_finite(s, step);
        }
        s.t = t0 + kTwoPi;
        return s;
    }

private:
    DpddsParams params_;
    Drift drift_;
    double dt_;
    std::size_t n_;
    std::vector<double> cos_full_;
    std::vector<double> cos_half_;
};

}  // namespace

DpddsState dpdds_step(DpddsState s, const DpddsParams& params, GaussianNoise* noise, std::uint64_t step) {
    const Drift d(params);
    const double dt = params.dt();
    const double c0 = std::cos(s.t);
    const double c1 = std::cos(s.t + dt);
    DpddsState out;
    if (noise) {
        out = heun(s, d, dt, c0, c1, (*noise)());
    } else if (params.integrator == Integrator::heun) {
        out = heun(s, d, dt, c0, c1, 0.0);
    } else {
        out = rk4(s, d, dt, c0, std::cos(s.t + 0.5 * dt), c1);
    }
    check_finite(out, step);
    return out;
}

GaussianNoise dpdds_member_noise(const DpddsParams& params, std::uint64_t seed, std::uint64_t index) {
    return GaussianNoise(make_engine(seed, Stream::noise, index), std::sqrt(params.hbar_eff * params.dt()) / params.mass);
}

DpddsState dpdds_advance_periods(DpddsState s, const DpddsParams& params, std::uint64_t periods, GaussianNoise* noise,
                                 std::uint64_t& step_counter) {
    params.validate();
    const PeriodStepper stepper(params);
    for (std::uint64_t j = 0; j < periods; ++j) s = stepper.period(s, noise, step_counter);
    return s;
}

StroboscopicEvolution dpdds_stroboscopic_evolve(const Ensemble& e, const DpddsParams& params, std::uint64_t n_periods,
                                                std::uint64_t keep_last, unsigned threads, std::size_t n_bins) {
    params.validate();
    if (keep_last < 1 || keep_last > n_periods) throw ConfigError("need n_periods >= keep_last >= 1");
    const PeriodStepper stepper(params);
    const std::size_t n = e.size();
    std::vector<PhasePoint> samples(n * keep_last);
    std::vector<char> ok(n, 1);
    parallel_for(n, threads, [&](std::size_t i) {
        std::optional<GaussianNoise> noise;
        if (params.noise) noise.emplace(dpdds_member_noise(params, e.seed, i));
        DpddsState s{e.points[i].x, e.points[i].p / params.mass, 0.0};
        std::uint64_t step = 0;
        try {
            for (std::uint64_t j = 0; j < n_periods; ++j) {
                s = stepper.period(s, noise ? &*noise : nullptr, step);
                if (j + keep_last >= n_periods) samples[i * keep_last + (j + keep_last - n_periods)] = section_point(s, params);
            }
        } catch (const DivergenceError&) {
            ok[i] = 0;
        }
    });
    StroboscopicEvolution out;
    MomentumCounts counts(n_bins);
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) {
            out.diverged.push_back(i);
            continue;
        }
        for (std::uint64_t j = 0; j < keep_last; ++j) {
            const auto& pt = samples[i * keep_last + j];
            out.samples.push_back(pt);
            counts.add(pt.p);
        }
    }
    if (static_cast<double>(out.diverged.size()) > 0.01 * static_cast<double>(n))
        throw ComputeError("more than 1% of ensemble members diverged");
    out.histogram = counts.normalized();
    return out;
}

std::vector<PhasePoint> dpdds_orbit(PhasePoint start, const DpddsParams& params, std::uint64_t transient,
                                    std::uint64_t samples, GaussianNoise* noise) {
    params.validate();
    const PeriodStepper stepper(params);
    DpddsState s{start.x, start.p / params.mass, 0.0};
    std::uint64_t step = 0;
    for (std::uint64_t j = 0; j < transient; ++j) s = stepper.period(s, noise, step);
    std::vector<PhasePoint> orbit;
    orbit.reserve(samples);
    for (std::uint64_t j = 0; j < samples; ++j) {
        s = stepper.period(s, noise, step);
        orbit.push_back(section_point(s, params));
    }
    return orbit;
}

PhaseCounts dpdds_accumulate(std::uint64_t seed, std::size_t n_ic, const DpddsParams& params, std::uint64_t n_periods,
                             std::uint64_t keep_last, const GridSpec& grid, unsigned threads) {
    params.validate();
    if (keep_last < 1 || keep_last > n_periods) throw ConfigError("need n_periods >= keep_last >= 1");
    const PeriodStepper stepper(params);
    constexpr std::size_t kChunk = 64;
    const std::size_t n_chunks = (n_ic + kChunk - 1) / kChunk;
    PhaseCounts total(grid);
    std::size_t n_div = 0;
    std::mutex merge_mutex;
    parallel_for(n_chunks, threads, [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(n_ic, begin + kChunk);
        PhaseCounts local(grid);
        std::size_t n_diverged = 0;
        std::vector<PhasePoint> kept;
        kept.reserve(keep_last);
        for (std::size_t i = begin; i < end; ++i) {
            std::optional<GaussianNoise> noise;
            if (params.noise) noise.emplace(dpdds_member_noise(params, seed, i));
            const PhasePoint ic = Ensemble::uniform_member(seed, i);
            DpddsState s{ic.x, ic.p / params.mass, 0.0};
            std::uint64_t step = 0;
            kept.clear();
            try {
                for (std::uint64_t j = 0; j < n_periods; ++j) {
                    s = stepper.period(s, noise ? &*noise : nullptr, step);
                    if (j + keep_last >= n_periods) kept.push_back(section_point(s, params));
                }
            } catch (const DivergenceError&) {
                ++n_diverged;
                continue;
            }
            for (const auto& pt : kept) local.add(pt);
        }
        std::lock_guard lock(merge_mutex);
        total.merge(local);
        n_div += n_diverged;
    });
    if (static_cast<double>(n_div) > 0.01 * static_cast<double>(n_ic))
        throw ComputeError("more than 1% of ensemble members diverged");
    return total;
}

}  // namespace attractoscope::classical
