#include "attractoscope/classical/dmkrm.hpp"

#include <cmath>
#include <mutex>
#include <optional>

#include "attractoscope/errors.hpp"
#include "attractoscope/parallel.hpp"

namespace attractoscope::classical {

namespace {

// sin(2x + φ) = 2 s c cos φ + (c² - s²) sin φ, with the φ terms folded in once.
struct Kick {
    double k, gamma, ac, as;

    explicit Kick(const DmkrmParams& p)
        : k(p.k), gamma(p.gamma), ac(p.a * std::cos(p.phi)), as(p.a * std::sin(p.phi)) {}

    double force(double x) const {
        const double s = std::sin(x);
        const double c = std::cos(x);
        return k * (s + 2.0 * s * c * ac + (c * c - s * s) * as);
    }

    PhasePoint step(PhasePoint st, GaussianNoise* noise, std::uint64_t n) const {
        double p = gamma * st.p + force(st.x);
        if (noise) p += (*noise)();
        if (!std::isfinite(p) || std::abs(p) > kDivergenceBound) throw DivergenceError(n);
        return {wrap_angle(st.x + p), p};
    }
};

}  // namespace

double dmkrm_kick(double x, const DmkrmParams& params) { return Kick(params).force(x); }

PhasePoint dmkrm_step(PhasePoint s, const DmkrmParams& params, GaussianNoise* noise, std::uint64_t step) {
    return Kick(params).step(s, noise, step);
}

GaussianNoise dmkrm_member_noise(const DmkrmParams& params, std::uint64_t seed, std::uint64_t index) {
    return GaussianNoise(make_engine(seed, Stream::noise, index), std::sqrt(params.hbar_eff));
}

EnsembleEvolution dmkrm_evolve_ensemble(const Ensemble& e, const DmkrmParams& params, std::uint64_t n_steps,
                                        unsigned threads, std::size_t n_bins) {
    params.validate();
    if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
    const Kick kick(params);
    const std::size_t n = e.size();
    std::vector<PhasePoint> finals(n);
    std::vector<char> ok(n, 1);
    parallel_for(n, threads, [&](std::size_t i) {
        std::optional<GaussianNoise> noise;
        if (params.noise) noise.emplace(dmkrm_member_noise(params, e.seed, i));
        PhasePoint s = e.points[i];
        try {
            for (std::uint64_t t = 0; t < n_steps; ++t) s = kick.step(s, noise ? &*noise : nullptr, t);
            finals[i] = s;
        } catch (const DivergenceError&) {
            ok[i] = 0;
        }
    });
    EnsembleEvolution out;
    out.final_state.seed = e.seed;
    MomentumCounts counts(n_bins);
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) {
            out.diverged.push_back(i);
            continue;
        }
        out.final_state.points.push_back(finals[i]);
        counts.add(fold_momentum(finals[i].p));
    }
    if (static_cast<double>(out.diverged.size()) > 0.01 * static_cast<double>(n))
        throw ComputeError("more than 1% of ensemble members diverged (" + std::to_string(out.diverged.size()) +
                           " of " + std::to_string(n) + ")");
    out.histogram = counts.normalized();
    return out;
}

std::vector<PhasePoint> dmkrm_orbit(PhasePoint start, const DmkrmParams& params, std::uint64_t transient,
                                    std::uint64_t samples, GaussianNoise* noise) {
    params.validate();
    const Kick kick(params);
    PhasePoint s = make_point(start.x, start.p);
    std::uint64_t t = 0;
    for (; t < transient; ++t) s = kick.step(s, noise, t);
    std::vector<PhasePoint> orbit;
    orbit.reserve(samples);
    for (std::uint64_t j = 0; j < samples; ++j, ++t) {
        s = kick.step(s, noise, t);
        orbit.push_back(s);
    }
    return orbit;
}

PhaseCounts dmkrm_accumulate(std::uint64_t seed, std::size_t n_ic, const DmkrmParams& params, std::uint64_t n_steps,
                             std::uint64_t keep_last, const GridSpec& grid, unsigned threads) {
    params.validate();
    if (keep_last < 1 || keep_last > n_steps) throw ConfigError("need n_steps >= keep_last >= 1");
    const Kick kick(params);
    // Integer counts merge exactly in any order, so the chunk schedule cannot
    // change the result.
    constexpr std::size_t kChunk = 4096;
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
            if (params.noise) noise.emplace(dmkrm_member_noise(params, seed, i));
            PhasePoint s = Ensemble::uniform_member(seed, i);
            kept.clear();
            try {
                for (std::uint64_t t = 0; t < n_steps; ++t) {
                    s = kick.step(s, noise ? &*noise : nullptr, t);
                    if (t + keep_last >= n_steps) kept.push_back({s.x, fold_momentum(s.p)});
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
