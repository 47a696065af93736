#include "attractoscope/quantum/husimi.hpp"

#include <algorithm>
#include <cmath>

#include "attractoscope/errors.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope::quantum {

namespace {

// Gaussian weights exp(-(p_n - p0)² / 2ħ) are dropped below e^-36.
constexpr double kWindowExponent = 36.0;

struct Window {
    std::size_t first = 0;
    std::vector<double> g;  // g[i] for storage index first + i
    double norm2 = 0.0;
};

Window coherent_window(const MomentumBasis& basis, double p0) {
    Window w;
    const double hbar = basis.hbar();
    const double reach = std::sqrt(2.0 * kWindowExponent * hbar);
    const double lo = std::ceil((p0 - reach) / hbar);
    const double hi = std::floor((p0 + reach) / hbar);
    const double L = static_cast<double>(basis.half());
    const double a = std::max(lo, -L);
    const double b = std::min(hi, L);
    if (a > b) return w;
    w.first = basis.index(static_cast<long>(a));
    const auto count = static_cast<std::size_t>(b - a) + 1;
    w.g.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double dp = basis.momentum(w.first + i) - p0;
        w.g[i] = std::exp(-dp * dp / (2.0 * hbar));
        w.norm2 += w.g[i] * w.g[i];
    }
    return w;
}

// S_d = Σ_{m-n=d} g_m g_n ρ_mn for d = 0..W-1 (S_{-d} = conj S_d).
std::vector<cplx> band_sums(const Eigen::MatrixXcd& rho, const Window& w) {
    const std::size_t width = w.g.size();
    std::vector<cplx> s(width, cplx(0.0, 0.0));
    for (std::size_t n = 0; n < width; ++n) {
        const auto col = static_cast<Eigen::Index>(w.first + n);
        for (std::size_t m = n; m < width; ++m)
            s[m - n] += w.g[m] * w.g[n] * rho(static_cast<Eigen::Index>(w.first + m), col);
    }
    return s;
}

// ⟨α|ρ|α⟩ as a function of x0 for the given window: S_0 + 2 Re Σ_d S_d e^{i d x0}.
double expectation(const std::vector<cplx>& s, double norm2, double x0) {
    double h = s[0].real();
    for (std::size_t d = 1; d < s.size(); ++d) {
        const double ang = static_cast<double>(d) * x0;
        h += 2.0 * (s[d].real() * std::cos(ang) - s[d].imag() * std::sin(ang));
    }
    return h / norm2;
}

std::vector<double> image_momenta(const MomentumBasis& basis, double p0, MomentumFold fold) {
    if (fold == MomentumFold::window) return {p0};
    std::vector<double> out;
    const double reach = basis.p_max() + std::sqrt(2.0 * kWindowExponent * basis.hbar());
    const auto jmax = static_cast<long>(std::ceil(reach / kTwoPi)) + 1;
    for (long j = -jmax; j <= jmax; ++j) {
        const double p = p0 + kTwoPi * static_cast<double>(j);
        if (std::abs(p) <= reach) out.push_back(p);
    }
    return out;
}

}  // namespace

double husimi_value(const DensityMatrix& state, double x0, double p0) {
    const Window w = coherent_window(state.basis(), p0);
    if (w.g.empty()) return 0.0;
    const auto s = band_sums(state.rho(), w);
    return std::max(0.0, expectation(s, w.norm2, x0)) / (kTwoPi * state.basis().hbar());
}

PhaseDistribution husimi(const DensityMatrix& state, const GridSpec& grid, MomentumFold fold) {
    grid.validate();
    const auto& basis = state.basis();
    const double reach = std::sqrt(2.0 * kWindowExponent * basis.hbar());
    const auto max_width = static_cast<std::size_t>(2.0 * reach / basis.hbar()) + 2;

    // cos/sin(d x0) tables, d < max_width
    std::vector<double> cos_t(max_width * grid.nx), sin_t(max_width * grid.nx);
    for (std::size_t d = 0; d < max_width; ++d)
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double ang = static_cast<double>(d) * grid.x_center(ix);
            cos_t[d * grid.nx + ix] = std::cos(ang);
            sin_t[d * grid.nx + ix] = std::sin(ang);
        }

    std::vector<double> weights(grid.nx * grid.np, 0.0);
    std::vector<double> row(grid.nx);
    for (std::size_t ip = 0; ip < grid.np; ++ip) {
        std::fill(row.begin(), row.end(), 0.0);
        for (double p0 : image_momenta(basis, grid.p_center(ip), fold)) {
            const Window w = coherent_window(basis, p0);
            if (w.g.empty()) continue;
            const auto s = band_sums(state.rho(), w);
            const double inv = 1.0 / w.norm2;
            for (std::size_t ix = 0; ix < grid.nx; ++ix) row[ix] += s[0].real() * inv;
            for (std::size_t d = 1; d < s.size() && d < max_width; ++d) {
                const double re = 2.0 * s[d].real() * inv, im = 2.0 * s[d].imag() * inv;
                const double* c = &cos_t[d * grid.nx];
                const double* sn = &sin_t[d * grid.nx];
                for (std::size_t ix = 0; ix < grid.nx; ++ix) row[ix] += re * c[ix] - im * sn[ix];
            }
        }
        for (std::size_t ix = 0; ix < grid.nx; ++ix) weights[ip * grid.nx + ix] = std::max(0.0, row[ix]);
    }
    return PhaseDistribution(grid, std::move(weights));
}

QuantumMomentum rebin_populations(const MomentumBasis& basis, const std::vector<double>& populations,
                                  std::size_t n_bins, MomentumFold fold) {
    if (populations.size() != basis.size()) throw ConfigError("population vector does not match basis");
    if (n_bins == 0) throw ConfigError("n_bins must be >= 1");
    const double width = kTwoPi / static_cast<double>(n_bins);
    std::vector<double> mass(n_bins, 0.0);
    double total = 0.0, inside = 0.0;

    // adds pop · |[lo, hi] ∩ bin| / (hi - lo) for lo, hi inside [-π, π]
    auto spread = [&](double lo, double hi, double density) {
        if (hi <= lo) return;
        auto first = static_cast<std::size_t>(std::max(0.0, std::floor((lo + kPi) / width)));
        for (std::size_t b = std::min(first, n_bins - 1); b < n_bins; ++b) {
            const double b_lo = -kPi + static_cast<double>(b) * width;
            const double b_hi = b_lo + width;
            if (b_lo >= hi) break;
            const double overlap = std::min(hi, b_hi) - std::max(lo, b_lo);
            if (overlap > 0.0) mass[b] += density * overlap;
        }
    };

    const double hbar = basis.hbar();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double pop = std::max(0.0, populations[i]);
        if (pop == 0.0) continue;
        total += pop;
        const double density = pop / hbar;
        double lo = basis.momentum(i) - 0.5 * hbar;
        double hi = lo + hbar;
        if (fold == MomentumFold::fold) {
            const double shift = fold_momentum(lo) - lo;
            lo += shift;
            hi += shift;
            if (hi > kPi) {
                spread(lo, kPi, density);
                spread(-kPi, hi - kTwoPi, density);
            } else {
                spread(lo, hi, density);
            }
            inside += pop;
        } else {
            const double a = std::max(lo, -kPi), b = std::min(hi, kPi);
            if (b > a) {
                spread(a, b, density);
                inside += density * (b - a);
            }
        }
    }
    if (!(total > 0.0)) throw ComputeError("empty distribution");
    QuantumMomentum out;
    out.histogram = MomentumHistogram(std::move(mass));
    out.window_population = inside / total;
    out.escaping = out.window_population < 0.99;
    return out;
}

QuantumMomentum momentum_distribution(const DensityMatrix& state, std::size_t n_bins, MomentumFold fold) {
    return rebin_populations(state.basis(), state.populations(), n_bins, fold);
}

}  // namespace attractoscope::quantum
