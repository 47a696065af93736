#pragma once

#include <cstddef>

namespace attractoscope::quantum {

// Truncated momentum basis |n⟩, n = -L..L with n_levels = 2L + 1 and p_n = ħ n.
// Storage index i = n + L.
class MomentumBasis {
public:
    // Throws ConfigError unless n_levels is odd and n_levels ħ ≥ 1.2 · 2π.
    MomentumBasis(std::size_t n_levels, double hbar_eff);

    // Smallest odd 3·5·7-smooth size whose momentum range covers |p| ≤ p_half,
    // never smaller than the 1.25 · 2π / ħ floor.
    static MomentumBasis covering(double p_half, double hbar_eff);

    std::size_t size() const { return n_levels_; }
    long half() const { return half_; }
    double hbar() const { return hbar_; }
    long level(std::size_t i) const { return static_cast<long>(i) - half_; }
    std::size_t index(long level) const { return static_cast<std::size_t>(level + half_); }
    double momentum(std::size_t i) const { return hbar_ * static_cast<double>(level(i)); }
    double p_max() const { return hbar_ * static_cast<double>(half_); }

    // x_j = 2π j / n_levels, the grid reached by a discrete Fourier transform.
    double position(std::size_t j) const;

    // Number of levels per side in the outermost 5% used by the leak guard.
    std::size_t edge_levels() const;

    friend bool operator==(const MomentumBasis&, const MomentumBasis&) = default;

private:
    std::size_t n_levels_;
    long half_;
    double hbar_;
};

}  // namespace attractoscope::quantum
