#include "attractoscope/quantum/basis.hpp"

#include <cmath>
#include <string>

#include "attractoscope/errors.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope::quantum {

namespace {

bool is_odd_smooth(std::size_t n) {
    if (n % 2 == 0) return false;
    for (std::size_t f : {3u, 5u, 7u})
        while (n % f == 0) n /= f;
    return n == 1;
}

}  // namespace

MomentumBasis::MomentumBasis(std::size_t n_levels, double hbar_eff)
    : n_levels_(n_levels), half_(static_cast<long>(n_levels / 2)), hbar_(hbar_eff) {
    if (!(hbar_eff > 0.0)) throw ConfigError("hbar_eff must be > 0");
    if (n_levels % 2 == 0 || n_levels < 3) throw ConfigError("n_levels must be an odd integer >= 3");
    if (static_cast<double>(n_levels) * hbar_eff < 1.2 * kTwoPi)
        throw ConfigError("basis of " + std::to_string(n_levels) + " levels does not cover [-pi, pi] with a 20% margin");
}

MomentumBasis MomentumBasis::covering(double p_half, double hbar_eff) {
    if (!(hbar_eff > 0.0)) throw ConfigError("hbar_eff must be > 0");
    const double floor_levels = 1.25 * kTwoPi / hbar_eff;
    const double need = std::max(2.0 * p_half / hbar_eff + 1.0, floor_levels);
    auto n = static_cast<std::size_t>(std::ceil(need));
    while (!is_odd_smooth(n)) ++n;
    return MomentumBasis(n, hbar_eff);
}

double MomentumBasis::position(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(n_levels_);
}

std::size_t MomentumBasis::edge_levels() const {
    // levels with |n| > 0.95 L
    const auto cut = static_cast<long>(std::floor(0.95 * static_cast<double>(half_)));
    return static_cast<std::size_t>(std::max(1L, half_ - cut));
}

}  // namespace attractoscope::quantum
