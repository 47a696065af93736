#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "attractoscope/distribution.hpp"
#include "attractoscope/geometry.hpp"

namespace attractoscope {

// η = (Σ P_i²)⁻¹ / N. Lies in [1/N, 1].
double participation_ratio(const MomentumHistogram& hist);

// Cosine-normalized overlap Σ w1 w2 / sqrt(Σ w1² Σ w2²). Both distributions must
// share a grid. Self-overlap is exactly 1.
double overlap(const PhaseDistribution& d1, const PhaseDistribution& d2);

inline constexpr double kDefaultPeriodTolerance = 1e-6;
inline constexpr std::size_t kDefaultMaxPeriod = 64;

// Smallest q <= q_max with dist(orbit[t], orbit[t+q]) < tol over the whole
// window, or nullopt ("chaotic"). Needs at least 2*q_max samples.
std::optional<std::size_t> detect_period(std::span<const PhasePoint> orbit,
                                         double tol = kDefaultPeriodTolerance,
                                         std::size_t q_max = kDefaultMaxPeriod);

// Second moments of the part of a distribution closest to one center.
struct MomentEllipse {
    PhasePoint center;    // weighted mean
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0;
    double weight = 0.0;  // probability mass assigned to this center

    // Area of the one-sigma ellipse, π sqrt(det Σ).
    double area() const;
};

// Partitions cells by nearest center (cylinder metric) and returns the
// weighted covariance of each part. x offsets are unwrapped around the center.
std::vector<MomentEllipse> moment_ellipses(const PhaseDistribution& dist,
                                           std::span<const PhasePoint> centers);

}  // namespace attractoscope
