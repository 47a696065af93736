#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace attractoscope {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce an angle to [0, 2π).
inline double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative number plus 2π can round up to 2π itself.
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Fold a momentum onto [-π, π).
inline double fold_momentum(double p) { return wrap_angle(p + kPi) - kPi; }

// Wrapped difference a - b on the circle, in (-π, π].
inline double angle_difference(double a, double b) {
    double d = std::fmod(a - b, kTwoPi);
    if (d > kPi) d -= kTwoPi;
    if (d <= -kPi) d += kTwoPi;
    return d;
}

struct PhasePoint {
    double x = 0.0;  // radians, kept in [0, 2π)
    double p = 0.0;

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

inline PhasePoint make_point(double x, double p) { return {wrap_angle(x), p}; }

// d^2 = min(|dx|, 2π - |dx|)^2 + dp^2
inline double cylinder_distance(const PhasePoint& a, const PhasePoint& b) {
    const double dx = angle_difference(a.x, b.x);
    const double dp = a.p - b.p;
    return std::sqrt(dx * dx + dp * dp);
}

// Points on the cylinder together with the seed they were drawn from. Member i
// owns its own random streams derived from (seed, i), so ensembles can be
// partitioned across workers without changing results.
struct Ensemble {
    std::vector<PhasePoint> points;
    std::uint64_t seed = 0;

    // Uniform in x ∈ [0, 2π), p ∈ [-π, π].
    static Ensemble uniform(std::uint64_t seed, std::size_t count);

    // Initial condition of member i of a uniform ensemble with this seed.
    static PhasePoint uniform_member(std::uint64_t seed, std::uint64_t index);

    std::size_t size() const { return points.size(); }
};

}  // namespace attractoscope
