#include "attractoscope/geometry.hpp"

#include <random>

#include "attractoscope/rng.hpp"

namespace attractoscope {

PhasePoint Ensemble::uniform_member(std::uint64_t seed, std::uint64_t index) {
    Engine engine = make_engine(seed, Stream::initial_condition, index);
    std::uniform_real_distribution<double> ux(0.0, kTwoPi);
    std::uniform_real_distribution<double> up(-kPi, kPi);
    const double x = ux(engine);
    const double p = up(engine);
    return make_point(x, p);
}

Ensemble Ensemble::uniform(std::uint64_t seed, std::size_t count) {
    Ensemble e;
    e.seed = seed;
    e.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) e.points.push_back(uniform_member(seed, i));
    return e;
}

}  // namespace attractoscope
