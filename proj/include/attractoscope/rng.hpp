#pragma once

#include <cstdint>
#include <random>

namespace attractoscope {

using Engine = std::mt19937_64;

// Random streams attached to one ensemble member or scan cell.
enum class Stream : std::uint64_t {
    initial_condition = 0,
    noise = 1,
    cell = 2,
    trajectory = 3,
};

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based derivation of a child seed; independent of evaluation order.
inline std::uint64_t split_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    return splitmix64(h ^ (index * 0xd1342543de82ef95ULL));
}

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index) {
    return Engine(split_seed(seed, stream, index));
}

// Zero-mean Gaussian kick source with a fixed standard deviation.
class GaussianNoise {
public:
    GaussianNoise(Engine engine, double sigma) : engine_(engine), sigma_(sigma) {}

    double operator()() { return sigma_ * normal_(engine_); }

    double sigma() const { return sigma_; }

private:
    Engine engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    double sigma_;
};

}  // namespace attractoscope
