#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "attractoscope/geometry.hpp"

namespace attractoscope {

inline constexpr std::size_t kDefaultBins = 729;  // 3^6

// Discretization of the window x ∈ [0, 2π) × p ∈ [p_min, p_max].
struct GridSpec {
    std::size_t nx = kDefaultBins;
    std::size_t np = kDefaultBins;
    double p_min = -kPi;
    double p_max = kPi;

    void validate() const;
    double cell_width_x() const { return kTwoPi / static_cast<double>(nx); }
    double cell_width_p() const { return (p_max - p_min) / static_cast<double>(np); }
    double cell_area() const { return cell_width_x() * cell_width_p(); }
    double x_center(std::size_t ix) const { return (static_cast<double>(ix) + 0.5) * cell_width_x(); }
    double p_center(std::size_t ip) const { return p_min + (static_cast<double>(ip) + 0.5) * cell_width_p(); }

    // Row-major (p-major) cell index, or nullopt if p is outside the window.
    std::optional<std::size_t> cell_of(const PhasePoint& pt) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Normalized density on a GridSpec: weights[ip * nx + ix] is a density, so
// sum(weights) * cell_area == 1.
class PhaseDistribution {
public:
    PhaseDistribution() = default;

    // Normalizes the given non-negative weights; throws on all-zero input.
    PhaseDistribution(GridSpec grid, std::vector<double> weights);

    const GridSpec& grid() const { return grid_; }
    std::span<const double> weights() const { return weights_; }
    double at(std::size_t ix, std::size_t ip) const { return weights_[ip * grid_.nx + ix]; }
    double max_weight() const;

private:
    GridSpec grid_;
    std::vector<double> weights_;
};

// Integer cell counts; merging partial accumulations is exact, so the result
// does not depend on how a point stream was partitioned.
class PhaseCounts {
public:
    explicit PhaseCounts(GridSpec grid);

    void add(const PhasePoint& pt);
    void merge(const PhaseCounts& other);

    const GridSpec& grid() const { return grid_; }
    std::uint64_t in_window() const { return in_window_; }
    std::uint64_t dropped() const { return dropped_; }
    double dropped_fraction() const;
    std::span<const std::uint64_t> counts() const { return counts_; }

    // Throws ComputeError when no point landed inside the window.
    PhaseDistribution normalized() const;

private:
    GridSpec grid_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t in_window_ = 0;
    std::uint64_t dropped_ = 0;
};

struct AccumulateResult {
    PhaseDistribution distribution;
    double dropped_fraction = 0.0;
};

// Histogram points on the grid, dropping those outside the p-window.
AccumulateResult accumulate(std::span<const PhasePoint> points, const GridSpec& grid);

// Momentum marginal on n_bins equal bins over [p_min, p_max].
class MomentumHistogram {
public:
    MomentumHistogram() = default;

    // Normalizes non-negative masses; throws "empty distribution" on all-zero.
    MomentumHistogram(std::vector<double> masses, double p_min = -kPi, double p_max = kPi);

    std::size_t n_bins() const { return probs_.size(); }
    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    double bin_width() const { return (p_max_ - p_min_) / static_cast<double>(probs_.size()); }
    double bin_center(std::size_t i) const { return p_min_ + (static_cast<double>(i) + 0.5) * bin_width(); }
    std::span<const double> probs() const { return probs_; }

    // Bin index of a momentum inside [p_min, p_max], nullopt otherwise.
    std::optional<std::size_t> bin_of(double p) const;

private:
    std::vector<double> probs_;
    double p_min_ = -kPi;
    double p_max_ = kPi;
};

// Integer momentum counts feeding a MomentumHistogram.
class MomentumCounts {
public:
    explicit MomentumCounts(std::size_t n_bins = kDefaultBins, double p_min = -kPi, double p_max = kPi);

    void add(double p);
    void merge(const MomentumCounts& other);
    std::uint64_t in_window() const { return in_window_; }
    std::uint64_t dropped() const { return dropped_; }
    std::span<const std::uint64_t> counts() const { return counts_; }
    MomentumHistogram normalized() const;

private:
    std::vector<std::uint64_t> counts_;
    double p_min_;
    double p_max_;
    std::uint64_t in_window_ = 0;
    std::uint64_t dropped_ = 0;
};

}  // namespace attractoscope
