#include "attractoscope/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "attractoscope/errors.hpp"

namespace attractoscope {

void GridSpec::validate() const {
    if (nx == 0 || np == 0) throw ConfigError("grid bin counts must be positive");
    if (!(p_max > p_min)) throw ConfigError("grid requires p_max > p_min");
}

std::optional<std::size_t> GridSpec::cell_of(const PhasePoint& pt) const {
    if (!(pt.p >= p_min && pt.p <= p_max)) return std::nullopt;
    auto ix = static_cast<std::size_t>(wrap_angle(pt.x) / kTwoPi * static_cast<double>(nx));
    auto ip = static_cast<std::size_t>((pt.p - p_min) / (p_max - p_min) * static_cast<double>(np));
    ix = std::min(ix, nx - 1);
    ip = std::min(ip, np - 1);
    return ip * nx + ix;
}

PhaseDistribution::PhaseDistribution(GridSpec grid, std::vector<double> weights)
    : grid_(grid), weights_(std::move(weights)) {
    grid_.validate();
    if (weights_.size() != grid_.nx * grid_.np) throw ConfigError("weight count does not match grid");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ComputeError("distribution weights must be finite and non-negative");
        total += w;
    }
    if (total <= 0.0) throw ComputeError("empty distribution");
    const double scale = 1.0 / (total * grid_.cell_area());
    for (double& w : weights_) w *= scale;
}

double PhaseDistribution::max_weight() const {
    return weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

PhaseCounts::PhaseCounts(GridSpec grid) : grid_(grid), counts_(grid.nx * grid.np, 0) { grid_.validate(); }

void PhaseCounts::add(const PhasePoint& pt) {
    if (auto cell = grid_.cell_of(pt)) {
        ++counts_[*cell];
        ++in_window_;
    } else {
        ++dropped_;
    }
}

void PhaseCounts::merge(const PhaseCounts& other) {
    if (!(other.grid_ == grid_)) throw ComputeError("cannot merge counts on different grids");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    in_window_ += other.in_window_;
    dropped_ += other.dropped_;
}

double PhaseCounts::dropped_fraction() const {
    const auto total = in_window_ + dropped_;
    return total == 0 ? 0.0 : static_cast<double>(dropped_) / static_cast<double>(total);
}

PhaseDistribution PhaseCounts::normalized() const {
    if (in_window_ == 0) throw ComputeError("no points inside the distribution window");
    std::vector<double> w(counts_.begin(), counts_.end());
    return PhaseDistribution(grid_, std::move(w));
}

AccumulateResult accumulate(std::span<const PhasePoint> points, const GridSpec& grid) {
    PhaseCounts counts(grid);
    for (const auto& pt : points) counts.add(pt);
    return {counts.normalized(), counts.dropped_fraction()};
}

MomentumHistogram::MomentumHistogram(std::vector<double> masses, double p_min, double p_max)
    : probs_(std::move(masses)), p_min_(p_min), p_max_(p_max) {
    if (probs_.empty()) throw ConfigError("histogram needs at least one bin");
    if (!(p_max > p_min)) throw ConfigError("histogram requires p_max > p_min");
    double total = 0.0;
    for (double m : probs_) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw ComputeError("histogram masses must be finite and non-negative");
        total += m;
    }
    if (total <= 0.0) throw ComputeError("empty distribution");
    for (double& m : probs_) m /= total;
}

std::optional<std::size_t> MomentumHistogram::bin_of(double p) const {
    if (!(p >= p_min_ && p <= p_max_)) return std::nullopt;
    auto i = static_cast<std::size_t>((p - p_min_) / (p_max_ - p_min_) * static_cast<double>(probs_.size()));
    return std::min(i, probs_.size() - 1);
}

MomentumCounts::MomentumCounts(std::size_t n_bins, double p_min, double p_max)
    : counts_(n_bins, 0), p_min_(p_min), p_max_(p_max) {
    if (n_bins == 0) throw ConfigError("histogram needs at least one bin");
}

void MomentumCounts::add(double p) {
    if (!(p >= p_min_ && p <= p_max_)) {
        ++dropped_;
        return;
    }
    auto i = static_cast<std::size_t>((p - p_min_) / (p_max_ - p_min_) * static_cast<double>(counts_.size()));
    ++counts_[std::min(i, counts_.size() - 1)];
    ++in_window_;
}

void MomentumCounts::merge(const MomentumCounts& other) {
    if (other.counts_.size() != counts_.size() || other.p_min_ != p_min_ || other.p_max_ != p_max_)
        throw ComputeError("cannot merge histograms with different binning");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    in_window_ += other.in_window_;
    dropped_ += other.dropped_;
}

MomentumHistogram MomentumCounts::normalized() const {
    return MomentumHistogram(std::vector<double>(counts_.begin(), counts_.end()), p_min_, p_max_);
}

}  // namespace attractoscope
