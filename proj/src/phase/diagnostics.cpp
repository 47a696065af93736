#include "attractoscope/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "attractoscope/errors.hpp"

namespace attractoscope {

double participation_ratio(const MomentumHistogram& hist) {
    double sum_sq = 0.0;
    for (double p : hist.probs()) sum_sq += p * p;
    if (!(sum_sq > 0.0)) throw ComputeError("empty distribution");
    return 1.0 / sum_sq / static_cast<double>(hist.n_bins());
}

double overlap(const PhaseDistribution& d1, const PhaseDistribution& d2) {
    if (!(d1.grid() == d2.grid())) throw ComputeError("overlap requires identical grids");
    const auto w1 = d1.weights();
    const auto w2 = d2.weights();
    double s12 = 0.0, s11 = 0.0, s22 = 0.0;
    for (std::size_t i = 0; i < w1.size(); ++i) {
        s12 += w1[i] * w2[i];
        s11 += w1[i] * w1[i];
        s22 += w2[i] * w2[i];
    }
    if (!(s11 > 0.0) || !(s22 > 0.0)) throw ComputeError("overlap of an empty distribution");
    const double o = s12 / std::sqrt(s11 * s22);
    return std::min(o, 1.0);
}

std::optional<std::size_t> detect_period(std::span<const PhasePoint> orbit, double tol, std::size_t q_max) {
    if (!(tol > 0.0)) throw ConfigError("period tolerance must be positive");
    if (q_max < 1) throw ConfigError("q_max must be at least 1");
    if (orbit.size() < 2 * q_max) throw ComputeError("insufficient samples");
    for (std::size_t q = 1; q <= q_max; ++q) {
        bool periodic = true;
        for (std::size_t t = 0; t + q < orbit.size(); ++t) {
            if (!(cylinder_distance(orbit[t], orbit[t + q]) < tol)) {
                periodic = false;
                break;
            }
        }
        if (periodic) return q;
    }
    return std::nullopt;
}

double MomentEllipse::area() const {
    const double det = var_x * var_p - cov_xp * cov_xp;
    return kPi * std::sqrt(std::max(det, 0.0));
}

std::vector<MomentEllipse> moment_ellipses(const PhaseDistribution& dist, std::span<const PhasePoint> centers) {
    if (centers.empty()) throw ConfigError("moment_ellipses needs at least one center");
    const auto& g = dist.grid();
    struct Sums {
        double w = 0, x = 0, p = 0, xx = 0, pp = 0, xp = 0;
    };
    std::vector<Sums> sums(centers.size());
    for (std::size_t ip = 0; ip < g.np; ++ip) {
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            const double w = dist.at(ix, ip);
            if (w == 0.0) continue;
            const PhasePoint cell{g.x_center(ix), g.p_center(ip)};
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < centers.size(); ++c) {
                const double d = cylinder_distance(cell, centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            const double dx = angle_difference(cell.x, centers[best].x);
            const double dp = cell.p - centers[best].p;
            auto& s = sums[best];
            s.w += w;
            s.x += w * dx;
            s.p += w * dp;
            s.xx += w * dx * dx;
            s.pp += w * dp * dp;
            s.xp += w * dx * dp;
        }
    }
    double total = 0.0;
    for (const auto& s : sums) total += s.w;
    std::vector<MomentEllipse> out;
    out.reserve(centers.size());
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const auto& s = sums[c];
        MomentEllipse e;
        if (s.w > 0.0) {
            const double mx = s.x / s.w;
            const double mp = s.p / s.w;
            e.center = make_point(centers[c].x + mx, centers[c].p + mp);
            e.var_x = s.xx / s.w - mx * mx;
            e.var_p = s.pp / s.w - mp * mp;
            e.cov_xp = s.xp / s.w - mx * mp;
            e.weight = s.w / total;
        } else {
            e.center = centers[c];
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace attractoscope
