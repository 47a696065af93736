#include "attractoscope/scan/search.hpp"

#include <cmath>
#include <optional>

#include "attractoscope/errors.hpp"

namespace attractoscope::scan {

namespace {

bool inside(const Axis& a, double v) {
    const double slack = 1e-12 * std::max(1.0, std::abs(a.max - a.min));
    return v >= a.min - slack && v <= a.max + slack;
}

}  // namespace

ChaoticTarget nearest_chaotic(const EtaMap& map, double k, double d, double eta_threshold,
                              SearchDirections directions) {
    if (!inside(map.k_axis, k) || !inside(map.d_axis, d)) throw ConfigError("start point outside the map window");
    if (!(eta_threshold > 0.0 && eta_threshold < 1.0)) throw ConfigError("eta_threshold must be in (0, 1)");
    const std::size_t ik0 = map.k_axis.nearest(k);
    const std::size_t id0 = map.d_axis.nearest(d);
    const double u0 = map.k_axis.normalized(map.k_axis.value(ik0));
    const double v0 = map.d_axis.normalized(map.d_axis.value(id0));

    std::optional<ChaoticTarget> best;
    for (std::size_t id = 0; id < map.d_axis.count; ++id) {
        if (directions == SearchDirections::k_only && id != id0) continue;
        for (std::size_t ik = 0; ik < map.k_axis.count; ++ik) {
            const std::size_t i = map.index(ik, id);
            if (map.status[i] != CellStatus::ok || !(map.values[i] >= eta_threshold)) continue;
            const double du = map.k_axis.normalized(map.k_axis.value(ik)) - u0;
            const double dv = map.d_axis.normalized(map.d_axis.value(id)) - v0;
            const double dist = std::sqrt(du * du + dv * dv);
            if (!best || dist < best->distance - 1e-12 ||
                (std::abs(dist - best->distance) <= 1e-12 &&
                 (ik < best->ik || (ik == best->ik && id < best->id)))) {
                best = ChaoticTarget{map.k_axis.value(ik), map.d_axis.value(id), ik, id, dist};
            }
        }
    }
    if (!best) throw ComputeError("no chaotic background in window");
    if (best->ik == ik0 && best->id == id0) best->distance = 0.0;
    return *best;
}

}  // namespace attractoscope::scan
