#pragma once

#include <cstddef>

#include "attractoscope/scan/eta_map.hpp"

namespace attractoscope::scan {

inline constexpr double kDefaultEtaThreshold = 0.05;

enum class SearchDirections { both, k_only };

struct ChaoticTarget {
    double k = 0.0;
    double d = 0.0;
    std::size_t ik = 0;
    std::size_t id = 0;
    double distance = 0.0;  // Euclidean, each axis rescaled to [0, 1]
};

// Nearest evaluated cell with η ≥ threshold from the cell closest to
// (k, d). Ties go to the smaller k, then the smaller d. k_only restricts the
// search to the start row. Throws ComputeError("no chaotic background in
// window") when there is no such cell.
ChaoticTarget nearest_chaotic(const EtaMap& map, double k, double d, double eta_threshold = kDefaultEtaThreshold,
                              SearchDirections directions = SearchDirections::both);

}  // namespace attractoscope::scan
