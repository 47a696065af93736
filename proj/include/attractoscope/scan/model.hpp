#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "attractoscope/classical/params.hpp"
#include "attractoscope/distribution.hpp"

namespace attractoscope::scan {

enum class System { dmkrm, dpdds };
enum class Mode { classical, noisy, quantum };

std::string_view to_string(System s);
std::string_view to_string(Mode m);
System parse_system(std::string_view s);
Mode parse_mode(std::string_view s);

// One point of either model. The scanned pair is (k, d) with d = γ for the
// kicked map and d = Γ for the driven system.
struct ModelParams {
    System system = System::dmkrm;
    classical::DmkrmParams dmkrm;
    classical::DpddsParams dpdds;

    double k() const;
    double d() const;
    double hbar_eff() const;
    ModelParams at(double k, double d) const;
    ModelParams with_noise(bool noise) const;
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Per-cell simulation recipe. Step counts are map iterations for the kicked
// map and forcing periods for the driven system.
struct ScanProtocol {
    std::size_t n_ic = 10000;
    std::uint64_t n_periods = 5000;
    std::uint64_t keep_last = 100;
    std::size_t steps_per_period = classical::kDefaultStepsPerPeriod;  // driven system only
    std::size_t quantum_periods = 50;
    std::size_t quantum_steps_per_period = 200;  // driven system only
    std::size_t n_levels = 0;                    // 0: size the basis from a pilot run
    std::size_t hist_bins = kDefaultBins;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    void validate(System system, Mode mode) const;

    // Protocol sizes used for parameter-space pictures and for the "coarse"
    // preset meant for quick runs.
    static ScanProtocol defaults(System system);
    static ScanProtocol coarse(System system);

    friend bool operator==(const ScanProtocol&, const ScanProtocol&) = default;
};

}  // namespace attractoscope::scan
