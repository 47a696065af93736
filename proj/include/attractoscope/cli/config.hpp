#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attractoscope/diagnostics.hpp"
#include "attractoscope/distribution.hpp"
#include "attractoscope/scan/eta_map.hpp"
#include "attractoscope/scan/model.hpp"
#include "attractoscope/scan/search.hpp"

namespace attractoscope::cli {

enum class Command { simulate, scan, husimi, report };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

enum class Preset { standard, coarse };

// Fully resolved run description. Every field has a value after parsing.
struct RunConfig {
    Command command = Command::simulate;
    scan::ModelParams model;
    scan::Mode mode = scan::Mode::classical;
    Preset preset = Preset::standard;
    scan::ScanProtocol protocol;
    GridSpec grid;
    std::string output_dir = "attractoscope-out";

    double period_tol = kDefaultPeriodTolerance;
    std::size_t q_max = kDefaultMaxPeriod;

    scan::Axis k_axis;
    scan::Axis d_axis;
    double eta_threshold = scan::kDefaultEtaThreshold;
    scan::SearchDirections search = scan::SearchDirections::both;

    // Chaotic counterpart for the report command; searched for when unset.
    std::optional<double> chaotic_k;
    std::optional<double> chaotic_d;

    bool write_state = false;

    void validate() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// key = value pairs, applied after the text (e.g. from --set).
using Overrides = std::vector<std::pair<std::string, std::string>>;

// Flat "key = value" text with '#' comments. Unknown keys, malformed values
// and constraint violations throw ConfigError naming the line and key.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

// Canonical text of a resolved config; parse_config(echo(c)) == c.
std::string echo(const RunConfig& config);

// 64-bit FNV-1a of the echo with output_dir left out, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace attractoscope::cli
