#pragma once

#include <string>
#include <vector>

#include "attractoscope/cli/config.hpp"

namespace attractoscope::cli {

struct Artifact {
    std::string name;    // relative to output_dir
    std::string format;  // e.g. "distribution-text", "pgm", "csv", "json"
};

struct Manifest {
    std::string command;
    std::string config_hash;
    std::string status = "ok";
    std::string error;
    std::vector<Artifact> files;

    std::string to_json() const;
};

// Runs one command and writes its artifacts, the resolved config echo
// (config.txt) and manifest.json into config.output_dir. The directory is
// checked before any computation. On a compute error a manifest with status
// "failed" and the files written so far is left behind and the error is
// rethrown.
Manifest run(const RunConfig& config);

}  // namespace attractoscope::cli
