#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace attractoscope {

// Invalid user input: bad keys, out-of-range parameters, malformed config.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure inside a numerical routine (divergence, truncation leak, ...).
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem or stream failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivergenceError : public ComputeError {
public:
    DivergenceError(std::uint64_t step)
        : ComputeError("trajectory diverged at step " + std::to_string(step)), step_(step) {}

    std::uint64_t step() const noexcept { return step_; }

private:
    std::uint64_t step_;
};

}  // namespace attractoscope
