#include "attractoscope/scan/model.hpp"

#include <string>

#include "attractoscope/errors.hpp"

namespace attractoscope::scan {

std::string_view to_string(System s) { return s == System::dmkrm ? "dmkrm" : "dpdds"; }

std::string_view to_string(Mode m) {
    switch (m) {
        case Mode::classical: return "classical";
        case Mode::noisy: return "noisy";
        case Mode::quantum: return "quantum";
    }
    return "classical";
}

System parse_system(std::string_view s) {
    if (s == "dmkrm") return System::dmkrm;
    if (s == "dpdds") return System::dpdds;
    throw ConfigError("system must be dmkrm or dpdds, got '" + std::string(s) + "'");
}

Mode parse_mode(std::string_view s) {
    if (s == "classical") return Mode::classical;
    if (s == "noisy") return Mode::noisy;
    if (s == "quantum") return Mode::quantum;
    throw ConfigError("mode must be classical, noisy or quantum, got '" + std::string(s) + "'");
}

double ModelParams::k() const { return system == System::dmkrm ? dmkrm.k : dpdds.k; }

double ModelParams::d() const { return system == System::dmkrm ? dmkrm.gamma : dpdds.Gamma; }

double ModelParams::hbar_eff() const { return system == System::dmkrm ? dmkrm.hbar_eff : dpdds.hbar_eff; }

ModelParams ModelParams::at(double k, double d) const {
    ModelParams m = *this;
    if (system == System::dmkrm) {
        m.dmkrm.k = k;
        m.dmkrm.gamma = d;
    } else {
        m.dpdds.k = k;
        m.dpdds.Gamma = d;
    }
    return m;
}

ModelParams ModelParams::with_noise(bool noise) const {
    ModelParams m = *this;
    m.dmkrm.noise = noise;
    m.dpdds.noise = noise;
    return m;
}

void ModelParams::validate() const {
    if (system == System::dmkrm)
        dmkrm.validate();
    else
        dpdds.validate();
}

void ScanProtocol::validate(System system, Mode mode) const {
    if (n_ic < 1) throw ConfigError("n_ic must be >= 1");
    if (n_periods < 1) throw ConfigError("n_periods must be >= 1");
    if (keep_last < 1 || keep_last > n_periods) throw ConfigError("keep_last must be in [1, n_periods]");
    if (hist_bins < 1) throw ConfigError("hist_bins must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (system == System::dpdds && steps_per_period < 1) throw ConfigError("dt_per_period must be >= 1");
    if (mode == Mode::quantum) {
        if (quantum_periods < 1) throw ConfigError("quantum_periods must be >= 1");
        if (system == System::dpdds && quantum_steps_per_period < 1)
            throw ConfigError("quantum_dt_per_period must be >= 1");
        if (n_levels != 0 && (n_levels < 3 || n_levels % 2 == 0))
            throw ConfigError("n_levels must be 0 (auto) or an odd number >= 3");
    }
}

ScanProtocol ScanProtocol::defaults(System system) {
    ScanProtocol p;
    if (system == System::dpdds) {
        p.n_ic = 100;
        p.n_periods = 1500;
        p.keep_last = 50;
    }
    return p;
}

ScanProtocol ScanProtocol::coarse(System system) {
    ScanProtocol p;
    if (system == System::dmkrm) {
        p.n_ic = 1000;
        p.n_periods = 2000;
        p.keep_last = 100;
    } else {
        p.n_ic = 50;
        p.n_periods = 400;
        p.keep_last = 50;
        p.steps_per_period = 200;
    }
    return p;
}

}  // namespace attractoscope::scan
