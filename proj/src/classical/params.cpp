#include "attractoscope/classical/params.hpp"

#include <cmath>

#include "attractoscope/errors.hpp"

namespace attractoscope::classical {

void DmkrmParams::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must be in [0,1]");
    if (!(hbar_eff > 0.0)) throw ConfigError("hbar_eff must be > 0");
    if (!(k >= 0.0)) throw ConfigError("k must be >= 0");
    if (!std::isfinite(a) || !std::isfinite(phi)) throw ConfigError("a and phi must be finite");
}

void DpddsParams::validate() const {
    if (!(Gamma >= 0.0)) throw ConfigError("Gamma must be >= 0");
    if (!(hbar_eff > 0.0)) throw ConfigError("hbar_eff must be > 0");
    if (!(k >= 0.0)) throw ConfigError("k must be >= 0");
    if (!(mass > 0.0)) throw ConfigError("mass must be > 0");
    if (steps_per_period == 0) throw ConfigError("dt_per_period must be a positive integer");
    if (!std::isfinite(A) || !std::isfinite(phi_a)) throw ConfigError("A and phi_a must be finite");
}

}  // namespace attractoscope::classical
