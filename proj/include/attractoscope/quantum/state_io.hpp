#pragma once

#include <iosfwd>

#include "attractoscope/quantum/state.hpp"

namespace attractoscope::quantum {

// Text dump:
//   # attractoscope density-matrix
//   n_levels <N>
//   hbar_eff <ħ>
// then N rows of N "re im" pairs (row = bra level, lowest level first).
void write_state(std::ostream& out, const DensityMatrix& state);
DensityMatrix read_state(std::istream& in);

}  // namespace attractoscope::quantum
