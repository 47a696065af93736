#include "attractoscope/quantum/state_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "attractoscope/errors.hpp"
#include "attractoscope/io.hpp"

namespace attractoscope::quantum {

void write_state(std::ostream& out, const DensityMatrix& state) {
    const auto& rho = state.rho();
    out << "# attractoscope density-matrix\n";
    out << "n_levels " << state.basis().size() << '\n';
    out << "hbar_eff " << format_double(state.basis().hbar()) << '\n';
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (j) out << ' ';
            out << format_double(rho(i, j).real()) << ' ' << format_double(rho(i, j).imag());
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing density matrix");
}

DensityMatrix read_state(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "# attractoscope density-matrix")
        throw IoError("not a density-matrix file");
    std::string key;
    std::size_t n = 0;
    double hbar = 0.0;
    if (!(in >> key >> n) || key != "n_levels") throw IoError("missing n_levels");
    if (!(in >> key >> hbar) || key != "hbar_eff") throw IoError("missing hbar_eff");
    const MomentumBasis basis(n, hbar);
    Eigen::MatrixXcd rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im)) throw IoError("truncated density matrix");
            rho(i, j) = cplx(re, im);
        }
    return DensityMatrix(basis, std::move(rho));
}

}  // namespace attractoscope::quantum
