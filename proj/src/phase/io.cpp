#include "attractoscope/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "attractoscope/errors.hpp"

namespace attractoscope {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_distribution_text(std::ostream& out, const PhaseDistribution& d) {
    const auto& g = d.grid();
    out << "# attractoscope phase-distribution\n";
    out << "nx " << g.nx << "\n";
    out << "np " << g.np << "\n";
    out << "x_window 0 " << format_double(kTwoPi) << "\n";
    out << "p_window " << format_double(g.p_min) << " " << format_double(g.p_max) << "\n";
    std::string line;
    for (std::size_t ip = 0; ip < g.np; ++ip) {
        line.clear();
        for (std::size_t ix = 0; ix < g.nx; ++ix) {
            if (ix) line += ' ';
            line += format_double(d.at(ix, ip));
        }
        line += '\n';
        out << line;
    }
}

namespace {

void expect_key(std::istream& in, const std::string& key) {
    std::string got;
    if (!(in >> got) || got != key) throw IoError("phase-distribution: expected '" + key + "'");
}

}  // namespace

PhaseDistribution read_distribution_text(std::istream& in) {
    std::string header;
    std::getline(in, header);
    if (header.rfind("# attractoscope phase-distribution", 0) != 0) throw IoError("not a phase-distribution file");
    GridSpec g;
    double x0 = 0, x1 = 0;
    expect_key(in, "nx");
    in >> g.nx;
    expect_key(in, "np");
    in >> g.np;
    expect_key(in, "x_window");
    in >> x0 >> x1;
    expect_key(in, "p_window");
    in >> g.p_min >> g.p_max;
    if (!in) throw IoError("phase-distribution: malformed header");
    std::vector<double> w(g.nx * g.np);
    for (double& v : w) {
        if (!(in >> v)) throw IoError("phase-distribution: truncated body");
    }
    return PhaseDistribution(g, std::move(w));
}

void write_pgm(std::ostream& out, std::size_t width, std::size_t height, std::span<const double> values) {
    double vmax = 0.0;
    for (double v : values)
        if (std::isfinite(v)) vmax = std::max(vmax, v);
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> row(width);
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const double v = values[r * width + c];
            double level = (vmax > 0.0 && std::isfinite(v)) ? 255.0 * v / vmax : 0.0;
            row[c] = static_cast<unsigned char>(std::lround(std::clamp(level, 0.0, 255.0)));
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

void write_distribution_pgm(std::ostream& out, const PhaseDistribution& d) {
    const auto& g = d.grid();
    std::vector<double> flipped(g.nx * g.np);
    for (std::size_t ip = 0; ip < g.np; ++ip)
        for (std::size_t ix = 0; ix < g.nx; ++ix) flipped[(g.np - 1 - ip) * g.nx + ix] = d.at(ix, ip);
    write_pgm(out, g.nx, g.np, flipped);
}

void write_histogram_csv(std::ostream& out, const MomentumHistogram& h) {
    out << "p,probability\n";
    const auto probs = h.probs();
    for (std::size_t i = 0; i < h.n_bins(); ++i)
        out << format_double(h.bin_center(i)) << ',' << format_double(probs[i]) << '\n';
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer, bool binary) {
    std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace attractoscope
