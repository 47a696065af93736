#include "attractoscope/scan/eta_map.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "attractoscope/errors.hpp"
#include "attractoscope/io.hpp"
#include "attractoscope/parallel.hpp"
#include "attractoscope/rng.hpp"
#include "attractoscope/scan/attractor.hpp"

namespace attractoscope::scan {

void Axis::validate(const char* name) const {
    if (count < 1) throw ConfigError(std::string(name) + " axis needs at least one value");
    if (!std::isfinite(min) || !std::isfinite(max)) throw ConfigError(std::string(name) + " axis bounds must be finite");
    if (count == 1 ? min != max : !(max > min))
        throw ConfigError(std::string(name) + " axis needs max > min");
}

double Axis::value(std::size_t i) const {
    if (count == 1) return min;
    if (i + 1 == count) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

double Axis::normalized(double v) const { return count == 1 ? 0.0 : (v - min) / (max - min); }

std::size_t Axis::nearest(double v) const {
    if (count == 1) return 0;
    const double u = normalized(v) * static_cast<double>(count - 1);
    const double r = std::round(u);
    if (r <= 0.0) return 0;
    if (r >= static_cast<double>(count - 1)) return count - 1;
    return static_cast<std::size_t>(r);
}

double EtaMap::failed_fraction() const {
    if (status.empty()) return 0.0;
    std::size_t failed = 0;
    for (auto s : status) failed += s == CellStatus::failed;
    return static_cast<double>(failed) / static_cast<double>(status.size());
}

Axis default_k_axis(System system, bool coarse) {
    const std::size_t n = coarse ? 28 : 111;
    return system == System::dmkrm ? Axis{2.0, 7.5, n} : Axis{2.0, 6.0, n};
}

Axis default_d_axis(System system, bool coarse) {
    const std::size_t n = coarse ? 23 : 91;
    return system == System::dmkrm ? Axis{0.05, 0.95, n} : Axis{0.02, 0.20, n};
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t index) { return split_seed(seed, Stream::cell, index); }

namespace {

EtaMap evaluate(const ModelParams& base, const ScanProtocol& protocol, const Axis& k_axis, const Axis& d_axis,
                Mode mode, const std::vector<std::size_t>* cells) {
    k_axis.validate("k");
    d_axis.validate("d");
    protocol.validate(base.system, mode);
    EtaMap map;
    map.system = base.system;
    map.mode = mode;
    map.k_axis = k_axis;
    map.d_axis = d_axis;
    const std::size_t n = k_axis.count * d_axis.count;
    map.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    map.status.assign(n, CellStatus::failed);
    map.errors.assign(n, cells ? "not evaluated" : "");
    map.seeds.resize(n);
    for (std::size_t i = 0; i < n; ++i) map.seeds[i] = cell_seed(protocol.seed, i);

    std::vector<std::size_t> todo;
    if (cells) {
        for (auto c : *cells) {
            if (c >= n) throw ConfigError("cell index outside the map");
            todo.push_back(c);
        }
    } else {
        todo.resize(n);
        for (std::size_t i = 0; i < n; ++i) todo[i] = i;
    }

    ScanProtocol cell_protocol = protocol;
    cell_protocol.threads = 1;
    parallel_for(todo.size(), protocol.threads, [&](std::size_t j) {
        const std::size_t i = todo[j];
        const ModelParams m = base.at(k_axis.value(i % k_axis.count), d_axis.value(i / k_axis.count));
        ScanProtocol p = cell_protocol;
        p.seed = map.seeds[i];
        try {
            map.values[i] = cell_eta(m, mode, p, map.seeds[i]);
            map.status[i] = CellStatus::ok;
            map.errors[i].clear();
        } catch (const std::exception& e) {
            map.values[i] = std::numeric_limits<double>::quiet_NaN();
            map.status[i] = CellStatus::failed;
            map.errors[i] = e.what();
        }
    });
    return map;
}

}  // namespace

EtaMap eta_map(const ModelParams& base, const ScanProtocol& protocol, const Axis& k_axis, const Axis& d_axis,
               Mode mode) {
    if (k_axis.count < 2 || d_axis.count < 2) throw ConfigError("scan axes need at least 2 values each");
    return evaluate(base, protocol, k_axis, d_axis, mode, nullptr);
}

EtaMap eta_map_cells(const ModelParams& base, const ScanProtocol& protocol, const Axis& k_axis, const Axis& d_axis,
                     Mode mode, const std::vector<std::size_t>& cells) {
    return evaluate(base, protocol, k_axis, d_axis, mode, &cells);
}

void write_eta_csv(std::ostream& out, const EtaMap& map) {
    out << "k,d,eta,status\n";
    for (std::size_t id = 0; id < map.d_axis.count; ++id)
        for (std::size_t ik = 0; ik < map.k_axis.count; ++ik) {
            const std::size_t i = map.index(ik, id);
            const bool ok = map.status[i] == CellStatus::ok;
            out << format_double(map.k_axis.value(ik)) << ',' << format_double(map.d_axis.value(id)) << ','
                << (ok ? format_double(map.values[i]) : std::string("nan")) << ',' << (ok ? "ok" : "failed") << '\n';
        }
}

void write_eta_pgm(std::ostream& out, const EtaMap& map) {
    const std::size_t w = map.k_axis.count, h = map.d_axis.count;
    std::vector<double> grid(w * h, 0.0);
    for (std::size_t row = 0; row < h; ++row) {
        const std::size_t id = h - 1 - row;
        for (std::size_t ik = 0; ik < w; ++ik) {
            const std::size_t i = map.index(ik, id);
            grid[row * w + ik] = map.status[i] == CellStatus::ok ? map.values[i] : 0.0;
        }
    }
    write_pgm(out, w, h, grid);
}

}  // namespace attractoscope::scan
