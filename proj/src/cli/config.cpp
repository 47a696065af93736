#include "attractoscope/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "attractoscope/errors.hpp"
#include "attractoscope/io.hpp"

namespace attractoscope::cli {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::scan: return "scan";
        case Command::husimi: return "husimi";
        case Command::report: return "report";
    }
    return "simulate";
}

Command parse_command(std::string_view s) {
    if (s == "simulate") return Command::simulate;
    if (s == "scan") return Command::scan;
    if (s == "husimi") return Command::husimi;
    if (s == "report") return Command::report;
    throw ConfigError("command must be simulate, scan, husimi or report, got '" + std::string(s) + "'");
}

namespace {

struct Entry {
    std::string key;
    std::string value;
    std::string where;  // "line N" or "--set"
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) throw ConfigError("expected a number, got '" + v + "'");
    return out;
}

std::uint64_t parse_uint(const std::string& v) {
    std::uint64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw ConfigError("expected a non-negative integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("expected true or false, got '" + v + "'");
}

Preset parse_preset(const std::string& v) {
    if (v == "default") return Preset::standard;
    if (v == "coarse") return Preset::coarse;
    throw ConfigError("preset must be default or coarse, got '" + v + "'");
}

scan::SearchDirections parse_search(const std::string& v) {
    if (v == "both") return scan::SearchDirections::both;
    if (v == "k_only") return scan::SearchDirections::k_only;
    throw ConfigError("search must be both or k_only, got '" + v + "'");
}

std::vector<Entry> tokenize(std::string_view text) {
    std::vector<Entry> entries;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where + ": missing key");
        if (value.empty()) throw ConfigError(where + ": key '" + key + "': missing value");
        if (auto it = seen.find(key); it != seen.end())
            throw ConfigError(where + ": key '" + key + "': already set on line " + std::to_string(it->second));
        seen[key] = line_no;
        entries.push_back({key, value, where});
    }
    return entries;
}

}  // namespace

void RunConfig::validate() const {
    model.validate();
    protocol.validate(model.system, mode);
    grid.validate();
    k_axis.validate("k");
    d_axis.validate("d");
    if (!(period_tol > 0.0)) throw ConfigError("period_tol must be > 0");
    if (q_max < 1) throw ConfigError("q_max must be >= 1");
    if (!(eta_threshold > 0.0 && eta_threshold < 1.0)) throw ConfigError("eta_threshold must be in (0, 1)");
    if (chaotic_k.has_value() != chaotic_d.has_value())
        throw ConfigError("chaotic_k and chaotic_d must be given together");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
    const bool noisy = mode == scan::Mode::noisy;
    if (model.dmkrm.noise != noisy || model.dpdds.noise != noisy) throw ConfigError("noise flag does not match mode");
    if (command == Command::husimi && mode != scan::Mode::quantum) throw ConfigError("husimi needs mode = quantum");
    if (command == Command::scan && (k_axis.count < 2 || d_axis.count < 2))
        throw ConfigError("scan axes need at least 2 values each");
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
    std::vector<Entry> entries = tokenize(text);
    for (const auto& [k, v] : overrides) {
        const std::string key(trim(k));
        const std::string value(trim(v));
        if (key.empty() || value.empty()) throw ConfigError("--set: expected key=value, got '" + k + "=" + v + "'");
        entries.push_back({key, value, "--set"});
    }

    RunConfig c;
    auto scoped = [&](const Entry& e, const std::function<void()>& f) {
        try {
            f();
        } catch (const ConfigError& err) {
            throw ConfigError(e.where + ": key '" + e.key + "': " + err.what());
        }
    };
    // system and preset decide the defaults everything else overrides
    for (const auto& e : entries) {
        if (e.key == "system") scoped(e, [&] { c.model.system = scan::parse_system(e.value); });
        if (e.key == "preset") scoped(e, [&] { c.preset = parse_preset(e.value); });
    }
    const scan::System sys = c.model.system;
    const bool coarse = c.preset == Preset::coarse;
    const bool dm = sys == scan::System::dmkrm;
    c.protocol = coarse ? scan::ScanProtocol::coarse(sys) : scan::ScanProtocol::defaults(sys);
    c.k_axis = scan::default_k_axis(sys, coarse);
    c.d_axis = scan::default_d_axis(sys, coarse);

    std::optional<bool> noise;
    bool mode_set = false;
    auto only = [&](bool applies) {
        if (!applies) throw ConfigError("does not apply to system " + std::string(scan::to_string(sys)));
    };

    using Handler = std::function<void(const Entry&)>;
    const std::map<std::string, Handler> handlers = {
        {"command", [&](const Entry& e) { c.command = parse_command(e.value); }},
        {"system", [](const Entry&) {}},
        {"preset", [](const Entry&) {}},
        {"mode", [&](const Entry& e) { c.mode = scan::parse_mode(e.value); mode_set = true; }},
        {"noise", [&](const Entry& e) { noise = parse_bool(e.value); }},
        {"k", [&](const Entry& e) {
             const double v = parse_double(e.value);
             c.model.dmkrm.k = v;
             c.model.dpdds.k = v;
         }},
        {"gamma", [&](const Entry& e) { only(dm); c.model.dmkrm.gamma = parse_double(e.value); }},
        {"a", [&](const Entry& e) { only(dm); c.model.dmkrm.a = parse_double(e.value); }},
        {"phi", [&](const Entry& e) { only(dm); c.model.dmkrm.phi = parse_double(e.value); }},
        {"Gamma", [&](const Entry& e) { only(!dm); c.model.dpdds.Gamma = parse_double(e.value); }},
        {"A", [&](const Entry& e) { only(!dm); c.model.dpdds.A = parse_double(e.value); }},
        {"phi_a", [&](const Entry& e) { only(!dm); c.model.dpdds.phi_a = parse_double(e.value); }},
        {"mass", [&](const Entry& e) { only(!dm); c.model.dpdds.mass = parse_double(e.value); }},
        {"dt_per_period", [&](const Entry& e) {
             only(!dm);
             c.protocol.steps_per_period = parse_uint(e.value);
         }},
        {"quantum_dt_per_period", [&](const Entry& e) {
             only(!dm);
             c.protocol.quantum_steps_per_period = parse_uint(e.value);
         }},
        {"hbar_eff", [&](const Entry& e) {
             const double v = parse_double(e.value);
             (dm ? c.model.dmkrm.hbar_eff : c.model.dpdds.hbar_eff) = v;
         }},
        {"n_ic", [&](const Entry& e) { c.protocol.n_ic = parse_uint(e.value); }},
        {"n_periods", [&](const Entry& e) { c.protocol.n_periods = parse_uint(e.value); }},
        {"keep_last", [&](const Entry& e) { c.protocol.keep_last = parse_uint(e.value); }},
        {"quantum_periods", [&](const Entry& e) { c.protocol.quantum_periods = parse_uint(e.value); }},
        {"n_levels", [&](const Entry& e) { c.protocol.n_levels = parse_uint(e.value); }},
        {"hist_bins", [&](const Entry& e) { c.protocol.hist_bins = parse_uint(e.value); }},
        {"seed", [&](const Entry& e) { c.protocol.seed = parse_uint(e.value); }},
        {"grid_nx", [&](const Entry& e) { c.grid.nx = parse_uint(e.value); }},
        {"grid_np", [&](const Entry& e) { c.grid.np = parse_uint(e.value); }},
        {"output_dir", [&](const Entry& e) { c.output_dir = e.value; }},
        {"period_tol", [&](const Entry& e) { c.period_tol = parse_double(e.value); }},
        {"q_max", [&](const Entry& e) { c.q_max = parse_uint(e.value); }},
        {"k_min", [&](const Entry& e) { c.k_axis.min = parse_double(e.value); }},
        {"k_max", [&](const Entry& e) { c.k_axis.max = parse_double(e.value); }},
        {"k_count", [&](const Entry& e) { c.k_axis.count = parse_uint(e.value); }},
        {"d_min", [&](const Entry& e) { c.d_axis.min = parse_double(e.value); }},
        {"d_max", [&](const Entry& e) { c.d_axis.max = parse_double(e.value); }},
        {"d_count", [&](const Entry& e) { c.d_axis.count = parse_uint(e.value); }},
        {"eta_threshold", [&](const Entry& e) { c.eta_threshold = parse_double(e.value); }},
        {"search", [&](const Entry& e) { c.search = parse_search(e.value); }},
        {"chaotic_k", [&](const Entry& e) { c.chaotic_k = parse_double(e.value); }},
        {"chaotic_d", [&](const Entry& e) { c.chaotic_d = parse_double(e.value); }},
        {"write_state", [&](const Entry& e) { c.write_state = parse_bool(e.value); }},
    };

    for (const auto& e : entries) {
        const auto it = handlers.find(e.key);
        if (it == handlers.end()) throw ConfigError(e.where + ": unknown key '" + e.key + "'");
        scoped(e, [&] { it->second(e); });
    }

    if (noise) {
        if (mode_set && *noise != (c.mode == scan::Mode::noisy))
            throw ConfigError("noise = " + std::string(*noise ? "true" : "false") + " contradicts mode = " +
                              std::string(scan::to_string(c.mode)));
        if (!mode_set) c.mode = *noise ? scan::Mode::noisy : scan::Mode::classical;
    }
    c.model = c.model.with_noise(c.mode == scan::Mode::noisy);

    // name the offending key where the message starts with it
    try {
        c.validate();
    } catch (const ConfigError& err) {
        const std::string msg = err.what();
        std::string where;
        for (const auto& e : entries)
            if (msg.rfind(e.key + " ", 0) == 0 || msg.rfind(e.key + ",", 0) == 0) where = e.where + ": key '" + e.key + "': ";
        throw ConfigError(where + msg);
    }
    return c;
}

std::string echo(const RunConfig& c) {
    std::ostringstream o;
    const bool dm = c.model.system == scan::System::dmkrm;
    auto kv = [&](const char* key, const std::string& v) { o << key << " = " << v << '\n'; };
    auto num = [&](const char* key, double v) { kv(key, format_double(v)); };
    auto uint = [&](const char* key, std::uint64_t v) { kv(key, std::to_string(v)); };
    kv("command", std::string(to_string(c.command)));
    kv("system", std::string(scan::to_string(c.model.system)));
    kv("preset", c.preset == Preset::coarse ? "coarse" : "default");
    kv("mode", std::string(scan::to_string(c.mode)));
    kv("noise", c.mode == scan::Mode::noisy ? "true" : "false");
    if (dm) {
        num("k", c.model.dmkrm.k);
        num("gamma", c.model.dmkrm.gamma);
        num("a", c.model.dmkrm.a);
        num("phi", c.model.dmkrm.phi);
        num("hbar_eff", c.model.dmkrm.hbar_eff);
    } else {
        num("k", c.model.dpdds.k);
        num("Gamma", c.model.dpdds.Gamma);
        num("A", c.model.dpdds.A);
        num("phi_a", c.model.dpdds.phi_a);
        num("mass", c.model.dpdds.mass);
        num("hbar_eff", c.model.dpdds.hbar_eff);
        uint("dt_per_period", c.protocol.steps_per_period);
        uint("quantum_dt_per_period", c.protocol.quantum_steps_per_period);
    }
    uint("n_ic", c.protocol.n_ic);
    uint("n_periods", c.protocol.n_periods);
    uint("keep_last", c.protocol.keep_last);
    uint("quantum_periods", c.protocol.quantum_periods);
    uint("n_levels", c.protocol.n_levels);
    uint("hist_bins", c.protocol.hist_bins);
    uint("seed", c.protocol.seed);
    uint("grid_nx", c.grid.nx);
    uint("grid_np", c.grid.np);
    num("period_tol", c.period_tol);
    uint("q_max", c.q_max);
    num("k_min", c.k_axis.min);
    num("k_max", c.k_axis.max);
    uint("k_count", c.k_axis.count);
    num("d_min", c.d_axis.min);
    num("d_max", c.d_axis.max);
    uint("d_count", c.d_axis.count);
    num("eta_threshold", c.eta_threshold);
    kv("search", c.search == scan::SearchDirections::k_only ? "k_only" : "both");
    if (c.chaotic_k) num("chaotic_k", *c.chaotic_k);
    if (c.chaotic_d) num("chaotic_d", *c.chaotic_d);
    kv("write_state", c.write_state ? "true" : "false");
    kv("output_dir", c.output_dir);
    return o.str();
}

std::string config_hash(const RunConfig& config) {
    RunConfig located = config;
    located.output_dir = ".";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : echo(located)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace attractoscope::cli
