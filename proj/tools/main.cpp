#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "attractoscope/cli/config.hpp"
#include "attractoscope/cli/run.hpp"
#include "attractoscope/errors.hpp"

namespace {

enum Exit { ok = 0, config_error = 2, compute_error = 3, io_error = 4 };

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw attractoscope::IoError("cannot read config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical, noisy and open-quantum attractors of dissipative kicked and driven systems"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
    unsigned threads = 1;

    for (const char* name : {"simulate", "scan", "husimi", "report"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value configuration file");
        sub->add_option("--set", sets, "key=value override (repeatable)")->take_all();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Exit::ok : Exit::config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        attractoscope::cli::Overrides overrides;
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw attractoscope::ConfigError("--set expects key=value, got '" + s + "'");
            overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        overrides.emplace_back("command", command);
        if (!out_dir.empty()) overrides.emplace_back("output_dir", out_dir);

        const std::string text = config_path.empty() ? std::string() : read_text(config_path);
        auto config = attractoscope::cli::parse_config(text, overrides);
        config.protocol.threads = threads;
        const auto manifest = attractoscope::cli::run(config);
        std::cout << manifest.to_json();
        return Exit::ok;
    } catch (const attractoscope::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return Exit::config_error;
    } catch (const attractoscope::ComputeError& e) {
        std::cerr << "compute error: " << e.what() << '\n';
        return Exit::compute_error;
    } catch (const attractoscope::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return Exit::io_error;
    }
}
