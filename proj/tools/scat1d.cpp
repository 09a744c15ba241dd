#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "scat1d/errors.hpp"
#include "scat1d/sweep.hpp"

namespace {

int run(const std::string& command, const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return scat1d::exit_config_error;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    scat1d::RunConfig cfg;
    try {
        cfg = scat1d::parse_config(buf.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scat1d::exit_config_error;
    }
    if (!out_path.empty())
        cfg.output = out_path;

    scat1d::RunOutcome outcome;
    try {
        if (command == "amplitudes")
            outcome = scat1d::cmd_amplitudes(cfg);
        else if (command == "series")
            outcome = scat1d::cmd_series(cfg);
        else
            outcome = scat1d::cmd_compare(cfg);
    } catch (const scat1d::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scat1d::exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scat1d::exit_partial_failure;
    }

    if (cfg.output.empty()) {
        std::cout << outcome.csv;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << cfg.output << "'\n";
            return scat1d::exit_config_error;
        }
        out << outcome.csv;
        if (!out) {
            std::cerr << "error: write failed for '" << cfg.output << "'\n";
            return scat1d::exit_config_error;
        }
    }
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1d scattering amplitudes from resummed multiple-scattering series, "
                 "with transfer-matrix and ODE cross-checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    const char* names[] = {"amplitudes", "series", "compare"};
    const char* descs[] = {"closed-form amplitudes over the energy grid",
                           "per-order series table at the first grid energy",
                           "paper formula against exact oracles"};
    for (int i = 0; i < 3; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "config file path")->required();
        sub->add_option("--out", out_path, "output file (default: standard output)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return scat1d::exit_config_error;
    }

    return run(app.get_subcommands().front()->get_name(), config_path, out_path);
}
