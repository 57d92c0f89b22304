// Experiment front end: runs a config-described experiment, validates a
// config without running it, or writes gnuplot scripts for a finished run.
//
// Exit codes: 0 success, 2 invalid config/arguments, 3 numerical failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <hybridfd.hpp>

int main(int argc, char** argv) {
    CLI::App app{"hybridfd - RBF-FD experiments with the hybrid Gaussian-cubic kernel"};
    app.require_subcommand(1);

    std::string config_path;
    std::string report_dir;

    CLI::App* cmd_run = app.add_subcommand("run", "Run the experiment described by a config file");
    cmd_run->add_option("config", config_path, "config file (flat key=value or .json)")
        ->required();

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "Parse and validate a config without running it");
    cmd_validate->add_option("config", config_path, "config file (flat key=value or .json)")
        ->required();

    CLI::App* cmd_plots =
        app.add_subcommand("export-plots", "Write gnuplot scripts for a finished run");
    cmd_plots->add_option("report-dir", report_dir, "directory containing report.json")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            const hybridfd::Config cfg = hybridfd::load_config(config_path);
            const auto report = hybridfd::run_experiment(cfg, /*validate_only=*/false);
            std::cout << "report written: " << report.string() << '\n';
        } else if (cmd_validate->parsed()) {
            const hybridfd::Config cfg = hybridfd::load_config(config_path);
            hybridfd::run_experiment(cfg, /*validate_only=*/true);
            std::cout << "config valid: " << config_path << '\n';
        } else {
            const auto scripts = hybridfd::export_plots(report_dir);
            for (const auto& path : scripts) std::cout << "wrote " << path.string() << '\n';
            if (scripts.empty()) std::cout << "no plottable artifacts in " << report_dir << '\n';
        }
    } catch (const hybridfd::validation_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hybridfd::capability_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const hybridfd::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
