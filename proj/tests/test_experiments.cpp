// Experiment driver: config dispatch, report manifests, validate-only mode,
// unknown-key rejection, and gnuplot script export. Runs use deliberately
// tiny grids so the whole file stays fast.

#include <catch2/catch_amalgamated.hpp>

#include <hybridfd/experiments.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace hybridfd;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    return path;
}

json read_report(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json r;
    in >> r;
    return r;
}

bool manifest_lists(const json& report, const std::string& name) {
    const auto& files = report.at("files");
    return std::find(files.begin(), files.end(), json(name)) != files.end();
}

const std::string kConvergeCfg = "experiment = converge\n"
                                 "output_dir = out_converge\n"
                                 "kernel.variant = hybrid\n"
                                 "kernel.epsilon = 0.9\n"
                                 "kernel.gamma = 0.001\n"
                                 "grids = 10, 14\n";

} // namespace

TEST_CASE("converge experiment writes a manifest-complete report") {
    const fs::path dir = fresh_dir("hybridfd_exp_converge");
    const Config cfg = load_config(write_text(dir / "run.cfg", kConvergeCfg));
    const fs::path report_path = run_experiment(cfg, false);

    // Relative output_dir resolves against the config file's directory.
    CHECK(report_path == dir / "out_converge" / "report.json");
    const json report = read_report(report_path);
    CHECK(manifest_lists(report, "convergence.csv"));
    CHECK(fs::exists(dir / "out_converge" / "convergence.csv"));
    CHECK(report.at("config").at("experiment") == "converge");
    CHECK(report.at("metrics").contains("slope"));
    CHECK(report.at("metrics").contains("linf.N100"));
    CHECK(report.at("metrics").contains("linf.N196"));
    CHECK(report.at("metrics").at("linf.N196").get<double>() <
          report.at("metrics").at("linf.N100").get<double>());
    CHECK_FALSE(report.at("phases").empty());
    // No stray temp files survive a clean finish.
    CHECK_FALSE(fs::exists(dir / "out_converge" / "report.json.tmp"));

    const CsvTable table = read_csv(dir / "out_converge" / "convergence.csv");
    CHECK(table.columns ==
          std::vector<std::string>{"N", "h", "linf", "rel_residual", "assembly_s", "solve_s"});
    REQUIRE(table.rows.size() == 2);
    CHECK(std::stod(table.rows[0][0]) == 100.0);
    CHECK(std::stod(table.rows[1][0]) == 196.0);
}

TEST_CASE("validate-only mode checks the config but writes nothing") {
    const fs::path dir = fresh_dir("hybridfd_exp_validate");
    const Config cfg = load_config(write_text(dir / "run.cfg", kConvergeCfg));
    const fs::path none = run_experiment(cfg, true);
    CHECK(none.empty());
    CHECK_FALSE(fs::exists(dir / "out_converge"));
}

TEST_CASE("unknown config keys are rejected even in validate mode") {
    const fs::path dir = fresh_dir("hybridfd_exp_unknown_key");
    const Config cfg =
        load_config(write_text(dir / "run.cfg", kConvergeCfg + "bogus.knob = 1\n"));
    CHECK_THROWS_MATCHES(run_experiment(cfg, true), validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "unknown config key(s): 'bogus.knob'")));
}

TEST_CASE("unknown experiment kinds list the valid ones") {
    const fs::path dir = fresh_dir("hybridfd_exp_unknown_kind");
    const Config cfg = load_config(write_text(
        dir / "run.cfg", "experiment = nonesuch\noutput_dir = out\n"));
    CHECK_THROWS_MATCHES(
        run_experiment(cfg, true), validation_error,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("unknown experiment 'nonesuch'") &&
            Catch::Matchers::ContainsSubstring("converge") &&
            Catch::Matchers::ContainsSubstring("acoustic-time")));
}

TEST_CASE("experiment-specific parse errors surface through the driver") {
    const fs::path dir = fresh_dir("hybridfd_exp_parse_err");
    const Config cfg = load_config(write_text(dir / "run.cfg",
                                              "experiment = timing\n"
                                              "output_dir = out\n"
                                              "methods = ga, hybrid\n"
                                              "grids = 10, 20\n"
                                              "timing.repeats = 5\n"));
    CHECK_THROWS_MATCHES(run_experiment(cfg, true), validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "timing.repeats is fixed to 3")));
}

TEST_CASE("epsilon-gamma-map experiment reports cell counts") {
    const fs::path dir = fresh_dir("hybridfd_exp_map");
    const Config cfg = load_config(write_text(dir / "run.cfg",
                                              "experiment = epsilon-gamma-map\n"
                                              "output_dir = out_map\n"
                                              "nodes.layout = cartesian\n"
                                              "nodes.nx = 8\n"
                                              "nodes.nz = 8\n"
                                              "map.epsilons = 0.9\n"
                                              "map.gammas = 0.001\n"));
    const json report = read_report(run_experiment(cfg, false));
    CHECK(report.at("metrics").at("cells") == 1);
    CHECK(report.at("metrics").at("failed_cells") == 0);
    CHECK(manifest_lists(report, "error_map.csv"));
    CHECK(manifest_lists(report, "nodes.csv"));
    const CsvTable table = read_csv(dir / "out_map" / "error_map.csv");
    REQUIRE(table.rows.size() == 1);
    CHECK(std::stod(table.rows[0][2]) > 0.0); // finite, nonzero l_inf error
}

#ifdef HYBRIDFD_CONFIG_DIR
TEST_CASE("every shipped config passes validation") {
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(HYBRIDFD_CONFIG_DIR)) {
        if (entry.path().extension() != ".cfg" && entry.path().extension() != ".json") continue;
        ++seen;
        INFO(entry.path().string());
        const Config cfg = load_config(entry.path());
        CHECK_NOTHROW(run_experiment(cfg, true));
    }
    CHECK(seen >= 10); // one per experiment kind, plus companions
}
#endif

TEST_CASE("export_plots emits one gnuplot script per recognized CSV") {
    const fs::path dir = fresh_dir("hybridfd_exp_plots");
    const Config cfg = load_config(write_text(dir / "run.cfg", kConvergeCfg));
    const fs::path report_path = run_experiment(cfg, false);
    const fs::path run_dir = report_path.parent_path();

    const std::vector<fs::path> scripts = export_plots(run_dir);
    REQUIRE(scripts.size() == 1);
    CHECK(scripts[0] == run_dir / "convergence.gp");
    std::ifstream in(scripts[0]);
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    CHECK(text.find("set logscale xy") != std::string::npos);
    CHECK(text.find("convergence.csv") != std::string::npos);

    // A manifest entry whose file vanished is an error, not a silent skip.
    fs::remove(run_dir / "convergence.csv");
    CHECK_THROWS_MATCHES(export_plots(run_dir), validation_error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(
                             "manifest file missing: convergence.csv")));
    CHECK_THROWS_MATCHES(
        export_plots(fresh_dir("hybridfd_exp_plots_empty")), validation_error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("no report.json")));
}
