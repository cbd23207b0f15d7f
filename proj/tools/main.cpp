#include <filesystem>
#include <iostream>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magbil/commands.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"magbil: magnetic billiards in convex tables on constant-curvature surfaces"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    auto* info = app.add_subcommand("table-info", "print table geometry and field margin");

    auto* orbit = app.add_subcommand("orbit", "iterate the billiard map from one seed");
    double x0 = 0.0, phi0 = std::numbers::pi / 2;
    long steps = 100;
    orbit->add_option("--x0", x0, "initial arclength");
    orbit->add_option("--phi0", phi0, "initial inward angle in (0, pi)");
    orbit->add_option("-n,--steps", steps, "number of map iterations");

    auto* portrait = app.add_subcommand("phase-portrait", "scatter many orbits in (x, cos phi)");
    int seeds = 16;
    long iterations = 200;
    double seed_x0 = 0.0;
    portrait->add_option("--seeds", seeds, "number of seeds on the line x = x0");
    portrait->add_option("--iterations", iterations, "map iterations per seed");
    portrait->add_option("--x0", seed_x0, "seed arclength");

    auto* verify = app.add_subcommand("verify", "run the verification checks");
    std::vector<std::string> selected;
    verify->add_option("--checks", selected,
                       "subset of: santalo mirror beta-independence defect symplectic "
                       "gauss-bonnet (default: all)");

    for (CLI::App* sub : {info, orbit, portrait, verify}) {
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config \"output\")");
    }

    CLI11_PARSE(app, argc, argv);

    magbil::RunConfig cfg;
    try {
        cfg = magbil::RunConfig::from_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return magbil::kExitConfigError;
    }
    if (!out_dir.empty()) cfg.output = out_dir;

    std::error_code ec;
    fs::create_directories(cfg.output, ec);
    const auto in_out = [&](const char* name) { return (fs::path(cfg.output) / name).string(); };

    if (info->parsed()) return magbil::cmd_table_info(cfg, std::cout, std::cerr);
    if (orbit->parsed())
        return magbil::cmd_orbit(cfg, x0, phi0, steps, in_out("orbit.csv"), std::cerr);
    if (portrait->parsed())
        return magbil::cmd_phase_portrait(cfg, seeds, iterations, seed_x0,
                                          in_out("portrait.csv"), in_out("portrait.svg"),
                                          std::cerr);
    if (verify->parsed()) {
        std::set<std::string> which(selected.begin(), selected.end());
        if (which.empty()) which = magbil::kAllChecks;
        return magbil::cmd_verify(cfg, which, in_out("verify_report.json"), std::cout,
                                  std::cerr);
    }
    return magbil::kExitConfigError;
}
