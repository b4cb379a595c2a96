// Command-line front end: `rydmech run <config>` executes a scenario and
// writes CSV/plotspec/meta.json outputs; `rydmech validate <config>` parses,
// validates and prints derived quantities without computing anything.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rydmech/scenarios.hpp"

namespace {

int failure_exit_code(const std::exception& e) {
    if (dynamic_cast<const rydmech::ResourceLimit*>(&e)) return 3;
    if (dynamic_cast<const rydmech::NumericalFailure*>(&e)) return 4;
    if (dynamic_cast<const rydmech::UnsupportedModel*>(&e)) return 4;
    if (dynamic_cast<const rydmech::InvalidArgument*>(&e)) return 2;
    return 2;
}

struct Overrides {
    std::string config_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out_dir;
    int n_traj = 0;
    bool quiet = false;
};

rydmech::ScenarioConfig load_with_overrides(const Overrides& ov) {
    rydmech::ScenarioConfig cfg = rydmech::load_config(ov.config_path);
    if (ov.has_seed) cfg.seed = ov.seed;
    if (!ov.out_dir.empty()) cfg.output_dir = ov.out_dir;
    if (ov.n_traj > 0) cfg.n_traj = ov.n_traj;
    cfg.quiet = ov.quiet;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"membrane-cavity-Rydberg-superatom simulation toolkit"};
    app.require_subcommand(1);

    Overrides ov;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", ov.config_path, "path to the JSON run configuration")->required();
        sub->add_option("--seed", ov.seed, "override the RNG seed")->each([&](const std::string&) { ov.has_seed = true; });
        sub->add_option("--out", ov.out_dir, "override the output directory");
        sub->add_option("--n-traj", ov.n_traj, "override the trajectory count");
        sub->add_flag("--quiet", ov.quiet, "suppress informational output");
    };

    CLI::App* run = app.add_subcommand("run", "execute a scenario and emit CSV outputs");
    add_common(run);
    CLI::App* validate = app.add_subcommand("validate", "validate a configuration and print derived quantities");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const rydmech::ScenarioConfig cfg = load_with_overrides(ov);
            const rydmech::RunOutcome outcome = rydmech::run_scenario(cfg);
            if (!ov.quiet) {
                for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
                std::cout << "wrote " << outcome.files.size() << " files to " << cfg.output_dir << "\n";
            }
            return 0;
        }
        const rydmech::ScenarioConfig cfg = load_with_overrides(ov);
        const std::string report = rydmech::validation_report(cfg);
        if (!ov.quiet) std::cout << report;
        return 0;
    } catch (const rydmech::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure_exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
