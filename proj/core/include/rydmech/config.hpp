#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rydmech/builders.hpp"
#include "rydmech/params.hpp"

namespace rydmech {

enum class ScenarioKind {
    fig2_trajectory,
    fig4_state_prep,
    fig5_linewidth,
    strong_coupling_table,
    effective_vs_full,
    cooling_sweep,
    custom
};

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

// Fully validated run configuration. The on-disk format is strict JSON with
// nesting; unknown keys anywhere are errors. All frequency-like quantities
// are given in the declared base unit; a leading "2pi" in the unit string
// means stored values are ordinary frequencies and are multiplied by 2 pi on
// load.
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::custom;
    std::string unit = "dimensionless";
    bool two_pi = false;

    PhysicalParams params;
    LongDistanceParams long_distance;
    CoolingParams cooling;
    bool has_long_distance = false;
    bool has_cooling = false;

    Cutoffs cutoffs;
    double t_max = 10.0;
    int n_points = 201;

    int n_traj = 100;
    std::uint64_t seed = 20140901;
    std::string output_dir = "out";
    bool quiet = false;

    // scenario-specific knobs
    double drive = 0.0;                  // fig4: eta, as a fraction of G_bar_eff when drive_relative
    bool drive_relative = true;
    std::string custom_model = "effective";  // custom: model selector
    bool custom_trajectories = false;
    std::vector<int> atom_sweep{1, 4, 9, 16};  // effective_vs_full
    std::vector<double> cooling_gamma_factors{0.05, 0.1, 0.2};  // cooling_sweep: gamma_cool / G_eff
    double semiclassical_delta_factor = 10.0;  // fig5: Delta = factor * Omega

    std::vector<double> time_grid() const;
};

ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config_json(const std::string& text);
std::string config_to_json(const ScenarioConfig& cfg);

}  // namespace rydmech
