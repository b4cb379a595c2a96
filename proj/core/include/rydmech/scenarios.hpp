#pragma once

#include "rydmech/analysis.hpp"
#include "rydmech/config.hpp"
#include "rydmech/trajectories.hpp"

namespace rydmech {

struct RunOutcome {
    std::vector<std::string> files;
    std::vector<std::string> warnings;
};

// Execute the configured scenario and write its CSVs, plotspecs and
// meta.json manifest into cfg.output_dir. Throws on failure; the CLI maps
// the exception type onto its exit codes.
RunOutcome run_scenario(const ScenarioConfig& cfg);

// The "desk calculator" face: parse/validate only, report derived
// quantities; no time evolution.
std::string validation_report(const ScenarioConfig& cfg);

// Restriction of an excitation-conserving model to a closed sector, given
// the full-space basis indices spanning it. Dissipators are not carried
// over; intended for coherent spectroscopy (all rates zero).
LindbladModel coherent_sector_model(const LindbladModel& full, const std::vector<long>& indices);

// Rabi frequency of the |G> <-> |R> exchange of the symmetric model in the
// single-excitation sector, extracted from the Fourier spectrum of P_R(t).
struct RabiExtraction {
    double frequency = 0.0;  // dominant angular frequency of P_R(t)
    double two_g_eff_exact = 0.0;
    double two_g_eff_approx = 0.0;
};
RabiExtraction extract_symmetric_rabi(const PhysicalParams& p, int n_periods = 16, int n_points = 4096);

}  // namespace rydmech
