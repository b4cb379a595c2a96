#pragma once

#include <map>
#include <string>
#include <vector>

#include "rydmech/integrate.hpp"
#include "rydmech/lindblad.hpp"
#include "rydmech/liouvillian.hpp"

namespace rydmech {

struct Observable {
    std::string name;
    Operator op;
};

enum class MasterMethod { adaptive_rk, expm_krylov };

struct EvolveOptions {
    MasterMethod method = MasterMethod::adaptive_rk;
    IntegratorOptions integrator{};
    bool keep_states = true;
    // Density-matrix health tolerances.
    double trace_tol = 1e-6;
    double psd_warn = -1e-8;
    double psd_error = -1e-5;
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<Mat> states;  // populated when keep_states
    std::vector<std::string> observable_names;
    std::vector<std::vector<cd>> observables;  // [observable][time]
    double trace_defect = 0.0;       // max |tr rho(t) - 1|
    double hermiticity_defect = 0.0; // max ||rho - rho^d||_F
    std::vector<std::string> warnings;

    const std::vector<cd>& record(const std::string& name) const;
    std::vector<double> record_real(const std::string& name) const;
};

// Direct master-equation integration on the supplied increasing time grid;
// rho0 must be Hermitian, unit trace and PSD within tolerance.
EvolutionResult evolve_master(const LindbladModel& model, const Mat& rho0, const std::vector<double>& times,
                              const std::vector<Observable>& observables = {}, EvolveOptions opts = {});

enum class SteadyStateMethod { nullspace, long_time };

struct SteadyStateOptions {
    SteadyStateMethod method = SteadyStateMethod::nullspace;
    double residual_tol = 1e-8;   // required ||L[rho_ss]||
    double long_time_tol = 1e-10; // ||rho_dot|| convergence for long_time
    double t_max = 1e7;
    IntegratorOptions integrator{};
};

struct SteadyStateResult {
    Mat rho;
    double residual = 0.0;
    bool degenerate = false;  // nullspace dimension > 1 detected
    std::vector<std::string> warnings;
};

SteadyStateResult steady_state(const LindbladModel& model, SteadyStateOptions opts = {});

// Validation helpers shared with the trajectory engine and the CLI.
void check_density_matrix(const Mat& rho, double trace_tol, double psd_warn, double psd_error,
                          std::vector<std::string>* warnings);

}  // namespace rydmech
