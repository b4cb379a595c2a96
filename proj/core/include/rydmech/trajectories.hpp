#pragma once

#include <cstdint>
#include <vector>

#include "rydmech/evolve.hpp"

namespace rydmech {

struct JumpEvent {
    double time = 0.0;
    int channel = -1;
    // Normalized observable expectations immediately before and after the
    // collapse, in the order of the requested observable list.
    std::vector<double> pre;
    std::vector<double> post;
};

struct TrajectoryOptions {
    IntegratorOptions integrator{.atol = 1e-10, .rtol = 1e-8};
    int n_threads = 0;              // 0: hardware concurrency
    double jump_tol_factor = 1e-10; // jump-time bisection tolerance, relative to the step
    double decomposition_tol = 1e-10;
};

struct TrajectoryResult {
    std::vector<double> times;
    std::vector<std::string> observable_names;
    // records[k](i, j): observable k, trajectory i, grid time j
    std::vector<Eigen::MatrixXd> records;
    std::vector<std::vector<JumpEvent>> jump_logs;  // one log per trajectory
    std::vector<std::string> channel_tags;
    std::uint64_t seed = 0;
    int n_traj = 0;
    double max_norm_defect = 0.0;  // worst |norm-1| right after a renormalization

    Eigen::VectorXd mean(const std::string& name) const;
    Eigen::VectorXd stderr_of_mean(const std::string& name) const;
    long observable_index(const std::string& name) const;
};

// Monte Carlo wave-function unravelling: non-Hermitian drift
// H - (i/2) sum_k J_k^d J_k, norm-threshold jump decisions with bisection
// refinement, channel chosen proportional to ||J_k psi||^2. The RNG stream
// of trajectory i is derived from (seed, i), so results are independent of
// the thread schedule.
TrajectoryResult evolve_trajectories(const LindbladModel& model, const Vec& psi0, const std::vector<double>& times,
                                     int n_traj, std::uint64_t seed, const std::vector<Observable>& observables = {},
                                     TrajectoryOptions opts = {});

}  // namespace rydmech
