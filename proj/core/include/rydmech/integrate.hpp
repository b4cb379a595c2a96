#pragma once

#include <functional>

#include "rydmech/types.hpp"

namespace rydmech {

using Rhs = std::function<void(double t, const Vec& y, Vec& dydt)>;

struct IntegratorOptions {
    double atol = 1e-9;
    double rtol = 1e-7;
    double h_init = 0.0;  // 0: choose automatically
    double h_min = 0.0;   // 0: machine-level floor; equal h_min=h_max forces fixed steps
    double h_max = 0.0;   // 0: no bound
    long max_steps = 50'000'000;
};

// Embedded Dormand-Prince 5(4) step with PI step-size control.
class Dopri5 {
  public:
    Dopri5(Rhs rhs, IntegratorOptions opts);

    // Advance y from t to exactly t_end. `watch` (optional) is called after
    // every accepted internal step and may return a time in (t_prev, t_step]
    // at which to cut the step short (used for jump-time bisection); return
    // a negative value to continue.
    void integrate_to(double t, double t_end, Vec& y);

    // Single accepted step from (t, y); returns the step size actually
    // taken. `y` is updated in place; leaves the stepper ready to continue.
    double step(double& t, Vec& y, double t_limit);

    long steps_taken() const { return n_steps_; }
    long steps_rejected() const { return n_rejected_; }

  private:
    double error_norm(const Vec& y0, const Vec& y1, const Vec& err) const;
    double initial_step(double t, const Vec& y) const;
    [[noreturn]] void stiffness_failure(double t, const Vec& y, double h) const;

    Rhs rhs_;
    IntegratorOptions opts_;
    double h_next_ = 0.0;
    long n_steps_ = 0;
    long n_rejected_ = 0;
    // scratch stages
    Vec k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_;
};

// y <- approx exp(dt * A) y where A is given through its action. Arnoldi
// projection with adaptive sub-stepping; suited to the vectorized
// Liouvillian where A is available matrix-free.
void krylov_expm_apply(const Rhs& rhs, double dt, Vec& y, int subspace_dim = 30, double tol = 1e-10);

// Crude power-iteration estimate of the largest |eigenvalue| of the linear
// map behind `rhs`; used for stiffness diagnostics.
double spectral_radius_estimate(const Rhs& rhs, long dim, int iterations = 40);

}  // namespace rydmech
