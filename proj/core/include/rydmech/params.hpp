#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rydmech/types.hpp"

namespace rydmech {

// All physical symbols of the cavity-mediated model in one validated record.
// Quantities are angular frequencies in a single global unit declared at the
// configuration layer; this struct is unit-agnostic.
struct PhysicalParams {
    // Bare frequencies (optional source for the detunings below).
    double omega_m = 0.0;    // membrane mode
    double omega_0 = 0.0;    // atom-coupled cavity mode
    double omega_p = 0.0;    // pumped auxiliary cavity mode
    double omega_ge = 0.0;   // ground -> intermediate transition
    double omega_gr = 0.0;   // ground -> Rydberg transition
    double omega_L = 0.0;    // dressing laser (e -> r)
    double omega_L_m = 0.0;  // coupling/pump laser

    // Couplings and drives.
    double g0 = 0.0;      // bare radiation-pressure coupling
    double g = 0.0;       // atom-cavity coupling (uniform)
    cd G = 0.0;           // linearized membrane-cavity coupling (complex phase allowed)
    double Omega = 0.0;   // e -> r laser amplitude
    double E_p = 0.0;     // pump amplitude

    // Detunings. When unset they are derived from the bare frequencies:
    //   Delta_c = omega_0 - omega_L_m - omega_m
    //   Delta_e = omega_ge - omega_L_m - omega_m
    //   Delta_p = omega_p - omega_L_m
    std::optional<double> Delta_c;
    std::optional<double> Delta_e;
    std::optional<double> Delta_p;

    // Decay rates and thermal occupation.
    double kappa = 0.0;
    double Gamma_e = 0.0;
    double Gamma_r = 0.0;
    double gamma_m = 0.0;
    double N_m = 0.0;

    int n_atoms = 1;

    double delta_c() const { return Delta_c ? *Delta_c : omega_0 - omega_L_m - omega_m; }
    double delta_e() const { return Delta_e ? *Delta_e : omega_ge - omega_L_m - omega_m; }
    double delta_p() const { return Delta_p ? *Delta_p : omega_p - omega_L_m; }

    // Residual of the two-photon resonance condition
    // omega_gr = omega_L + omega_L_m + omega_m; meaningful only when the
    // bare frequencies are supplied.
    double resonance_defect() const { return omega_gr - (omega_L + omega_L_m + omega_m); }
    bool has_bare_frequencies() const {
        return omega_gr != 0.0 || omega_L != 0.0 || omega_L_m != 0.0 || omega_0 != 0.0 || omega_ge != 0.0;
    }

    double g_bar() const { return std::sqrt(static_cast<double>(n_atoms)) * g; }

    // Throws InvalidArgument on violated invariants.
    void validate() const;
};

// Parameters of the laser-mediated long-distance setup.
struct LongDistanceParams {
    double g_m = 0.0;    // linearized membrane-field coupling
    double g_at = 0.0;   // per-atom atom-field coupling
    double k_L_m = 0.0;  // coupling-laser wave number
    double z_bar = 0.0;  // mean atomic position

    double Delta_at() const { return g_at * g_at; }
    double gamma_m_diff() const { return 2.0 * g_m * g_m; }
    double G_bar_eff(int n_atoms) const { return g_m * g_at * std::sqrt(static_cast<double>(n_atoms)); }

    void validate() const;
};

// Sympathetic-cooling pulse parameters.
struct CoolingParams {
    double Omega_d = 0.0;    // deexcitation pulse amplitude
    double gamma_cl = 0.0;   // auxiliary-state removal rate
    double elimination_ratio_threshold = 10.0;

    double gamma_cool_R() const {
        if (gamma_cl <= 0.0) throw InvalidArgument("CoolingParams: gamma_cl must be positive");
        return Omega_d * Omega_d / gamma_cl;
    }
    // Adiabatic elimination of the auxiliary state needs gamma_cl >> Omega_d.
    bool elimination_valid() const { return Omega_d == 0.0 || gamma_cl / Omega_d >= elimination_ratio_threshold; }

    void validate() const;
};

// Effective Jaynes-Cummings rates. G_eff, Delta_g, Delta_r are the exact
// single-excitation elimination results; Gamma_r_eff and gamma_m_eff are the
// dispersive-limit approximations; the jump vectors give the exact
// dissipators as weights over {|G,1>, |R,0>} (phonon-1 ground component
// first), with overall target state |G,0>.
struct EffectiveRates {
    double G_eff_approx = 0.0;   // sqrt(N) g G Omega / (Delta_e Delta_c)
    double Delta_g_approx = 0.0; // G^2 / Delta_c
    double Delta_r_approx = 0.0; // Omega^2 / Delta_e

    double G_eff = 0.0;
    double Delta_g = 0.0;
    double Delta_r = 0.0;

    double Gamma_r_eff = 0.0;  // Gamma_e (Omega/Delta_e)^2
    double gamma_m_eff = 0.0;  // kappa (G/Delta_c)^2

    std::array<cd, 2> exact_jump_gamma{};  // J_Gamma weights on (<G,1|, <R,0|)
    std::array<cd, 2> exact_jump_kappa{};  // J_kappa weights on (<G,1|, <R,0|)
};

// Dispersive-limit formulas only (total in the parameters).
EffectiveRates effective_rates_approx(const PhysicalParams& p);
// Adds the closed-form single-excitation elimination results; throws
// NumericalFailure when the common denominator vanishes.
EffectiveRates effective_rates_exact(const PhysicalParams& p);

// Feasibility of the strong-coupling condition
//   sqrt(N) g >> kappa, Gamma_e, (Delta_e/Omega)^2 Gamma_r,
//               (Delta_c/G)^2 gamma_m (N_m+1).
struct FeasibilityReport {
    double lhs = 0.0;  // sqrt(N) g
    struct Term {
        std::string name;
        double value;
        double ratio;  // lhs / value; +inf when the loss vanishes
    };
    std::vector<Term> terms;
    double margin = 10.0;
    bool pass = false;
    // The reformulated condition assumes G = Omega and Delta_c = Delta_e;
    // deviations are reported, not rejected.
    std::vector<std::string> caveats;
};

FeasibilityReport check_strong_coupling(const PhysicalParams& p, double margin = 10.0);

// Fixed point of the pump-cavity linearization,
//   alpha = E_p / (kappa + i g0 (beta*+beta) + i Delta_p)
//   beta  = g0 |alpha|^2 / (i gamma_m - omega_m),
// solved by damped fixed-point iteration. G = -alpha g0; only |G| enters
// observable rates.
struct LinearizationResult {
    cd alpha = 0.0;
    cd beta = 0.0;
    cd G = 0.0;
    double residual = 0.0;
    int iterations = 0;
    // |alpha g0| / |Delta_p_tilde - omega_m|; must be small for the
    // rotating-wave reduction.
    double rwa_ratio = 0.0;
};

LinearizationResult linearize_optomech(const PhysicalParams& p, double tol = 1e-12, int max_iter = 10000,
                                       double damping = 0.5);

}  // namespace rydmech
