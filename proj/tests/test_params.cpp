#include <doctest.h>

#include <cmath>

#include "rydmech/params.hpp"

using namespace rydmech;
using doctest::Approx;

TEST_CASE("parameter validation") {
    PhysicalParams p;
    p.kappa = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.kappa = 0.0;
    p.N_m = -0.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.N_m = 0.0;
    p.n_atoms = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("detunings derive from bare frequencies unless overridden") {
    PhysicalParams p;
    p.omega_0 = 110.0;
    p.omega_ge = 105.0;
    p.omega_p = 95.0;
    p.omega_L_m = 90.0;
    p.omega_m = 1.0;
    CHECK(p.delta_c() == Approx(110.0 - 90.0 - 1.0));
    CHECK(p.delta_e() == Approx(105.0 - 90.0 - 1.0));
    CHECK(p.delta_p() == Approx(95.0 - 90.0));
    p.Delta_c = 3.5;
    CHECK(p.delta_c() == Approx(3.5));

    // resonance condition omega_gr = omega_L + omega_L_m + omega_m
    p.omega_gr = 200.0;
    p.omega_L = 109.0;
    CHECK(p.resonance_defect() == Approx(0.0));
    p.omega_L = 100.0;
    CHECK(p.resonance_defect() == Approx(9.0));
}

TEST_CASE("long-distance derived quantities") {
    LongDistanceParams ld;
    ld.g_m = 0.3;
    ld.g_at = 0.2;
    CHECK(ld.gamma_m_diff() == Approx(2.0 * 0.09));  // exactly 2 g_m^2
    CHECK(ld.Delta_at() == Approx(0.04));
    CHECK(ld.G_bar_eff(100) == Approx(0.3 * 0.2 * 10.0));
    ld.g_m = -1.0;
    CHECK_THROWS_AS(ld.validate(), InvalidArgument);
}

TEST_CASE("cooling parameters") {
    CoolingParams c;
    c.Omega_d = 1.0;
    c.gamma_cl = 100.0;
    CHECK(c.gamma_cool_R() == Approx(0.01));
    CHECK(c.elimination_valid());
    c.Omega_d = 50.0;
    CHECK_FALSE(c.elimination_valid());
    c.gamma_cl = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("exact effective rates: lossless limit") {
    PhysicalParams p;
    p.g = 0.1;
    p.n_atoms = 1;  // g_bar = 0.1
    p.G = 1.0;
    p.Omega = 1.0;
    p.Delta_c = 10.0;
    p.Delta_e = 10.0;
    const EffectiveRates r = effective_rates_exact(p);
    // G g_bar Omega (g_bar^2 - Delta_e Delta_c) / (g_bar^2 - Delta_c Delta_e)^2
    const double expected = 0.1 / (0.01 - 100.0);
    CHECK(r.G_eff == Approx(expected).epsilon(1e-12));
    CHECK(r.G_eff == Approx(-1.0001e-3).epsilon(1e-4));
    // J_Gamma and J_kappa vanish without their decay prefactors
    CHECK(std::abs(r.exact_jump_gamma[0]) == 0.0);
    CHECK(std::abs(r.exact_jump_gamma[1]) == 0.0);
    CHECK(std::abs(r.exact_jump_kappa[0]) == 0.0);
    CHECK(std::abs(r.exact_jump_kappa[1]) == 0.0);
}

TEST_CASE("approximate formulas and the dispersive-limit agreement") {
    PhysicalParams p;
    p.g = 1.0;
    p.G = 1.0;
    p.Omega = 1.0;
    p.n_atoms = 100;
    p.Delta_c = 10.0;
    p.Delta_e = 10.0;
    // At these values g_bar^2 = Delta_c Delta_e, so only the dispersive
    // formula is defined (the closed form is singular here).
    const EffectiveRates r = effective_rates_approx(p);
    CHECK(r.G_eff_approx == Approx(0.1).epsilon(1e-12));  // sqrt(100) * 1 / 100

    // The exact denominator vanishes at g_bar^2 = Delta_c Delta_e, so the
    // oracle comparison runs in the adiabatic regime instead.
    p.Delta_c = 100.0;
    p.Delta_e = 100.0;
    const EffectiveRates r2 = effective_rates_exact(p);
    CHECK(r2.G_eff_approx == Approx(1e-3).epsilon(1e-12));
    CHECK(std::abs(r2.G_eff) == Approx(std::abs(r2.G_eff_approx)).epsilon(0.02));

    // Gamma_r_eff = Gamma_e (Omega/Delta_e)^2
    PhysicalParams q;
    q.Gamma_e = 3.0;
    q.Omega = 10.0;
    q.Delta_e = 100.0;
    q.Delta_c = 100.0;
    q.g = 1.0;
    q.G = 1.0;
    CHECK(effective_rates_exact(q).Gamma_r_eff == Approx(0.03).epsilon(1e-12));
}

TEST_CASE("exact rates reduce to the approximate formulas deep in the dispersive regime") {
    PhysicalParams p;
    p.g = 1.0;
    p.n_atoms = 9;
    p.G = 2.0;
    p.Omega = 1.5;
    p.kappa = 0.5;
    p.Gamma_e = 1.0;
    const double big = 100.0 * std::max({p.g_bar(), std::abs(p.G), p.Omega, p.kappa, p.Gamma_e});
    p.Delta_c = big;
    p.Delta_e = big;
    const EffectiveRates r = effective_rates_exact(p);
    CHECK(std::abs(r.G_eff) == Approx(std::abs(r.G_eff_approx)).epsilon(0.01));
    CHECK(std::abs(r.Delta_g) == Approx(std::abs(r.Delta_g_approx)).epsilon(0.01));
    CHECK(std::abs(r.Delta_r) == Approx(std::abs(r.Delta_r_approx)).epsilon(0.01));
    // exact dissipative weights reduce to the dispersive rates:
    // |J_Gamma . <R,0||^2 -> Gamma_r_eff, |J_kappa . <G,1||^2 -> gamma_m_eff
    CHECK(std::norm(r.exact_jump_gamma[1]) == Approx(r.Gamma_r_eff).epsilon(0.01));
    CHECK(std::norm(r.exact_jump_kappa[0]) == Approx(r.gamma_m_eff).epsilon(0.01));
}

TEST_CASE("swap symmetry of the dispersive shifts") {
    PhysicalParams p;
    p.g = 0.7;
    p.n_atoms = 4;
    p.G = 1.3;
    p.Omega = 0.9;
    p.kappa = 0.2;
    p.Gamma_e = 0.4;
    p.Delta_c = 11.0;
    p.Delta_e = 17.0;
    PhysicalParams q = p;
    std::swap(*q.Delta_c, *q.Delta_e);
    std::swap(q.kappa, q.Gamma_e);
    const double gmag = std::abs(p.G);
    q.G = p.Omega;
    q.Omega = gmag;
    const EffectiveRates rp = effective_rates_exact(p);
    const EffectiveRates rq = effective_rates_exact(q);
    CHECK(rp.Delta_g == Approx(rq.Delta_r).epsilon(1e-12));
    CHECK(rp.Delta_r == Approx(rq.Delta_g).epsilon(1e-12));
}

TEST_CASE("singular denominator raises") {
    PhysicalParams p;
    p.g = 1.0;
    p.n_atoms = 100;
    p.G = 1.0;
    p.Omega = 1.0;
    p.Delta_c = 10.0;
    p.Delta_e = 10.0;  // g_bar^2 == Delta_c Delta_e
    CHECK_THROWS_AS(effective_rates_exact(p), NumericalFailure);
}

TEST_CASE("optomechanical linearization fixed point") {
    PhysicalParams p;
    p.kappa = 1.0;
    p.Delta_p = 5.0;
    p.g0 = 0.01;
    p.gamma_m = 0.001;
    p.omega_m = 1.0;

    SUBCASE("no pump, no displacement") {
        p.E_p = 0.0;
        const LinearizationResult r = linearize_optomech(p);
        CHECK(std::abs(r.alpha) == Approx(0.0));
        CHECK(std::abs(r.beta) == Approx(0.0));
        CHECK(std::abs(r.G) == Approx(0.0));
    }

    SUBCASE("decoupled limit g0 = 0") {
        p.E_p = 10.0;
        p.g0 = 0.0;
        const LinearizationResult r = linearize_optomech(p);
        const cd expected = 10.0 / (1.0 + kI * 5.0);
        CHECK(std::abs(r.alpha - expected) < 1e-10);
        CHECK(std::abs(r.beta) == Approx(0.0));
    }

    SUBCASE("self-consistency of the converged point") {
        p.E_p = 10.0;
        const LinearizationResult r = linearize_optomech(p, 1e-12);
        const cd alpha_check = p.E_p / (p.kappa + kI * p.g0 * (std::conj(r.beta) + r.beta) + kI * p.delta_p());
        const cd beta_check = p.g0 * std::norm(r.alpha) / (kI * p.gamma_m - p.omega_m);
        CHECK(std::abs(r.alpha - alpha_check) < 1e-10);
        CHECK(std::abs(r.beta - beta_check) < 1e-10);
        CHECK(r.residual < 1e-10);
        CHECK(std::abs(r.G + r.alpha * p.g0) < 1e-14);  // G = -alpha g0
        CHECK(std::isfinite(r.rwa_ratio));
    }

    SUBCASE("invalid tolerance") { CHECK_THROWS_AS(linearize_optomech(p, 0.0), InvalidArgument); }
}
