#include "rydmech/params.hpp"

#include <cmath>
#include <limits>

namespace rydmech {

void PhysicalParams::validate() const {
    if (kappa < 0 || Gamma_e < 0 || Gamma_r < 0 || gamma_m < 0)
        throw InvalidArgument("PhysicalParams: decay rates must be nonnegative");
    if (N_m < 0) throw InvalidArgument("PhysicalParams: thermal occupation N_m must be nonnegative");
    if (n_atoms < 1) throw InvalidArgument("PhysicalParams: n_atoms must be >= 1");
    if (g < 0 || Omega < 0 || E_p < 0 || g0 < 0)
        throw InvalidArgument("PhysicalParams: coupling amplitudes must be nonnegative (G may carry a phase)");
}

void LongDistanceParams::validate() const {
    if (g_m < 0 || g_at < 0) throw InvalidArgument("LongDistanceParams: couplings must be nonnegative");
    if (k_L_m < 0) throw InvalidArgument("LongDistanceParams: wave number must be nonnegative");
}

void CoolingParams::validate() const {
    if (Omega_d < 0) throw InvalidArgument("CoolingParams: Omega_d must be nonnegative");
    if (gamma_cl <= 0) throw InvalidArgument("CoolingParams: gamma_cl must be positive");
}

EffectiveRates effective_rates_approx(const PhysicalParams& p) {
    p.validate();
    EffectiveRates out;
    const double dc = p.delta_c();
    const double de = p.delta_e();
    const double Gmag = std::abs(p.G);
    if (dc != 0.0 && de != 0.0) {
        out.G_eff_approx = p.g_bar() * Gmag * p.Omega / (de * dc);
        out.Delta_g_approx = Gmag * Gmag / dc;
        out.Delta_r_approx = p.Omega * p.Omega / de;
        out.Gamma_r_eff = p.Gamma_e * (p.Omega / de) * (p.Omega / de);
        out.gamma_m_eff = p.kappa * (Gmag / dc) * (Gmag / dc);
    }
    return out;
}

EffectiveRates effective_rates_exact(const PhysicalParams& p) {
    EffectiveRates out = effective_rates_approx(p);
    const double dc = p.delta_c();
    const double de = p.delta_e();
    const double gbar = p.g_bar();
    const double gbar2 = gbar * gbar;
    const double Gmag = std::abs(p.G);
    const double kappa = p.kappa;
    const double ge = p.Gamma_e;

    const double re = ge * kappa + gbar2 - de * dc;  // common resonant denominator piece
    const double im = dc * ge + de * kappa;
    const double D = re * re + im * im;
    if (D == 0.0) throw NumericalFailure("effective_rates_exact: singular parameters (denominator vanishes)");

    out.G_eff = Gmag * gbar * p.Omega * re / D;
    out.Delta_g = Gmag * Gmag * (de * gbar2 - dc * (de * de + ge)) / D;
    out.Delta_r = p.Omega * p.Omega * (dc * gbar2 - de * (dc * dc + kappa)) / D;

    const double sqrtD = std::sqrt(D);
    out.exact_jump_gamma = {std::sqrt(ge) * kI * gbar * Gmag / sqrtD,
                            -std::sqrt(ge) * p.Omega * (kI * dc + kappa) / sqrtD};
    out.exact_jump_kappa = {-std::sqrt(kappa) * Gmag * (kI * de + ge) / sqrtD,
                            std::sqrt(kappa) * kI * gbar * p.Omega / sqrtD};
    return out;
}

FeasibilityReport check_strong_coupling(const PhysicalParams& p, double margin) {
    p.validate();
    FeasibilityReport rep;
    rep.margin = margin;
    rep.lhs = p.g_bar();
    const double inf = std::numeric_limits<double>::infinity();
    const double Gmag = std::abs(p.G);

    auto ratio = [&](double value) { return value > 0.0 ? rep.lhs / value : inf; };
    rep.terms.push_back({"kappa", p.kappa, ratio(p.kappa)});
    rep.terms.push_back({"Gamma_e", p.Gamma_e, ratio(p.Gamma_e)});
    const double de = p.delta_e();
    const double dc = p.delta_c();
    const double rydberg_loss = p.Omega > 0.0 ? (de / p.Omega) * (de / p.Omega) * p.Gamma_r : (p.Gamma_r > 0 ? inf : 0.0);
    rep.terms.push_back({"(Delta_e/Omega)^2 Gamma_r", rydberg_loss, ratio(rydberg_loss)});
    const double thermal_loss =
        Gmag > 0.0 ? (dc / Gmag) * (dc / Gmag) * p.gamma_m * (p.N_m + 1.0) : (p.gamma_m > 0 ? inf : 0.0);
    rep.terms.push_back({"(Delta_c/G)^2 gamma_m (N_m+1)", thermal_loss, ratio(thermal_loss)});

    rep.pass = true;
    for (const auto& t : rep.terms)
        if (t.ratio < margin) rep.pass = false;

    if (std::abs(Gmag - p.Omega) > 1e-12 * (Gmag + p.Omega))
        rep.caveats.push_back("condition was reformulated assuming G = Omega; inputs differ");
    if (std::abs(dc - de) > 1e-12 * (std::abs(dc) + std::abs(de)))
        rep.caveats.push_back("condition was reformulated assuming Delta_c = Delta_e; inputs differ");
    return rep;
}

LinearizationResult linearize_optomech(const PhysicalParams& p, double tol, int max_iter, double damping) {
    p.validate();
    if (tol <= 0) throw InvalidArgument("linearize_optomech: tol must be positive");
    const double dp = p.delta_p();

    auto next_alpha = [&](cd beta) {
        return p.E_p / (p.kappa + kI * p.g0 * (std::conj(beta) + beta) + kI * dp);
    };
    auto next_beta = [&](cd alpha) { return p.g0 * std::norm(alpha) / (kI * p.gamma_m - p.omega_m); };

    LinearizationResult res;
    cd alpha = 0.0, beta = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < max_iter; ++it) {
        const cd a_new = next_alpha(beta);
        const cd b_new = next_beta(alpha);
        residual = std::abs(a_new - alpha) + std::abs(b_new - beta);
        alpha += damping * (a_new - alpha);
        beta += damping * (b_new - beta);
        if (residual < tol) break;
    }
    // Residual of the fixed-point equations themselves.
    const double eq_residual = std::abs(alpha - next_alpha(beta)) + std::abs(beta - next_beta(alpha));
    if (eq_residual > tol && it == max_iter)
        throw NumericalFailure("linearize_optomech: no convergence after " + std::to_string(max_iter) +
                               " iterations, residual " + std::to_string(eq_residual));
    res.alpha = alpha;
    res.beta = beta;
    res.G = -alpha * p.g0;
    res.residual = eq_residual;
    res.iterations = it;
    const double dp_tilde = dp + p.g0 * (std::conj(beta) + beta).real();
    const double gap = std::abs(dp_tilde - p.omega_m);
    res.rwa_ratio = gap > 0.0 ? std::abs(alpha * p.g0) / gap : std::numeric_limits<double>::infinity();
    return res;
}

}  // namespace rydmech
