#pragma once

#include "rydmech/collective.hpp"
#include "rydmech/evolve.hpp"
#include "rydmech/lindblad.hpp"
#include "rydmech/params.hpp"

namespace rydmech {

// Reduced density matrix keeping only factor `keep`; all other factors are
// traced out.
Mat partial_trace_keep(const Mat& rho, const SpaceSpec& space, std::size_t keep);
// Trace out a single factor, keeping the rest in order.
Mat partial_trace_out(const Mat& rho, const SpaceSpec& space, std::size_t out);

struct SubspacePops {
    double t = 0.0;
    double p_G = 0.0;
    double p_R = 0.0;
    double p_symmetric = 0.0;
    double p_nonsymmetric = 0.0;
};

// Populations of |G>, |E^0 R> and of the symmetric/non-symmetric subspaces
// for a state on the microscopic atomic space.
SubspacePops subspace_populations(const Mat& rho_atomic, const SymmetricEmbed& embed, double t = 0.0);

struct PhononDist {
    double t = 0.0;
    std::vector<double> p_n;
    double mean = 0.0;
    double variance = 0.0;
    double mandel_q = 0.0;     // (variance - mean)/mean
    double norm_defect = 0.0;  // |1 - sum p_n|
};

// Diagonal of the phonon reduced state of `rho` on `space` (factor labelled
// "membrane" by the builders).
PhononDist phonon_distribution(const Mat& rho, const SpaceSpec& space, std::size_t phonon_factor = 0,
                               double t = 0.0);
PhononDist phonon_distribution_from_probs(std::vector<double> p_n, double t = 0.0);

struct LinewidthResult {
    double center = 0.0;  // angular frequency of the dominant non-DC peak
    double fwhm = 0.0;    // Lorentzian full width at half maximum (power spectrum)
    double peak_power = 0.0;
};

struct LinewidthOptions {
    int fit_window_bins = 10;
    double noise_floor = 1e-12;  // relative to the peak; below -> no-oscillation error
    bool hann_window = true;
};

// FFT the uniformly sampled signal, locate the dominant non-DC peak and fit
// a Lorentzian to the surrounding power spectrum.
LinewidthResult linewidth(const std::vector<double>& signal, double dt, LinewidthOptions opts = {});

// Simulate from psi0 to t_g and return the amplitude-overlap fidelity
// sqrt(<target| rho(t_g) |target>). Note this is an amplitude, not a
// probability, matching F = <target|psi(t_g)> for pure states.
double transfer_fidelity(const LindbladModel& model, const Vec& psi0, const Vec& target, double t_g,
                         EvolveOptions opts = {});

// First-order estimate 1 - pi/(2 G_eff) (4 N_m gamma_m + gamma_m + Gamma_r_eff + Gamma_r).
double fidelity_estimate(double g_eff, double gamma_m, double n_m, double gamma_r, double gamma_r_eff);

// Steady-state phonon number estimate n_s = 2 N_m gamma_m (1/G_eff + 1/gamma_cool_R),
// valid in the strong-coupling regime G_eff >> N_m gamma_m.
struct CoolingPrediction {
    double n_s = 0.0;
    bool strong_coupling = false;
    double g_eff = 0.0;
    double gamma_cool = 0.0;
};
CoolingPrediction cooling_steady_phonon(const PhysicalParams& p, const CoolingParams& c);

// Total-variation distance between a phonon distribution and the
// Bose-Einstein distribution with the same mean (fit = true) or with the
// given occupation n_m.
double bose_einstein_distance(const std::vector<double>& p_n, bool fit, double n_m = 0.0);

std::vector<double> bose_einstein_probs(double n_m, std::size_t cutoff);

// Truncation-renormalized thermal (geometric) state on a Fock ladder.
Mat thermal_density(long cutoff, double n_m);

}  // namespace rydmech
