#pragma once

#include "rydmech/collective.hpp"
#include "rydmech/lindblad.hpp"
#include "rydmech/microscopic.hpp"
#include "rydmech/params.hpp"

namespace rydmech {

struct Cutoffs {
    long phonon = 2;
    long cavity = 2;
};

// Full microscopic model in the rotating frame: membrane x cavity x N-atom
// space with per-atom radiative decay. Blockade is a hard Hilbert-space
// constraint (doubly excited Rydberg strings removed).
LindbladModel build_microscopic(const PhysicalParams& p, Cutoffs cutoffs);

// Same dynamics restricted to the symmetric collective basis, with the
// cross-dissipator structure of the symmetric-subspace master equation.
// For N >= 2 and Gamma_e > 0 the generator loses trace into the
// non-symmetric subspace; the leak rate is
//   d tr/dt = -(2 Gamma_e/N) sum_j [ j(j-1) rho_{E^j} + j^2 rho_{E^j R} ].
LindbladModel build_symmetric(const PhysicalParams& p, Cutoffs cutoffs);

// Effective Jaynes-Cummings model on (membrane x {G,R}); the Hamiltonian is
// the direct sum of the n-excitation blocks
//   H_s^n = -n Delta_G |G,n><G,n| - Delta_Omega |R,n-1><R,n-1|
//           + sqrt(n) G_eff (|R,n-1><G,n| + h.c.).
// `n` selects the manifold used for the adiabaticity report; with
// use_exact_rates (n = 1 only) the closed-form single-excitation rates and
// exact jump operators replace the dispersive-limit approximations.
LindbladModel build_effective_n(const PhysicalParams& p, int n, bool use_exact_rates, long phonon_cutoff = 4);

// Semi-classical ladder model for the detuned-decay suppression study:
// two classical drives, per-atom intermediate-state decay, blockade on.
LindbladModel build_semiclassical(int n_atoms, double delta, double omega_int, double omega, double gamma_e);

enum class LongDistanceMode { positional, resonant_limit };

// Laser-mediated membrane-superatom model on (membrane x {G,R}).
// positional: position-dependent coupling and cascaded dissipators exactly
// as printed (trace defect rate +4 Delta_at sin^2(k z) (N-1) <sigma_RR> for
// N > 1, reported rather than repaired). resonant_limit: the k z << 1 form,
// optionally with a coherent superatom drive eta (sigma_GR + sigma_RG).
LindbladModel build_long_distance(const LongDistanceParams& ld, const PhysicalParams& p, LongDistanceMode mode,
                                  long phonon_cutoff, double drive = 0.0);

// Effective model plus the engineered removal dissipator
// gamma_cool_R D[|G><R|]; atom loss (N -> N-1) is not tracked.
LindbladModel build_cooling(const PhysicalParams& p, const CoolingParams& c, int n, long phonon_cutoff = 8,
                            bool use_exact_rates = false);

// Common sub-blocks, exposed for tests and scenario code.
SpaceSpec cavity_model_space(const PhysicalParams& p, Cutoffs cutoffs, bool symmetric_basis);
SpaceSpec jc_model_space(long phonon_cutoff);

}  // namespace rydmech
