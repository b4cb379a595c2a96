#pragma once

#include <string>
#include <vector>

#include "rydmech/operators.hpp"

namespace rydmech {

// One generalized dissipation term
//     coeff * (2 L rho R - R L rho - rho R L),
// optionally accompanied by its Hermitian conjugate
//     conj(coeff) * (2 R^d rho L^d - L^d R^d rho - rho L^d R^d).
// With R = L^d and real coeff this is the factor-2 Lindblad dissipator
// D[L] rho = 2 L rho L^d - {L^d L, rho} scaled by coeff; with distinct
// L, R it expresses the symmetric-subspace cross terms and the cascaded
// long-distance terms. Any such term annihilates the trace identically.
struct DissipatorTerm {
    cd coeff = 0.0;
    Operator left;
    Operator right;
    bool add_hc = false;
    std::string tag;  // jump-channel label used in trajectory logs

    static DissipatorTerm lindblad(double rate, const Operator& jump, std::string tag = {});
};

// Residual anticommutator-type damping coeff*(A rho + rho A^d). The printed
// symmetric-subspace and positional long-distance equations are not of pure
// generalized-dissipator form; their non-trace-preserving remainder lives
// here. Models carrying such terms cannot be unravelled into trajectories.
struct DampingTerm {
    cd coeff = 0.0;
    Operator op;
};

// Diagonalized jump decomposition of the dissipator list (standard
// convention: rho' = sum_k J_k rho J_k^d - 1/2 {J_k^d J_k, rho}).
struct JumpDecomposition {
    std::vector<Operator> jumps;
    std::vector<std::string> tags;
};

// Hamiltonian plus dissipator list over one SpaceSpec; the unit everything
// the integrators consume.
class LindbladModel {
  public:
    LindbladModel() = default;
    LindbladModel(SpaceSpec space, Operator hamiltonian);

    const SpaceSpec& space() const { return space_; }
    long dim() const { return space_.dim(); }
    const Operator& hamiltonian() const { return hamiltonian_; }
    const std::vector<DissipatorTerm>& dissipators() const { return dissipators_; }
    const std::vector<DampingTerm>& damping_terms() const { return damping_terms_; }

    void add_dissipator(DissipatorTerm term);
    void add_lindblad(double rate, const Operator& jump, std::string tag = {});
    void add_damping(DampingTerm term);

    // Right-hand side of the master equation applied to a density matrix.
    Mat apply_generator(const Mat& rho) const;

    // Diagonalize the Hermitian coefficient matrix over (left, right^d)
    // pairs into standard-form jump operators. Throws UnsupportedModel if
    // the model has damping terms or the coefficient matrix has negative
    // eigenvalues beyond `tol`.
    JumpDecomposition jump_decomposition(double tol = 1e-10) const;

    // Warnings accumulated by the builders (resonance violations etc).
    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  private:
    SpaceSpec space_;
    Operator hamiltonian_;
    std::vector<DissipatorTerm> dissipators_;
    std::vector<DampingTerm> damping_terms_;
    std::vector<std::string> warnings_;

    // cached products R*L for the generator application
    mutable std::vector<SpMat> rl_cache_;
    void refresh_cache() const;
};

}  // namespace rydmech
