#pragma once

#include "rydmech/microscopic.hpp"
#include "rydmech/operators.hpp"

namespace rydmech {

enum class CollectiveBranch { cavity_branch_noR, cavity_branch_withR, laser_branch };

// Symmetric collective basis of an N-atom ensemble restricted to at most one
// Rydberg excitation: |E^j> for j=0..N (with |G> = |E^0>) followed by
// |E^j R> for j=0..N-1, dimension 2N+1.
class CollectiveBasis {
  public:
    explicit CollectiveBasis(int n_atoms, const std::string& label = "atoms");

    int n_atoms() const { return n_atoms_; }
    const SpaceSpec& space() const { return space_; }
    long dim() const { return space_.dim(); }

    long index_G() const { return 0; }
    long index_E(int j) const;   // j = 0..N
    long index_ER(int j) const;  // j = 0..N-1

    // log of the squared norm of (sum_i |e_i><g_i|)^j |G> and of
    // (sum_i |e_i><g_i|)^j (sum_i |r_i><g_i|) |G>, evaluated via log-gamma.
    double log_norm_E(int j) const;
    double log_norm_ER(int j) const;

    Operator projector(long idx) const { return ketbra(space_, idx, idx); }

    // Diagonal count of intermediate-state excitations (j on |E^j> and on |E^j R>).
    Operator e_count() const;
    // Projector onto the Rydberg branch.
    Operator r_projector() const;

  private:
    int n_atoms_;
    SpaceSpec space_;
};

// Branch lowering operators with the ladder matrix elements
//   <E^{j-1}|.|E^j>   = sqrt(j) sqrt(N-j+1)   (cavity branch, no Rydberg)
//   <E^{j-1}R|.|E^jR> = sqrt(j) sqrt(N-j)     (cavity branch, with Rydberg)
//   <E^{j-1}R|.|E^j>  = sqrt(j)               (laser branch)
Operator collective_lowering(const CollectiveBasis& basis, CollectiveBranch which);

// Isometry V mapping collective states into the microscopic blockaded space;
// V^dagger V = identity on the collective space.
class SymmetricEmbed {
  public:
    SymmetricEmbed(const CollectiveBasis& collective, const MicroscopicBasis& micro);

    const SpMat& isometry() const { return v_; }
    const SpaceSpec& micro_space() const { return micro_space_; }
    const SpaceSpec& collective_space() const { return coll_space_; }

    // V V^dagger: projector onto the symmetric subspace of the atomic space.
    Operator projector() const;

    Vec lift(const Vec& collective_state) const { return v_ * collective_state; }
    Vec restrict_to_symmetric(const Vec& micro_state) const { return v_.adjoint() * micro_state; }

    double symmetric_population(const Mat& rho_atomic) const;

  private:
    SpaceSpec micro_space_;
    SpaceSpec coll_space_;
    SpMat v_;
};

}  // namespace rydmech
