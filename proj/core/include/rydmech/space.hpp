#pragma once

#include <string>
#include <vector>

#include "rydmech/types.hpp"

namespace rydmech {

enum class FactorKind { fock, collective_atomic, microscopic_atomic, two_level };

// One tensor factor of a Hilbert space. `n_atoms`/`blockade` are only
// meaningful for the atomic kinds.
struct Factor {
    std::string label;
    long dim = 0;
    FactorKind kind = FactorKind::fock;
    int n_atoms = 0;
    bool blockade = true;

    bool operator==(const Factor& other) const {
        return label == other.label && dim == other.dim && kind == other.kind &&
               n_atoms == other.n_atoms && blockade == other.blockade;
    }
};

// Ordered list of factors defining a tensor-product space. The global
// ordering convention is (membrane, cavity, atoms); basis index i maps to
// factor indices by row-major unflattening, first factor slowest.
class SpaceSpec {
  public:
    SpaceSpec() = default;
    explicit SpaceSpec(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    long dim() const { return dim_; }
    std::size_t n_factors() const { return factors_.size(); }
    const Factor& factor(std::size_t i) const;
    std::size_t factor_index(const std::string& label) const;

    // Flatten per-factor indices into a global basis index and back.
    long flatten(const std::vector<long>& idx) const;
    std::vector<long> unflatten(long index) const;

    SpaceSpec concat(const SpaceSpec& other) const;

    bool operator==(const SpaceSpec& other) const { return factors_ == other.factors_; }
    bool operator!=(const SpaceSpec& other) const { return !(*this == other); }

    std::string describe() const;

  private:
    std::vector<Factor> factors_;
    long dim_ = 1;
};

// Truncated Fock space with states |0> .. |cutoff-1>.
SpaceSpec fock_space(long cutoff, const std::string& label);

// Two-level factor, e.g. the {|G>,|R>} superatom of the long-distance model.
SpaceSpec two_level_space(const std::string& label);

// Symmetric collective atomic factor of dimension 2N+1.
SpaceSpec collective_space(int n_atoms, const std::string& label = "atoms");

// Microscopic N-atom factor over {g,e,r}; with blockade, strings holding
// two or more r's are removed, giving dimension 2^N + N*2^(N-1).
SpaceSpec microscopic_space(int n_atoms, bool blockade, const std::string& label = "atoms");

long microscopic_dim(int n_atoms, bool blockade);

}  // namespace rydmech
