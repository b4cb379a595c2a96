#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rydmech/operators.hpp"

namespace rydmech {

enum class AtomLevel : int { g = 0, e = 1, r = 2 };

// Microscopic N-atom basis over {g,e,r}, enumerated lexicographically with
// atom 0 as the most significant digit. With the blockade constraint,
// strings containing two or more r's are removed from the space entirely.
class MicroscopicBasis {
  public:
    MicroscopicBasis(int n_atoms, bool blockade);

    int n_atoms() const { return n_atoms_; }
    bool blockade() const { return blockade_; }
    const SpaceSpec& space() const { return space_; }
    long dim() const { return space_.dim(); }

    // String for basis index; entry i is the level of atom i.
    const std::vector<AtomLevel>& string(long index) const { return strings_[index]; }
    // Index of a string, or -1 if excluded by the blockade.
    long index_of(const std::vector<AtomLevel>& s) const;

    // |x_i><y_i| acting on atom i, as an operator on the atomic space.
    // Transitions leaving the blockaded space are dropped (hard constraint).
    Operator atom_op(int atom, AtomLevel x, AtomLevel y) const;

    // Collective sums used by the model builders and the brute-force
    // oracles: sum_i |x_i><y_i|.
    Operator collective_op(AtomLevel x, AtomLevel y) const;

    // Occupation-number operators (diagonal): count of atoms in `level`.
    Operator level_count(AtomLevel level) const;

  private:
    std::uint64_t encode(const std::vector<AtomLevel>& s) const;

    int n_atoms_;
    bool blockade_;
    SpaceSpec space_;
    std::vector<std::vector<AtomLevel>> strings_;
    std::unordered_map<std::uint64_t, long> index_;
};

}  // namespace rydmech
