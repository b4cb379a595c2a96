#include "rydmech/microscopic.hpp"

namespace rydmech {

MicroscopicBasis::MicroscopicBasis(int n_atoms, bool blockade)
    : n_atoms_(n_atoms), blockade_(blockade), space_(microscopic_space(n_atoms, blockade)) {
    strings_.reserve(space_.dim());
    std::vector<AtomLevel> s(n_atoms_, AtomLevel::g);
    // Odometer over base-3 strings in lexicographic order.
    while (true) {
        int r_count = 0;
        for (auto lvl : s) r_count += (lvl == AtomLevel::r);
        if (!blockade_ || r_count <= 1) {
            index_[encode(s)] = static_cast<long>(strings_.size());
            strings_.push_back(s);
        }
        int pos = n_atoms_ - 1;
        while (pos >= 0 && s[pos] == AtomLevel::r) {
            s[pos] = AtomLevel::g;
            --pos;
        }
        if (pos < 0) break;
        s[pos] = static_cast<AtomLevel>(static_cast<int>(s[pos]) + 1);
    }
    if (static_cast<long>(strings_.size()) != space_.dim())
        throw Error("MicroscopicBasis: enumeration does not match closed-form dimension");
}

std::uint64_t MicroscopicBasis::encode(const std::vector<AtomLevel>& s) const {
    std::uint64_t key = 0;
    for (auto lvl : s) key = key * 3 + static_cast<std::uint64_t>(lvl);
    return key;
}

long MicroscopicBasis::index_of(const std::vector<AtomLevel>& s) const {
    if (static_cast<int>(s.size()) != n_atoms_) throw InvalidArgument("MicroscopicBasis::index_of: wrong length");
    auto it = index_.find(encode(s));
    return it == index_.end() ? -1 : it->second;
}

Operator MicroscopicBasis::atom_op(int atom, AtomLevel x, AtomLevel y) const {
    if (atom < 0 || atom >= n_atoms_) throw InvalidArgument("MicroscopicBasis::atom_op: atom index out of range");
    std::vector<Triplet> entries;
    for (long col = 0; col < dim(); ++col) {
        if (strings_[col][atom] != y) continue;
        std::vector<AtomLevel> target = strings_[col];
        target[atom] = x;
        const long row = index_of(target);
        if (row >= 0) entries.emplace_back(row, col, 1.0);
    }
    return Operator::from_triplets(space_, entries);
}

Operator MicroscopicBasis::collective_op(AtomLevel x, AtomLevel y) const {
    Operator sum = Operator::zero(space_);
    for (int i = 0; i < n_atoms_; ++i) sum += atom_op(i, x, y);
    return sum;
}

Operator MicroscopicBasis::level_count(AtomLevel level) const {
    std::vector<Triplet> entries;
    for (long i = 0; i < dim(); ++i) {
        int count = 0;
        for (auto lvl : strings_[i]) count += (lvl == level);
        if (count > 0) entries.emplace_back(i, i, static_cast<double>(count));
    }
    return Operator::from_triplets(space_, entries);
}

}  // namespace rydmech
