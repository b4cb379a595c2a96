#include "rydmech/space.hpp"

#include <sstream>

namespace rydmech {

SpaceSpec::SpaceSpec(std::vector<Factor> factors) : factors_(std::move(factors)) {
    dim_ = 1;
    const long cap = dimension_cap();
    for (const auto& f : factors_) {
        if (f.dim < 1) throw InvalidArgument("SpaceSpec: factor '" + f.label + "' has dimension < 1");
        if (f.dim > cap || dim_ > cap / f.dim)
            throw ResourceLimit("SpaceSpec: total dimension exceeds cap " + std::to_string(cap));
        dim_ *= f.dim;
    }
}

const Factor& SpaceSpec::factor(std::size_t i) const {
    if (i >= factors_.size()) throw InvalidArgument("SpaceSpec: factor index out of range");
    return factors_[i];
}

std::size_t SpaceSpec::factor_index(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label == label) return i;
    throw InvalidArgument("SpaceSpec: no factor labelled '" + label + "'");
}

long SpaceSpec::flatten(const std::vector<long>& idx) const {
    if (idx.size() != factors_.size()) throw InvalidArgument("SpaceSpec::flatten: index rank mismatch");
    long out = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (idx[k] < 0 || idx[k] >= factors_[k].dim)
            throw InvalidArgument("SpaceSpec::flatten: index out of range in factor '" + factors_[k].label + "'");
        out = out * factors_[k].dim + idx[k];
    }
    return out;
}

std::vector<long> SpaceSpec::unflatten(long index) const {
    if (index < 0 || index >= dim_) throw InvalidArgument("SpaceSpec::unflatten: index out of range");
    std::vector<long> idx(factors_.size());
    for (std::size_t k = factors_.size(); k-- > 0;) {
        idx[k] = index % factors_[k].dim;
        index /= factors_[k].dim;
    }
    return idx;
}

SpaceSpec SpaceSpec::concat(const SpaceSpec& other) const {
    std::vector<Factor> all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return SpaceSpec(std::move(all));
}

std::string SpaceSpec::describe() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << " x ";
        os << factors_[i].label << "(" << factors_[i].dim << ")";
    }
    os << "], dim " << dim_;
    return os.str();
}

SpaceSpec fock_space(long cutoff, const std::string& label) {
    if (cutoff < 1) throw InvalidArgument("fock_space: cutoff must be >= 1");
    return SpaceSpec({Factor{label, cutoff, FactorKind::fock, 0, false}});
}

SpaceSpec two_level_space(const std::string& label) {
    return SpaceSpec({Factor{label, 2, FactorKind::two_level, 0, false}});
}

SpaceSpec collective_space(int n_atoms, const std::string& label) {
    if (n_atoms < 1) throw InvalidArgument("collective_space: need at least one atom");
    return SpaceSpec({Factor{label, 2L * n_atoms + 1, FactorKind::collective_atomic, n_atoms, true}});
}

long microscopic_dim(int n_atoms, bool blockade) {
    if (n_atoms < 1) throw InvalidArgument("microscopic_dim: need at least one atom");
    if (n_atoms > 62) throw ResourceLimit("microscopic_dim: atom count too large");
    if (!blockade) {
        long d = 1;
        for (int i = 0; i < n_atoms; ++i) d *= 3;
        return d;
    }
    // Strings with no r plus strings with exactly one r.
    return (1L << n_atoms) + static_cast<long>(n_atoms) * (1L << (n_atoms - 1));
}

SpaceSpec microscopic_space(int n_atoms, bool blockade, const std::string& label) {
    const long d = microscopic_dim(n_atoms, blockade);
    if (d > dimension_cap())
        throw ResourceLimit("microscopic_space: dimension " + std::to_string(d) + " exceeds cap");
    return SpaceSpec({Factor{label, d, FactorKind::microscopic_atomic, n_atoms, blockade}});
}

}  // namespace rydmech
