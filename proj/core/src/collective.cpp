#include "rydmech/collective.hpp"

#include <cmath>

namespace rydmech {

CollectiveBasis::CollectiveBasis(int n_atoms, const std::string& label)
    : n_atoms_(n_atoms), space_(collective_space(n_atoms, label)) {}

long CollectiveBasis::index_E(int j) const {
    if (j < 0 || j > n_atoms_) throw InvalidArgument("CollectiveBasis::index_E: j out of range");
    return j;
}

long CollectiveBasis::index_ER(int j) const {
    if (j < 0 || j > n_atoms_ - 1) throw InvalidArgument("CollectiveBasis::index_ER: j out of range");
    return n_atoms_ + 1 + j;
}

double CollectiveBasis::log_norm_E(int j) const {
    if (j < 0 || j > n_atoms_) throw InvalidArgument("CollectiveBasis::log_norm_E: j out of range");
    // N! j! / (N-j)!
    return std::lgamma(n_atoms_ + 1.0) + std::lgamma(j + 1.0) - std::lgamma(n_atoms_ - j + 1.0);
}

double CollectiveBasis::log_norm_ER(int j) const {
    if (j < 0 || j > n_atoms_ - 1) throw InvalidArgument("CollectiveBasis::log_norm_ER: j out of range");
    // N! j! / (N-1-j)!, i.e. the uniform weight j!^2 times the string count
    // N * binom(N-1, j). This is the brute-force norm; the printed constant
    // N * N! j! / (N-j)! overcounts by N/(N-j).
    return std::lgamma(n_atoms_ + 1.0) + std::lgamma(j + 1.0) - std::lgamma(static_cast<double>(n_atoms_ - j));
}

Operator CollectiveBasis::e_count() const {
    std::vector<Triplet> entries;
    for (int j = 1; j <= n_atoms_; ++j) entries.emplace_back(index_E(j), index_E(j), static_cast<double>(j));
    for (int j = 1; j <= n_atoms_ - 1; ++j) entries.emplace_back(index_ER(j), index_ER(j), static_cast<double>(j));
    return Operator::from_triplets(space_, entries);
}

Operator CollectiveBasis::r_projector() const {
    std::vector<Triplet> entries;
    for (int j = 0; j <= n_atoms_ - 1; ++j) entries.emplace_back(index_ER(j), index_ER(j), 1.0);
    return Operator::from_triplets(space_, entries);
}

Operator collective_lowering(const CollectiveBasis& basis, CollectiveBranch which) {
    const int n = basis.n_atoms();
    std::vector<Triplet> entries;
    switch (which) {
        case CollectiveBranch::cavity_branch_noR:
            for (int j = 1; j <= n; ++j)
                entries.emplace_back(basis.index_E(j - 1), basis.index_E(j),
                                     std::sqrt(static_cast<double>(j)) * std::sqrt(static_cast<double>(n - j + 1)));
            break;
        case CollectiveBranch::cavity_branch_withR:
            for (int j = 1; j <= n - 1; ++j)
                entries.emplace_back(basis.index_ER(j - 1), basis.index_ER(j),
                                     std::sqrt(static_cast<double>(j)) * std::sqrt(static_cast<double>(n - j)));
            break;
        case CollectiveBranch::laser_branch:
            for (int j = 1; j <= n; ++j)
                entries.emplace_back(basis.index_ER(j - 1), basis.index_E(j), std::sqrt(static_cast<double>(j)));
            break;
    }
    return Operator::from_triplets(basis.space(), entries);
}

SymmetricEmbed::SymmetricEmbed(const CollectiveBasis& collective, const MicroscopicBasis& micro)
    : micro_space_(micro.space()), coll_space_(collective.space()) {
    const int n = collective.n_atoms();
    if (micro.n_atoms() != n)
        throw InvalidArgument("SymmetricEmbed: atom counts differ between bases");

    std::vector<Triplet> entries;
    // Group microscopic strings by (e-count, r-count); each collective state
    // is the uniform superposition over its group.
    std::vector<std::vector<long>> e_group(n + 1), er_group(n);
    for (long i = 0; i < micro.dim(); ++i) {
        const auto& s = micro.string(i);
        int ne = 0, nr = 0;
        for (auto lvl : s) {
            ne += (lvl == AtomLevel::e);
            nr += (lvl == AtomLevel::r);
        }
        if (nr == 0)
            e_group[ne].push_back(i);
        else if (nr == 1 && ne <= n - 1)
            er_group[ne].push_back(i);
    }
    for (int j = 0; j <= n; ++j) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(e_group[j].size()));
        for (long row : e_group[j]) entries.emplace_back(row, collective.index_E(j), amp);
    }
    for (int j = 0; j <= n - 1; ++j) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(er_group[j].size()));
        for (long row : er_group[j]) entries.emplace_back(row, collective.index_ER(j), amp);
    }
    v_.resize(micro.dim(), collective.dim());
    v_.setFromTriplets(entries.begin(), entries.end());
    v_.makeCompressed();
}

Operator SymmetricEmbed::projector() const {
    SpMat p = v_ * SpMat(v_.adjoint());
    return Operator(micro_space_, std::move(p));
}

double SymmetricEmbed::symmetric_population(const Mat& rho_atomic) const {
    if (rho_atomic.rows() != micro_space_.dim())
        throw InvalidArgument("SymmetricEmbed: density matrix does not live on the microscopic space");
    // tr(V V^dagger rho) = tr(V^dagger rho V)
    return (v_.adjoint() * rho_atomic * v_).trace().real();
}

}  // namespace rydmech
