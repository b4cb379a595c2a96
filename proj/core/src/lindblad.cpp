#include "rydmech/lindblad.hpp"

#include <Eigen/Eigenvalues>

namespace rydmech {

DissipatorTerm DissipatorTerm::lindblad(double rate, const Operator& jump, std::string tag) {
    DissipatorTerm t;
    t.coeff = rate;
    t.left = jump;
    t.right = jump.adjoint();
    t.add_hc = false;
    t.tag = std::move(tag);
    return t;
}

LindbladModel::LindbladModel(SpaceSpec space, Operator hamiltonian)
    : space_(std::move(space)), hamiltonian_(std::move(hamiltonian)) {
    if (hamiltonian_.space() != space_)
        throw InvalidArgument("LindbladModel: Hamiltonian does not live on the model space");
}

void LindbladModel::add_dissipator(DissipatorTerm term) {
    if (term.left.space() != space_ || term.right.space() != space_)
        throw InvalidArgument("LindbladModel: dissipator operators do not live on the model space");
    dissipators_.push_back(std::move(term));
    rl_cache_.clear();
}

void LindbladModel::add_lindblad(double rate, const Operator& jump, std::string tag) {
    if (rate < 0) throw InvalidArgument("LindbladModel: negative Lindblad rate");
    if (rate == 0.0) return;
    add_dissipator(DissipatorTerm::lindblad(rate, jump, std::move(tag)));
}

void LindbladModel::add_damping(DampingTerm term) {
    if (term.op.space() != space_)
        throw InvalidArgument("LindbladModel: damping operator does not live on the model space");
    damping_terms_.push_back(std::move(term));
}

void LindbladModel::refresh_cache() const {
    rl_cache_.clear();
    rl_cache_.reserve(dissipators_.size());
    for (const auto& t : dissipators_) rl_cache_.push_back(t.right.sparse() * t.left.sparse());
}

Mat LindbladModel::apply_generator(const Mat& rho) const {
    if (rl_cache_.size() != dissipators_.size()) refresh_cache();
    const SpMat& h = hamiltonian_.sparse();
    Mat out = -kI * (h * rho - rho * h);
    for (std::size_t m = 0; m < dissipators_.size(); ++m) {
        const auto& t = dissipators_[m];
        const SpMat& rl = rl_cache_[m];
        out += t.coeff * (2.0 * (t.left.sparse() * rho * t.right.sparse()) - (rl * rho + rho * rl));
        if (t.add_hc) {
            // conj(c) (2 R^d rho L^d - (RL)^d rho - rho (RL)^d), kept linear
            // in rho (valid for non-Hermitian test inputs too).
            const SpMat rl_adj = SpMat(rl.adjoint());
            out += std::conj(t.coeff) * (2.0 * (SpMat(t.right.sparse().adjoint()) * rho * SpMat(t.left.sparse().adjoint())) -
                                         (rl_adj * rho + rho * rl_adj));
        }
    }
    for (const auto& dmp : damping_terms_) {
        out += dmp.coeff * (dmp.op.sparse() * rho) + std::conj(dmp.coeff) * (rho * SpMat(dmp.op.sparse().adjoint()));
    }
    return out;
}

JumpDecomposition LindbladModel::jump_decomposition(double tol) const {
    if (!damping_terms_.empty())
        throw UnsupportedModel("jump_decomposition: model carries bare anticommutator damping and has no positive unravelling");

    // Collect the distinct operators appearing as left factors or adjoint
    // right factors, then assemble the GKS coefficient matrix.
    std::vector<Operator> basis;
    std::vector<std::string> basis_tags;
    auto find_or_add = [&](const Operator& op, const std::string& tag) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i].approx_equal(op, 1e-13)) {
                if (basis_tags[i].empty()) basis_tags[i] = tag;
                return i;
            }
        basis.push_back(op);
        basis_tags.push_back(tag);
        return basis.size() - 1;
    };

    struct Entry {
        std::size_t i, j;
        cd c;
    };
    std::vector<Entry> entries;
    for (const auto& t : dissipators_) {
        const std::size_t i = find_or_add(t.left, t.tag);
        const std::size_t j = find_or_add(t.right.adjoint(), t.tag);
        entries.push_back({i, j, t.coeff});
        if (t.add_hc) entries.push_back({j, i, std::conj(t.coeff)});
    }
    const std::size_t k = basis.size();
    if (k == 0) return {};

    Mat c = Mat::Zero(k, k);
    for (const auto& e : entries) c(e.i, e.j) += e.c;
    if ((c - c.adjoint()).norm() > tol * (1.0 + c.norm()))
        throw UnsupportedModel("jump_decomposition: coefficient matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Mat> es(c);
    JumpDecomposition out;
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (long m = 0; m < es.eigenvalues().size(); ++m) {
        const double lambda = es.eigenvalues()(m);
        if (lambda < -tol * std::max(1.0, scale))
            throw UnsupportedModel("jump_decomposition: negative eigenvalue " + std::to_string(lambda) +
                                   " in the coefficient matrix; no positive unravelling");
        if (lambda <= tol * std::max(1.0, scale)) continue;
        // Factor-2 convention: rate c D[L] corresponds to the standard-form
        // jump sqrt(2 c) L.
        Operator j = Operator::zero(space_);
        std::string tag;
        for (std::size_t i = 0; i < k; ++i) {
            const cd w = es.eigenvectors()(i, m);
            if (std::abs(w) < 1e-14) continue;
            j += w * basis[i];
            if (tag.empty()) tag = basis_tags[i];
            else if (!basis_tags[i].empty() && tag != basis_tags[i]) tag = tag + "+" + basis_tags[i];
        }
        out.jumps.push_back(std::sqrt(2.0 * lambda) * j);
        out.tags.push_back(tag.empty() ? ("channel" + std::to_string(out.jumps.size() - 1)) : tag);
    }
    return out;
}

}  // namespace rydmech
