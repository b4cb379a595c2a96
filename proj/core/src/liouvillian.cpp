#include "rydmech/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace rydmech {

Vec vectorize(const Mat& rho) { return Eigen::Map<const Vec>(rho.data(), rho.size()); }

Mat unvectorize(const Vec& v, long dim) {
    if (v.size() != dim * dim) throw InvalidArgument("unvectorize: size mismatch");
    return Eigen::Map<const Mat>(v.data(), dim, dim);
}

Superoperator liouvillian(const LindbladModel& model) {
    const long d = model.dim();
    if (d * d > superop_cap())
        throw ResourceLimit("liouvillian: d^2 = " + std::to_string(d * d) + " exceeds superoperator cap " +
                            std::to_string(superop_cap()));

    SpMat eye(d, d);
    eye.setIdentity();
    auto left_mult = [&](const SpMat& a) { return SpMat(Eigen::kroneckerProduct(eye, a)); };
    auto right_mult = [&](const SpMat& a) { return SpMat(Eigen::kroneckerProduct(SpMat(a.transpose()), eye)); };
    auto sandwich = [&](const SpMat& l, const SpMat& r) {
        return SpMat(Eigen::kroneckerProduct(SpMat(r.transpose()), l));
    };

    Mat l = Mat::Zero(d * d, d * d);
    const SpMat& h = model.hamiltonian().sparse();
    l -= kI * Mat(left_mult(h) - right_mult(h));

    for (const auto& t : model.dissipators()) {
        const SpMat& jl = t.left.sparse();
        const SpMat& jr = t.right.sparse();
        const SpMat rl = jr * jl;
        l += t.coeff * Mat(2.0 * sandwich(jl, jr) - left_mult(rl) - right_mult(rl));
        if (t.add_hc) {
            const SpMat la = SpMat(jl.adjoint());
            const SpMat ra = SpMat(jr.adjoint());
            const SpMat lr_adj = la * ra;
            l += std::conj(t.coeff) * Mat(2.0 * sandwich(ra, la) - left_mult(lr_adj) - right_mult(lr_adj));
        }
    }
    for (const auto& dmp : model.damping_terms()) {
        l += dmp.coeff * Mat(left_mult(dmp.op.sparse()));
        l += std::conj(dmp.coeff) * Mat(right_mult(SpMat(dmp.op.sparse().adjoint())));
    }
    return Superoperator{model.space(), std::move(l)};
}

}  // namespace rydmech
