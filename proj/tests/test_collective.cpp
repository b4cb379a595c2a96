#include <doctest.h>

#include <cmath>

#include "rydmech/collective.hpp"

using namespace rydmech;
using doctest::Approx;

namespace {

// Brute-force construction of the unnormalized collective states
// (sum_i |e_i><g_i|)^j (sum_i |r_i><g_i|)^k |G> on the microscopic space.
Vec raise_from_ground(const MicroscopicBasis& micro, int j_e, int with_r) {
    Vec psi = Vec::Zero(micro.dim());
    psi(0) = 1.0;  // |g...g>
    const Operator raise_r = micro.collective_op(AtomLevel::r, AtomLevel::g);
    const Operator raise_e = micro.collective_op(AtomLevel::e, AtomLevel::g);
    for (int k = 0; k < with_r; ++k) psi = raise_r.apply(psi);
    for (int k = 0; k < j_e; ++k) psi = raise_e.apply(psi);
    return psi;
}

}  // namespace

TEST_CASE("collective basis index map is a bijection") {
    for (int n : {1, 2, 5}) {
        CollectiveBasis basis(n);
        std::vector<bool> seen(2 * n + 1, false);
        for (int j = 0; j <= n; ++j) {
            CHECK_FALSE(seen[basis.index_E(j)]);
            seen[basis.index_E(j)] = true;
        }
        for (int j = 0; j <= n - 1; ++j) {
            CHECK_FALSE(seen[basis.index_ER(j)]);
            seen[basis.index_ER(j)] = true;
        }
        for (bool s : seen) CHECK(s);
        CHECK(basis.index_G() == basis.index_E(0));
    }
}

TEST_CASE("normalization constants match brute force up to N=6") {
    for (int n = 1; n <= 6; ++n) {
        MicroscopicBasis micro(n, true);
        CollectiveBasis coll(n);
        for (int j = 0; j <= n; ++j) {
            const double norm2 = raise_from_ground(micro, j, 0).squaredNorm();
            CHECK(std::log(norm2) == Approx(coll.log_norm_E(j)).epsilon(1e-12));
        }
        for (int j = 0; j <= n - 1; ++j) {
            const double norm2 = raise_from_ground(micro, j, 1).squaredNorm();
            CHECK(std::log(norm2) == Approx(coll.log_norm_ER(j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("log-space normalizations survive large N") {
    CollectiveBasis big(10000);
    CHECK(std::isfinite(big.log_norm_E(5000)));
    CHECK(std::isfinite(big.log_norm_ER(9999 / 2)));
    CHECK(big.log_norm_E(0) == Approx(std::lgamma(10001.0) - std::lgamma(10001.0)).epsilon(1e-12));
}

TEST_CASE("collective lowering matches the microscopic oracle for N <= 6") {
    for (int n = 1; n <= 6; ++n) {
        MicroscopicBasis micro(n, true);
        CollectiveBasis coll(n);
        SymmetricEmbed iso(coll, micro);
        const Operator micro_lower = micro.collective_op(AtomLevel::g, AtomLevel::e);
        const Operator micro_laser = micro.collective_op(AtomLevel::e, AtomLevel::r);

        const Operator s0 = collective_lowering(coll, CollectiveBranch::cavity_branch_noR);
        const Operator sr = collective_lowering(coll, CollectiveBranch::cavity_branch_withR);
        const Operator sl = collective_lowering(coll, CollectiveBranch::laser_branch);

        for (int j = 1; j <= n; ++j) {
            const Vec ej = iso.lift(basis_state(coll.space(), coll.index_E(j)));
            const Vec ejm = iso.lift(basis_state(coll.space(), coll.index_E(j - 1)));
            const cd elem = ejm.dot(micro_lower.apply(ej));
            CHECK(std::abs(elem - s0.element(coll.index_E(j - 1), coll.index_E(j))) < 1e-12);
        }
        for (int j = 1; j <= n - 1; ++j) {
            const Vec ejr = iso.lift(basis_state(coll.space(), coll.index_ER(j)));
            const Vec ejmr = iso.lift(basis_state(coll.space(), coll.index_ER(j - 1)));
            const cd elem = ejmr.dot(micro_lower.apply(ejr));
            CHECK(std::abs(elem - sr.element(coll.index_ER(j - 1), coll.index_ER(j))) < 1e-12);
        }
        // laser branch: <E^{j-1}R| sum_i |r_i><e_i|^dagger ... the lowering
        // direction is |E^j> -> |E^{j-1}R> under sum_i |r_i><e_i|.
        for (int j = 1; j <= n; ++j) {
            const Vec ej = iso.lift(basis_state(coll.space(), coll.index_E(j)));
            const Vec target = iso.lift(basis_state(coll.space(), coll.index_ER(j - 1)));
            const cd elem = target.dot(micro_laser.adjoint().apply(ej));
            CHECK(std::abs(elem - sl.element(coll.index_ER(j - 1), coll.index_E(j))) < 1e-12);
        }
    }
}

TEST_CASE("specific ladder elements") {
    // <G| . |E^1> = sqrt(2) for two atoms
    CollectiveBasis two(2);
    const Operator s0_two = collective_lowering(two, CollectiveBranch::cavity_branch_noR);
    CHECK(s0_two.element(two.index_G(), two.index_E(1)).real() == Approx(std::sqrt(2.0)));

    // N=9, j=1: sqrt(1) sqrt(9) = 3, cross-checked microscopically
    CollectiveBasis nine(9);
    const Operator s0_nine = collective_lowering(nine, CollectiveBranch::cavity_branch_noR);
    CHECK(s0_nine.element(nine.index_G(), nine.index_E(1)).real() == Approx(3.0));
    {
        MicroscopicBasis micro(9, true);
        SymmetricEmbed iso(nine, micro);
        const Vec e1 = iso.lift(basis_state(nine.space(), nine.index_E(1)));
        const Vec g = iso.lift(basis_state(nine.space(), nine.index_G()));
        const cd elem = g.dot(micro.collective_op(AtomLevel::g, AtomLevel::e).apply(e1));
        CHECK(std::abs(elem - cd(3.0)) < 1e-12);
    }

    // N=1 laser branch: single element 1
    CollectiveBasis one(1);
    const Operator sl = collective_lowering(one, CollectiveBranch::laser_branch);
    CHECK(sl.nonzeros() == 1);
    CHECK(sl.element(one.index_ER(0), one.index_E(1)).real() == Approx(1.0));
}

TEST_CASE("symmetric embedding is an isometry for N <= 6") {
    for (int n = 1; n <= 6; ++n) {
        MicroscopicBasis micro(n, true);
        CollectiveBasis coll(n);
        SymmetricEmbed iso(coll, micro);
        const SpMat gram = SpMat(iso.isometry().adjoint()) * iso.isometry();
        SpMat eye(coll.dim(), coll.dim());
        eye.setIdentity();
        CHECK(SpMat(gram - eye).norm() < 1e-12);

        const Operator proj = iso.projector();
        CHECK(proj.is_hermitian());
        CHECK((proj * proj).approx_equal(proj, 1e-12));
    }
}

TEST_CASE("collective ladders are strictly one-sided, counts diagonal") {
    CollectiveBasis basis(5);
    CHECK(collective_lowering(basis, CollectiveBranch::cavity_branch_noR).is_strictly_one_sided());
    CHECK(collective_lowering(basis, CollectiveBranch::cavity_branch_withR).is_strictly_one_sided());
    CHECK(basis.e_count().is_diagonal());
    CHECK(basis.r_projector().is_diagonal());
}
