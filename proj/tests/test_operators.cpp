#include <doctest.h>

#include <random>

#include "rydmech/operators.hpp"

using namespace rydmech;
using doctest::Approx;

TEST_CASE("annihilation operator matrix elements") {
    const Operator b2 = annihilation_op(fock_space(2, "m"));
    Mat expected(2, 2);
    expected << 0, 1, 0, 0;
    CHECK((b2.dense() - expected).norm() == Approx(0.0));

    const Operator b3 = annihilation_op(fock_space(3, "m"));
    CHECK(b3.element(0, 1).real() == Approx(1.0));
    CHECK(b3.element(1, 2).real() == Approx(std::sqrt(2.0)));
    CHECK(b3.nonzeros() == 2);

    const Operator b10 = annihilation_op(fock_space(10, "m"));
    CHECK(b10.dim() == 10);

    const Operator num = creation_op(fock_space(4, "m")) * annihilation_op(fock_space(4, "m"));
    for (long n = 0; n < 4; ++n) CHECK(num.element(n, n).real() == Approx(static_cast<double>(n)));
    CHECK(num.is_diagonal());
    CHECK(num.approx_equal(number_op(fock_space(4, "m"))));

    CHECK_THROWS_AS(annihilation_op(two_level_space("tls")), InvalidArgument);
}

TEST_CASE("ladder operators are strictly one-sided") {
    CHECK(annihilation_op(fock_space(6, "m")).is_strictly_one_sided());
    CHECK(creation_op(fock_space(6, "m")).is_strictly_one_sided());
    CHECK_FALSE((annihilation_op(fock_space(6, "m")) + creation_op(fock_space(6, "m"))).is_strictly_one_sided());
}

TEST_CASE("tensor products") {
    const Operator i2 = Operator::identity(fock_space(2, "a"));
    const Operator i3 = Operator::identity(fock_space(3, "b"));
    const Operator i6 = tensor(i2, i3);
    CHECK(i6.dim() == 6);
    CHECK(i6.approx_equal(Operator::identity(i6.space())));

    const Operator b = annihilation_op(fock_space(3, "m"));
    CHECK(tensor(b, i2).dim() == 6);

    std::mt19937 rng(7);
    std::normal_distribution<double> dist;
    Mat a(2, 2), c(3, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = cd(dist(rng), dist(rng));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c(i, j) = cd(dist(rng), dist(rng));
    const Operator oa(fock_space(2, "a"), a);
    const Operator oc(fock_space(3, "b"), c);
    const cd lhs = tensor(oa, oc).dense().trace();
    const cd rhs = a.trace() * c.trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("operations require identical spaces") {
    const Operator x = Operator::identity(fock_space(2, "a"));
    const Operator y = Operator::identity(fock_space(2, "b"));  // same dim, different label
    CHECK_THROWS_AS(x + y, InvalidArgument);
    CHECK_THROWS_AS(x * y, InvalidArgument);
}

TEST_CASE("embedding lifts with identities") {
    SpaceSpec full = fock_space(2, "a").concat(fock_space(3, "b")).concat(fock_space(2, "c"));
    const Operator op = annihilation_op(fock_space(3, "b"));
    const Operator lifted = embed(full, 1, op);
    const Operator direct =
        tensor(tensor(Operator::identity(fock_space(2, "a")), op), Operator::identity(fock_space(2, "c")));
    // same matrix, same space layout
    CHECK((lifted.dense() - direct.dense()).norm() < 1e-14);
    CHECK_THROWS_AS(embed(full, 0, op), InvalidArgument);  // wrong factor
}

TEST_CASE("hermiticity and unitarity predicates") {
    const Operator n = number_op(fock_space(5, "m"));
    CHECK(n.is_hermitian());
    CHECK_FALSE(annihilation_op(fock_space(5, "m")).is_hermitian());
    Mat u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u << cd(s), cd(s), cd(s), cd(-s);
    CHECK(Operator(fock_space(2, "q"), u).is_unitary());
    CHECK_FALSE(number_op(fock_space(3, "m")).is_unitary());
}

TEST_CASE("restriction and projectors") {
    SpaceSpec space = fock_space(4, "m");
    const Operator n = number_op(space);
    const SpaceSpec sector = fock_space(2, "sector");
    const Operator sub = restrict_operator(n, {1, 3}, sector);
    CHECK(sub.element(0, 0).real() == Approx(1.0));
    CHECK(sub.element(1, 1).real() == Approx(3.0));

    Vec psi = Vec::Zero(4);
    psi(0) = 1.0 / std::sqrt(2.0);
    psi(2) = cd(0.0, 1.0 / std::sqrt(2.0));
    const Operator proj = projector_onto(space, psi);
    CHECK(proj.is_hermitian());
    CHECK((proj * proj).approx_equal(proj));
    CHECK(std::abs(proj.expectation(psi) - cd(1.0)) < 1e-12);
}
