#include <doctest.h>

#include "rydmech/microscopic.hpp"
#include "rydmech/space.hpp"

using namespace rydmech;

TEST_CASE("fock_space basics") {
    CHECK(fock_space(3, "membrane").dim() == 3);
    CHECK(fock_space(1, "cavity").dim() == 1);  // frozen mode
    CHECK_THROWS_AS(fock_space(0, "x"), InvalidArgument);
}

TEST_CASE("collective space dimension is 2N+1") {
    for (int n : {1, 2, 5, 1000}) CHECK(collective_space(n).dim() == 2 * n + 1);
    CHECK_THROWS_AS(collective_space(0), InvalidArgument);
}

namespace {
// Independent oracle: enumerate all base-3 strings and count the admissible ones.
long count_strings_brute_force(int n, bool blockade) {
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    long count = 0;
    for (long code = 0; code < total; ++code) {
        long c = code;
        int r = 0;
        for (int i = 0; i < n; ++i) {
            if (c % 3 == 2) ++r;
            c /= 3;
        }
        if (!blockade || r <= 1) ++count;
    }
    return count;
}
}  // namespace

TEST_CASE("microscopic dimension matches enumeration") {
    CHECK(microscopic_dim(1, true) == 3);
    CHECK(microscopic_dim(2, true) == 8);  // 9 strings minus |rr>
    CHECK(microscopic_dim(9, true) == 2816);
    for (int n = 1; n <= 9; ++n) {
        CHECK(microscopic_dim(n, true) == count_strings_brute_force(n, true));
        if (n <= 7) CHECK(microscopic_dim(n, false) == count_strings_brute_force(n, false));
    }
}

TEST_CASE("microscopic basis enumeration and index map") {
    MicroscopicBasis basis(3, true);
    CHECK(basis.dim() == microscopic_dim(3, true));
    // all-ground string comes first
    for (auto lvl : basis.string(0)) CHECK(lvl == AtomLevel::g);
    // round trip
    for (long i = 0; i < basis.dim(); ++i) CHECK(basis.index_of(basis.string(i)) == i);
    // blockaded string is absent
    CHECK(basis.index_of({AtomLevel::r, AtomLevel::r, AtomLevel::g}) == -1);
}

TEST_CASE("flatten/unflatten round trip") {
    SpaceSpec space = fock_space(3, "membrane").concat(fock_space(2, "cavity")).concat(collective_space(2));
    CHECK(space.dim() == 3 * 2 * 5);
    for (long i = 0; i < space.dim(); ++i) CHECK(space.flatten(space.unflatten(i)) == i);
    CHECK_THROWS_AS(space.flatten({3, 0, 0}), InvalidArgument);
}

TEST_CASE("dimension cap is enforced") {
    CHECK_THROWS_AS(microscopic_space(20, false), ResourceLimit);  // 3^20 >> 2^16
    CHECK_THROWS_AS(fock_space(1, "a").concat(fock_space(dimension_cap() + 1, "b")), ResourceLimit);
}
