#pragma once

#include <random>

#include "rydmech/types.hpp"

namespace rydmech::testing {

inline Mat random_hermitian(long dim, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Mat a(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) a(i, j) = cd(dist(rng), dist(rng));
    return 0.5 * (a + a.adjoint());
}

// Random Hermitian unit-trace matrix (not necessarily PSD); exercises the
// generator as a linear map.
inline Mat random_unit_trace(long dim, std::mt19937& rng) {
    Mat h = random_hermitian(dim, rng);
    h -= (h.trace() - cd(1.0)) / static_cast<double>(dim) * Mat::Identity(dim, dim);
    return h;
}

// Random density matrix (PSD, unit trace).
inline Mat random_density(long dim, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Mat a(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) a(i, j) = cd(dist(rng), dist(rng));
    Mat rho = a * a.adjoint();
    rho /= rho.trace();
    return rho;
}

inline Vec random_state(long dim, std::mt19937& rng) {
    std::normal_distribution<double> dist;
    Vec v(dim);
    for (long i = 0; i < dim; ++i) v(i) = cd(dist(rng), dist(rng));
    v.normalize();
    return v;
}

}  // namespace rydmech::testing
