#pragma once

#include "rydmech/lindblad.hpp"

namespace rydmech {

// Matrixized generator: L such that vec(rho') = L vec(rho) under the
// COLUMN-STACKING convention vec(A rho B) = (B^T kron A) vec(rho). Eigen
// matrices are column-major, so Map<Vec>(rho.data()) is exactly vec(rho).
struct Superoperator {
    SpaceSpec space;
    Mat matrix;

    Vec apply(const Vec& vec_rho) const { return matrix * vec_rho; }
};

// Dense d^2 x d^2 matrixization; requires d^2 within the superoperator cap.
Superoperator liouvillian(const LindbladModel& model);

// Helpers shared by the steady-state solver and tests.
Vec vectorize(const Mat& rho);
Mat unvectorize(const Vec& v, long dim);

}  // namespace rydmech
