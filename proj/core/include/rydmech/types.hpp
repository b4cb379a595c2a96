#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rydmech {

inline constexpr const char* kVersion = "0.1.0";

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<cd>;
using Triplet = Eigen::Triplet<cd>;

inline constexpr cd kI{0.0, 1.0};

// Error taxonomy. The CLI maps these onto its exit codes:
// InvalidArgument -> 2, ResourceLimit -> 3, NumericalFailure -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct ResourceLimit : Error {
    using Error::Error;
};
struct NumericalFailure : Error {
    using Error::Error;
};
struct UnsupportedModel : Error {
    using Error::Error;
};

// Hilbert-space and superoperator dimension caps. Exceeding a cap raises
// ResourceLimit, never silent truncation. Overridable through environment
// variables RYDMECH_DIM_CAP (total Hilbert dimension) and
// RYDMECH_SUPEROP_CAP (d*d of the vectorized generator).
inline long env_cap(const char* name, long fallback) {
    if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        long parsed = std::strtol(v, &end, 10);
        if (end != v && parsed > 0) return parsed;
    }
    return fallback;
}

inline long dimension_cap() { return env_cap("RYDMECH_DIM_CAP", 1L << 16); }
inline long superop_cap() { return env_cap("RYDMECH_SUPEROP_CAP", 4096L); }

}  // namespace rydmech
