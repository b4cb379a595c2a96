#pragma once

#include <vector>

#include "rydmech/space.hpp"
#include "rydmech/types.hpp"

namespace rydmech {

// A linear operator tagged with its SpaceSpec. Physics operators here are
// extremely sparse, and the N=9 microscopic product space (dim 11264) makes
// dense storage of a full model impossible on ordinary hardware, so the
// matrix is held in compressed form; dense() gives the dense view whenever
// it fits in memory. All binary operations check that both operands live on
// the same space.
class Operator {
  public:
    Operator() = default;
    Operator(SpaceSpec space, SpMat matrix);
    Operator(SpaceSpec space, const Mat& matrix);

    static Operator identity(const SpaceSpec& space);
    static Operator zero(const SpaceSpec& space);
    static Operator from_triplets(const SpaceSpec& space, const std::vector<Triplet>& entries);

    const SpaceSpec& space() const { return space_; }
    long dim() const { return space_.dim(); }
    const SpMat& sparse() const { return mat_; }
    Mat dense() const;
    long nonzeros() const { return mat_.nonZeros(); }

    cd element(long row, long col) const { return mat_.coeff(row, col); }

    Operator adjoint() const;
    Operator transpose() const;

    Operator operator+(const Operator& other) const;
    Operator operator-(const Operator& other) const;
    Operator operator*(const Operator& other) const;
    Operator operator*(cd scalar) const;
    Operator& operator+=(const Operator& other);

    Vec apply(const Vec& psi) const { return mat_ * psi; }
    Mat apply(const Mat& rho) const { return mat_ * rho; }

    cd expectation(const Vec& psi) const { return psi.dot(mat_ * psi); }
    cd expectation(const Mat& rho) const;

    double norm() const;  // Frobenius
    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;
    bool is_diagonal(double tol = 1e-14) const;
    // Lowering-type ladder: support strictly on one side of the diagonal
    // (row < col for |j> -> |j-1> operators in an ordered basis).
    bool is_strictly_one_sided(double tol = 1e-14) const;
    bool approx_equal(const Operator& other, double tol = 1e-12) const;

  private:
    void check_same_space(const Operator& other, const char* what) const;

    SpaceSpec space_;
    SpMat mat_;
};

inline Operator operator*(cd scalar, const Operator& op) { return op * scalar; }
inline Operator operator*(double scalar, const Operator& op) { return op * cd(scalar, 0.0); }

// Ladder and projector constructors on single-factor spaces.
Operator annihilation_op(const SpaceSpec& space);
Operator creation_op(const SpaceSpec& space);
Operator number_op(const SpaceSpec& space);
// |i><j| on any single-factor space.
Operator ketbra(const SpaceSpec& space, long i, long j);

// Kronecker product with concatenated SpaceSpec.
Operator tensor(const Operator& a, const Operator& b);

// Lift an operator on factor `which` of `full` into the product space by
// tensoring with identities on all other factors.
Operator embed(const SpaceSpec& full, std::size_t which, const Operator& op);

// Basis state |idx> on an arbitrary space.
Vec basis_state(const SpaceSpec& space, long idx);

// Submatrix of `op` over the given basis indices, reinterpreted on `sector`
// (a single-factor space of matching dimension). Used to restrict
// excitation-conserving Hamiltonians to a closed sector.
Operator restrict_operator(const Operator& op, const std::vector<long>& indices, const SpaceSpec& sector);

// |psi><psi| built sparsely from the nonzero entries of psi.
Operator projector_onto(const SpaceSpec& space, const Vec& psi, double drop_tol = 1e-15);

}  // namespace rydmech
