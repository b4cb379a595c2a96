#include "rydmech/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace rydmech {

namespace {
constexpr long kMaxDenseDim = 8192;  // 8192^2 complex = 1 GiB

void require_single_factor(const SpaceSpec& space, FactorKind kind, const char* what) {
    if (space.n_factors() != 1 || space.factor(0).kind != kind)
        throw InvalidArgument(std::string(what) + ": expected a single factor of the required kind, got " +
                              space.describe());
}
}  // namespace

Operator::Operator(SpaceSpec space, SpMat matrix) : space_(std::move(space)), mat_(std::move(matrix)) {
    if (mat_.rows() != space_.dim() || mat_.cols() != space_.dim())
        throw InvalidArgument("Operator: matrix shape does not match space dimension");
    mat_.makeCompressed();
}

Operator::Operator(SpaceSpec space, const Mat& matrix) : space_(std::move(space)) {
    if (matrix.rows() != space_.dim() || matrix.cols() != space_.dim())
        throw InvalidArgument("Operator: matrix shape does not match space dimension");
    mat_ = matrix.sparseView(1.0, 0.0);
    mat_.makeCompressed();
}

Operator Operator::identity(const SpaceSpec& space) {
    SpMat m(space.dim(), space.dim());
    m.setIdentity();
    return Operator(space, std::move(m));
}

Operator Operator::zero(const SpaceSpec& space) {
    return Operator(space, SpMat(space.dim(), space.dim()));
}

Operator Operator::from_triplets(const SpaceSpec& space, const std::vector<Triplet>& entries) {
    SpMat m(space.dim(), space.dim());
    m.setFromTriplets(entries.begin(), entries.end());
    return Operator(space, std::move(m));
}

Mat Operator::dense() const {
    if (dim() > kMaxDenseDim)
        throw ResourceLimit("Operator::dense: dimension " + std::to_string(dim()) + " too large for a dense view");
    return Mat(mat_);
}

Operator Operator::adjoint() const { return Operator(space_, SpMat(mat_.adjoint())); }

Operator Operator::transpose() const { return Operator(space_, SpMat(mat_.transpose())); }

void Operator::check_same_space(const Operator& other, const char* what) const {
    if (space_ != other.space_)
        throw InvalidArgument(std::string(what) + ": operators live on different spaces (" + space_.describe() +
                              " vs " + other.space_.describe() + ")");
}

Operator Operator::operator+(const Operator& other) const {
    check_same_space(other, "Operator::+");
    return Operator(space_, SpMat(mat_ + other.mat_));
}

Operator Operator::operator-(const Operator& other) const {
    check_same_space(other, "Operator::-");
    return Operator(space_, SpMat(mat_ - other.mat_));
}

Operator Operator::operator*(const Operator& other) const {
    check_same_space(other, "Operator::*");
    return Operator(space_, SpMat(mat_ * other.mat_));
}

Operator Operator::operator*(cd scalar) const { return Operator(space_, SpMat(mat_ * scalar)); }

Operator& Operator::operator+=(const Operator& other) {
    check_same_space(other, "Operator::+=");
    mat_ = mat_ + other.mat_;
    mat_.makeCompressed();
    return *this;
}

cd Operator::expectation(const Mat& rho) const {
    cd out = 0.0;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it) out += it.value() * rho(it.col(), it.row());
    return out;
}

double Operator::norm() const { return mat_.norm(); }

bool Operator::is_hermitian(double tol) const { return SpMat(mat_ - SpMat(mat_.adjoint())).norm() <= tol * (1.0 + norm()); }

bool Operator::is_unitary(double tol) const {
    SpMat prod = SpMat(mat_.adjoint()) * mat_;
    SpMat eye(dim(), dim());
    eye.setIdentity();
    return SpMat(prod - eye).norm() <= tol * std::sqrt(static_cast<double>(dim()));
}

bool Operator::is_diagonal(double tol) const {
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it)
            if (it.row() != it.col() && std::abs(it.value()) > tol) return false;
    return true;
}

bool Operator::is_strictly_one_sided(double tol) const {
    bool above = false, on_or_below = false;
    for (int k = 0; k < mat_.outerSize(); ++k)
        for (SpMat::InnerIterator it(mat_, k); it; ++it) {
            if (std::abs(it.value()) <= tol) continue;
            if (it.row() < it.col())
                above = true;
            else
                on_or_below = true;
        }
    return !(above && on_or_below);
}

bool Operator::approx_equal(const Operator& other, double tol) const {
    if (space_ != other.space_) return false;
    return SpMat(mat_ - other.mat_).norm() <= tol * (1.0 + std::max(norm(), other.norm()));
}

Operator annihilation_op(const SpaceSpec& space) {
    require_single_factor(space, FactorKind::fock, "annihilation_op");
    const long d = space.dim();
    std::vector<Triplet> entries;
    entries.reserve(d - 1);
    for (long n = 1; n < d; ++n) entries.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    return Operator::from_triplets(space, entries);
}

Operator creation_op(const SpaceSpec& space) { return annihilation_op(space).adjoint(); }

Operator number_op(const SpaceSpec& space) {
    require_single_factor(space, FactorKind::fock, "number_op");
    const long d = space.dim();
    std::vector<Triplet> entries;
    entries.reserve(d);
    for (long n = 1; n < d; ++n) entries.emplace_back(n, n, static_cast<double>(n));
    return Operator::from_triplets(space, entries);
}

Operator ketbra(const SpaceSpec& space, long i, long j) {
    if (i < 0 || i >= space.dim() || j < 0 || j >= space.dim())
        throw InvalidArgument("ketbra: index out of range");
    return Operator::from_triplets(space, {Triplet(i, j, 1.0)});
}

Operator tensor(const Operator& a, const Operator& b) {
    SpMat prod = Eigen::kroneckerProduct(a.sparse(), b.sparse());
    return Operator(a.space().concat(b.space()), std::move(prod));
}

Operator embed(const SpaceSpec& full, std::size_t which, const Operator& op) {
    if (which >= full.n_factors()) throw InvalidArgument("embed: factor index out of range");
    if (op.space().n_factors() != 1 || op.space().factor(0) != full.factor(which))
        throw InvalidArgument("embed: operator does not live on factor '" + full.factor(which).label + "'");
    long left = 1, right = 1;
    for (std::size_t k = 0; k < which; ++k) left *= full.factor(k).dim;
    for (std::size_t k = which + 1; k < full.n_factors(); ++k) right *= full.factor(k).dim;

    SpMat eye_l(left, left), eye_r(right, right);
    eye_l.setIdentity();
    eye_r.setIdentity();
    SpMat lifted = Eigen::kroneckerProduct(eye_l, SpMat(Eigen::kroneckerProduct(op.sparse(), eye_r)));
    return Operator(full, std::move(lifted));
}

Vec basis_state(const SpaceSpec& space, long idx) {
    if (idx < 0 || idx >= space.dim()) throw InvalidArgument("basis_state: index out of range");
    Vec v = Vec::Zero(space.dim());
    v(idx) = 1.0;
    return v;
}

Operator projector_onto(const SpaceSpec& space, const Vec& psi, double drop_tol) {
    if (psi.size() != space.dim()) throw InvalidArgument("projector_onto: vector does not live on the space");
    std::vector<long> support;
    for (long i = 0; i < psi.size(); ++i)
        if (std::abs(psi(i)) > drop_tol) support.push_back(i);
    std::vector<Triplet> entries;
    entries.reserve(support.size() * support.size());
    for (long i : support)
        for (long j : support) entries.emplace_back(i, j, psi(i) * std::conj(psi(j)));
    return Operator::from_triplets(space, entries);
}

Operator restrict_operator(const Operator& op, const std::vector<long>& indices, const SpaceSpec& sector) {
    if (static_cast<long>(indices.size()) != sector.dim())
        throw InvalidArgument("restrict_operator: sector dimension does not match index count");
    std::vector<long> where(op.dim(), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 0 || indices[k] >= op.dim()) throw InvalidArgument("restrict_operator: index out of range");
        where[indices[k]] = static_cast<long>(k);
    }
    std::vector<Triplet> entries;
    const SpMat& m = op.sparse();
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            if (where[it.row()] >= 0 && where[it.col()] >= 0)
                entries.emplace_back(where[it.row()], where[it.col()], it.value());
    return Operator::from_triplets(sector, entries);
}

}  // namespace rydmech
