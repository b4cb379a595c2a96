#include "rydmech/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace rydmech {

namespace {
// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                 e6 = 187.0 / 2100, e7 = 1.0 / 40;
}  // namespace

Dopri5::Dopri5(Rhs rhs, IntegratorOptions opts) : rhs_(std::move(rhs)), opts_(opts) {}

double Dopri5::error_norm(const Vec& y0, const Vec& y1, const Vec& err) const {
    double acc = 0.0;
    for (long i = 0; i < err.size(); ++i) {
        const double sc = opts_.atol + opts_.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double q = std::abs(err(i)) / sc;
        acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

double Dopri5::initial_step(double t, const Vec& y) const {
    Vec f(y.size());
    rhs_(t, y, f);
    const double d0 = y.norm();
    const double d1 = f.norm();
    double h = (d1 > 1e-12 && d0 > 1e-12) ? 0.01 * d0 / d1 : 1e-6;
    if (opts_.h_max > 0) h = std::min(h, opts_.h_max);
    return h;
}

void Dopri5::stiffness_failure(double t, const Vec& y, double h) const {
    const double radius = spectral_radius_estimate(rhs_, y.size());
    throw NumericalFailure("integrator: step size underflow (h=" + std::to_string(h) + " at t=" + std::to_string(t) +
                           "); generator spectral radius estimate " + std::to_string(radius) +
                           " suggests a stiff problem");
}

double Dopri5::step(double& t, Vec& y, double t_limit) {
    const long n = y.size();
    if (k1_.size() != n) {
        k1_.resize(n); k2_.resize(n); k3_.resize(n); k4_.resize(n);
        k5_.resize(n); k6_.resize(n); k7_.resize(n); ytmp_.resize(n);
    }
    if (h_next_ <= 0.0) h_next_ = opts_.h_init > 0 ? opts_.h_init : initial_step(t, y);
    const bool fixed = opts_.h_min > 0 && opts_.h_min == opts_.h_max;

    double h = h_next_;
    while (true) {
        if (++n_steps_ > opts_.max_steps) throw NumericalFailure("integrator: maximum step count exceeded");
        const double h_cruise = h;
        const bool clamped = h > t_limit - t;
        h = std::min(h, t_limit - t);
        if (opts_.h_max > 0) h = std::min(h, opts_.h_max);
        const double h_floor = std::max(opts_.h_min, 16.0 * std::numeric_limits<double>::epsilon() *
                                                        std::max(std::abs(t), 1.0));
        if (h < h_floor && t + h < t_limit) stiffness_failure(t, y, h);

        rhs_(t, y, k1_);
        ytmp_ = y + h * (a21 * k1_);
        rhs_(t + c2 * h, ytmp_, k2_);
        ytmp_ = y + h * (a31 * k1_ + a32 * k2_);
        rhs_(t + c3 * h, ytmp_, k3_);
        ytmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        rhs_(t + c4 * h, ytmp_, k4_);
        ytmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        rhs_(t + c5 * h, ytmp_, k5_);
        ytmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        rhs_(t + h, ytmp_, k6_);
        ytmp_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);  // 5th order
        rhs_(t + h, ytmp_, k7_);

        if (fixed) {
            t += h;
            y.swap(ytmp_);
            h_next_ = opts_.h_min;
            return h;
        }

        // embedded 4th-order difference
        k2_ = y + h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
        const double err = error_norm(y, ytmp_, ytmp_ - k2_);
        if (err <= 1.0) {
            t += h;
            y.swap(ytmp_);
            const double grow = err > 1e-12 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h_next_ = h * std::clamp(grow, 0.2, 5.0);
            // A step cut short by the grid must not throttle the next one.
            if (clamped) h_next_ = std::max(h_next_, h_cruise);
            return h;
        }
        ++n_rejected_;
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
}

void Dopri5::integrate_to(double t, double t_end, Vec& y) {
    if (t_end < t) throw InvalidArgument("integrator: time must not decrease");
    const double tiny = 1e-14 * std::max(1.0, std::abs(t_end));
    while (t_end - t > tiny) step(t, y, t_end);
}

void krylov_expm_apply(const Rhs& rhs, double dt, Vec& y, int subspace_dim, double tol) {
    if (dt < 0) throw InvalidArgument("krylov_expm_apply: negative time step");
    if (dt == 0.0) return;
    const long n = y.size();
    const int m = std::min<long>(subspace_dim, n);

    double remaining = dt;
    double h = dt;
    int guard = 0;
    while (remaining > 1e-15 * dt) {
        if (++guard > 100000) throw NumericalFailure("krylov_expm_apply: sub-stepping failed to converge");
        h = std::min(h, remaining);
        const double beta = y.norm();
        if (beta == 0.0) return;

        Mat v = Mat::Zero(n, m + 1);
        Mat hess = Mat::Zero(m + 2, m + 1);
        v.col(0) = y / beta;
        int k = m;
        bool breakdown = false;
        Vec w(n);
        for (int j = 0; j < m; ++j) {
            rhs(0.0, v.col(j), w);
            for (int i = 0; i <= j; ++i) {
                const cd hij = v.col(i).dot(w);
                hess(i, j) = hij;
                w -= hij * v.col(i);
            }
            // one pass of reorthogonalization keeps the basis clean
            for (int i = 0; i <= j; ++i) {
                const cd corr = v.col(i).dot(w);
                hess(i, j) += corr;
                w -= corr * v.col(i);
            }
            const double nrm = w.norm();
            hess(j + 1, j) = nrm;
            if (nrm < 1e-14 * beta) {
                k = j + 1;
                breakdown = true;
                break;
            }
            v.col(j + 1) = w / nrm;
        }

        const Mat hk = hess.topLeftCorner(k, k);
        const Mat ehk = (h * hk).exp();
        const double err = breakdown ? 0.0 : std::abs(hess(k, k - 1)) * std::abs(ehk(k - 1, 0)) * h * beta;
        if (err > tol * std::max(1.0, beta) && !breakdown) {
            h *= 0.5;
            continue;
        }
        y = beta * (v.leftCols(k) * ehk.col(0));
        remaining -= h;
        if (err < 0.01 * tol * std::max(1.0, beta)) h *= 2.0;
    }
}

double spectral_radius_estimate(const Rhs& rhs, long dim, int iterations) {
    Vec v = Vec::Random(dim);
    v.normalize();
    Vec w(dim);
    double lambda = 0.0;
    for (int i = 0; i < iterations; ++i) {
        rhs(0.0, v, w);
        lambda = w.norm();
        if (lambda == 0.0) return 0.0;
        v = w / lambda;
    }
    return lambda;
}

}  // namespace rydmech
