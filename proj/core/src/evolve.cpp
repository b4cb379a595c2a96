#include "rydmech/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace rydmech {

const std::vector<cd>& EvolutionResult::record(const std::string& name) const {
    for (std::size_t i = 0; i < observable_names.size(); ++i)
        if (observable_names[i] == name) return observables[i];
    throw InvalidArgument("EvolutionResult: no observable named '" + name + "'");
}

std::vector<double> EvolutionResult::record_real(const std::string& name) const {
    const auto& c = record(name);
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

void check_density_matrix(const Mat& rho, double trace_tol, double psd_warn, double psd_error,
                          std::vector<std::string>* warnings) {
    const double tr_defect = std::abs(rho.trace() - cd(1.0));
    if (tr_defect > trace_tol)
        throw InvalidArgument("density matrix: trace defect " + std::to_string(tr_defect));
    const double herm = (rho - rho.adjoint()).norm();
    if (herm > trace_tol * (1.0 + rho.norm()))
        throw InvalidArgument("density matrix: not Hermitian (defect " + std::to_string(herm) + ")");
    if (rho.rows() <= 2048) {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        const double lambda_min = es.eigenvalues().minCoeff();
        if (lambda_min < psd_error)
            throw InvalidArgument("density matrix: negative eigenvalue " + std::to_string(lambda_min));
        if (lambda_min < psd_warn && warnings)
            warnings->push_back("density matrix eigenvalue " + std::to_string(lambda_min) +
                                " below PSD warning threshold");
    }
}

namespace {
void validate_grid(const std::vector<double>& times) {
    if (times.empty()) throw InvalidArgument("evolve: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1]) throw InvalidArgument("evolve: time grid must be strictly increasing");
}
}  // namespace

EvolutionResult evolve_master(const LindbladModel& model, const Mat& rho0, const std::vector<double>& times,
                              const std::vector<Observable>& observables, EvolveOptions opts) {
    validate_grid(times);
    const long d = model.dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw InvalidArgument("evolve_master: initial state does not match the model space");

    EvolutionResult res;
    res.warnings = model.warnings();
    check_density_matrix(rho0, opts.trace_tol, opts.psd_warn, opts.psd_error, &res.warnings);

    for (const auto& ob : observables) {
        if (ob.op.space() != model.space())
            throw InvalidArgument("evolve_master: observable '" + ob.name + "' lives on the wrong space");
        res.observable_names.push_back(ob.name);
    }
    res.observables.resize(observables.size());

    auto rhs = [&model, d](double, const Vec& y, Vec& dydt) {
        const Mat rho = unvectorize(y, d);
        const Mat drho = model.apply_generator(rho);
        dydt = vectorize(drho);
    };

    auto record = [&](double t, const Mat& rho) {
        res.times.push_back(t);
        res.trace_defect = std::max(res.trace_defect, std::abs(rho.trace() - cd(1.0)));
        res.hermiticity_defect = std::max(res.hermiticity_defect, (rho - rho.adjoint()).norm());
        for (std::size_t i = 0; i < observables.size(); ++i)
            res.observables[i].push_back(observables[i].op.expectation(rho));
        if (opts.keep_states) res.states.push_back(rho);
    };

    Vec y = vectorize(rho0);
    double t = times.front();
    record(t, rho0);

    if (opts.method == MasterMethod::adaptive_rk) {
        Dopri5 stepper(rhs, opts.integrator);
        for (std::size_t i = 1; i < times.size(); ++i) {
            stepper.integrate_to(t, times[i], y);
            t = times[i];
            record(t, unvectorize(y, d));
        }
    } else {
        for (std::size_t i = 1; i < times.size(); ++i) {
            krylov_expm_apply(rhs, times[i] - t, y);
            t = times[i];
            record(t, unvectorize(y, d));
        }
    }

    if (res.trace_defect > opts.trace_tol)
        res.warnings.push_back("trace defect " + std::to_string(res.trace_defect) +
                               " exceeded tolerance (leaky generator or truncation)");
    return res;
}

SteadyStateResult steady_state(const LindbladModel& model, SteadyStateOptions opts) {
    const long d = model.dim();
    SteadyStateResult out;

    if (opts.method == SteadyStateMethod::nullspace) {
        Superoperator l = liouvillian(model);
        // Solve L x = 0 with tr(x) = 1 by replacing the first row with the
        // trace functional.
        Mat a = l.matrix;
        Vec b = Vec::Zero(d * d);
        a.row(0).setZero();
        for (long c = 0; c < d; ++c) a(0, c * d + c) = 1.0;
        b(0) = 1.0;
        const Vec x = a.colPivHouseholderQr().solve(b);
        Mat rho = unvectorize(x, d);
        rho = 0.5 * (rho + rho.adjoint());  // clean numerical asymmetry
        rho /= rho.trace();
        out.rho = rho;
        out.residual = vectorize(model.apply_generator(rho)).norm();

        // Degeneracy probe on small systems: count near-zero singular values.
        if (d * d <= 1024) {
            Eigen::BDCSVD<Mat> svd(l.matrix);
            const auto& sv = svd.singularValues();
            const double tol = 1e-10 * std::max(1.0, static_cast<double>(sv(0)));
            int null_dim = 0;
            for (long i = 0; i < sv.size(); ++i)
                if (sv(i) < tol) ++null_dim;
            if (null_dim > 1) {
                out.degenerate = true;
                out.warnings.push_back("steady_state: nullspace dimension " + std::to_string(null_dim) +
                                       " > 1; returning the trace-normalized solution of the anchored system");
            }
        }
        if (out.residual > opts.residual_tol)
            out.warnings.push_back("steady_state: residual " + std::to_string(out.residual) +
                                   " above tolerance " + std::to_string(opts.residual_tol));
        return out;
    }

    // long_time: integrate from the maximally mixed state until the
    // generator application is small.
    Mat rho = Mat::Identity(d, d) / static_cast<double>(d);
    auto rhs = [&model, d](double, const Vec& y, Vec& dydt) {
        dydt = vectorize(model.apply_generator(unvectorize(y, d)));
    };
    Vec y = vectorize(rho);
    Dopri5 stepper(rhs, opts.integrator);
    double t = 0.0;
    double span = 1.0;
    while (t < opts.t_max) {
        const double t_target = t + span;
        stepper.integrate_to(t, t_target, y);
        t = t_target;
        span *= 2.0;
        rho = unvectorize(y, d);
        const double rate = vectorize(model.apply_generator(rho)).norm();
        if (rate < opts.long_time_tol) break;
    }
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace();
    out.rho = rho;
    out.residual = vectorize(model.apply_generator(rho)).norm();
    if (out.residual > opts.residual_tol)
        out.warnings.push_back("steady_state(long_time): residual " + std::to_string(out.residual) +
                               " above tolerance after t = " + std::to_string(t));
    return out;
}

}  // namespace rydmech
