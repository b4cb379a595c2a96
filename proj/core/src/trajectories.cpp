#include "rydmech/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

namespace rydmech {

namespace {

// Single classical RK4 probe step for jump-time bisection; the surrounding
// adaptive step already passed error control at this size.
Vec rk4_probe(const SpMat& h_nh, const Vec& y, double h) {
    const cd mi(0.0, -1.0);
    const Vec k1 = mi * (h_nh * y);
    const Vec k2 = mi * (h_nh * (y + 0.5 * h * k1));
    const Vec k3 = mi * (h_nh * (y + 0.5 * h * k2));
    const Vec k4 = mi * (h_nh * (y + h * k3));
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Channels {
    std::vector<SpMat> jumps;
    std::vector<std::string> tags;
    SpMat h_nh;  // H - (i/2) sum J^d J
};

}  // namespace

Eigen::VectorXd TrajectoryResult::mean(const std::string& name) const {
    const long k = observable_index(name);
    return records[k].colwise().mean();
}

Eigen::VectorXd TrajectoryResult::stderr_of_mean(const std::string& name) const {
    const long k = observable_index(name);
    const Eigen::MatrixXd& r = records[k];
    const Eigen::RowVectorXd mu = r.colwise().mean();
    Eigen::VectorXd out(r.cols());
    const double n = static_cast<double>(r.rows());
    for (long j = 0; j < r.cols(); ++j) {
        const double var = (r.col(j).array() - mu(j)).square().sum() / std::max(1.0, n - 1.0);
        out(j) = std::sqrt(var / n);
    }
    return out;
}

long TrajectoryResult::observable_index(const std::string& name) const {
    for (std::size_t i = 0; i < observable_names.size(); ++i)
        if (observable_names[i] == name) return static_cast<long>(i);
    throw InvalidArgument("TrajectoryResult: no observable named '" + name + "'");
}

TrajectoryResult evolve_trajectories(const LindbladModel& model, const Vec& psi0, const std::vector<double>& times,
                                     int n_traj, std::uint64_t seed, const std::vector<Observable>& observables,
                                     TrajectoryOptions opts) {
    if (times.empty()) throw InvalidArgument("evolve_trajectories: empty time grid");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1]) throw InvalidArgument("evolve_trajectories: grid must be strictly increasing");
    if (n_traj < 1) throw InvalidArgument("evolve_trajectories: need at least one trajectory");
    if (psi0.size() != model.dim()) throw InvalidArgument("evolve_trajectories: state does not match model space");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw InvalidArgument("evolve_trajectories: initial state must be normalized");
    for (const auto& ob : observables)
        if (ob.op.space() != model.space())
            throw InvalidArgument("evolve_trajectories: observable '" + ob.name + "' lives on the wrong space");

    const JumpDecomposition decomp = model.jump_decomposition(opts.decomposition_tol);
    Channels ch;
    ch.tags = decomp.tags;
    SpMat damping(model.dim(), model.dim());
    for (const auto& j : decomp.jumps) {
        ch.jumps.push_back(j.sparse());
        damping = damping + SpMat(SpMat(j.sparse().adjoint()) * j.sparse());
    }
    ch.h_nh = model.hamiltonian().sparse() - cd(0.0, 0.5) * damping;
    const bool has_jumps = !ch.jumps.empty();

    TrajectoryResult res;
    res.times = times;
    res.seed = seed;
    res.n_traj = n_traj;
    res.channel_tags = ch.tags;
    for (const auto& ob : observables) res.observable_names.push_back(ob.name);
    res.records.assign(observables.size(), Eigen::MatrixXd::Zero(n_traj, times.size()));
    res.jump_logs.resize(n_traj);

    auto normalized_expectations = [&](const Vec& psi) {
        std::vector<double> vals(observables.size());
        const double n2 = psi.squaredNorm();
        for (std::size_t k = 0; k < observables.size(); ++k)
            vals[k] = (psi.dot(observables[k].op.sparse() * psi)).real() / n2;
        return vals;
    };

    std::atomic<double> worst_norm_defect{0.0};
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;

    auto run_one = [&](int traj) {
        std::seed_seq sseq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(traj)};
        std::mt19937_64 rng(sseq);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);

        auto rhs = [&ch](double, const Vec& y, Vec& dydt) { dydt = cd(0.0, -1.0) * (ch.h_nh * y); };
        Dopri5 stepper(rhs, opts.integrator);

        Vec psi = psi0;
        double t = times.front();
        double threshold = has_jumps ? uniform(rng) : -1.0;

        auto record_at = [&](std::size_t grid_idx) {
            const auto vals = normalized_expectations(psi);
            for (std::size_t k = 0; k < vals.size(); ++k) res.records[k](traj, grid_idx) = vals[k];
        };
        record_at(0);

        for (std::size_t gi = 1; gi < times.size(); ++gi) {
            const double t_goal = times[gi];
            while (t_goal - t > 1e-14 * std::max(1.0, std::abs(t_goal))) {
                const double t_prev = t;
                const Vec psi_prev = psi;
                const double h = stepper.step(t, psi, t_goal);

                if (has_jumps && psi.squaredNorm() < threshold) {
                    // Bisect the crossing time of ||psi||^2 = threshold
                    // inside (t_prev, t_prev + h].
                    double lo = 0.0, hi = h;
                    Vec psi_hi = psi;
                    const double tol_t = opts.jump_tol_factor * h;
                    while (hi - lo > tol_t) {
                        const double mid = 0.5 * (lo + hi);
                        const Vec probe = rk4_probe(ch.h_nh, psi_prev, mid);
                        if (probe.squaredNorm() < threshold) {
                            hi = mid;
                            psi_hi = probe;
                        } else {
                            lo = mid;
                        }
                    }
                    const double t_jump = t_prev + hi;
                    psi = psi_hi;

                    JumpEvent ev;
                    ev.time = t_jump;
                    ev.pre = normalized_expectations(psi);

                    std::vector<double> weights(ch.jumps.size());
                    double total = 0.0;
                    std::vector<Vec> collapsed(ch.jumps.size());
                    for (std::size_t k = 0; k < ch.jumps.size(); ++k) {
                        collapsed[k] = ch.jumps[k] * psi;
                        weights[k] = collapsed[k].squaredNorm();
                        total += weights[k];
                    }
                    if (total <= 0.0)
                        throw NumericalFailure("trajectory: threshold crossed but all jump weights vanish");
                    double u = uniform(rng) * total;
                    std::size_t chosen = 0;
                    for (; chosen + 1 < weights.size(); ++chosen) {
                        if (u < weights[chosen]) break;
                        u -= weights[chosen];
                    }
                    psi = collapsed[chosen] / std::sqrt(weights[chosen]);
                    const double defect = std::abs(psi.norm() - 1.0);
                    double cur = worst_norm_defect.load();
                    while (defect > cur && !worst_norm_defect.compare_exchange_weak(cur, defect)) {}

                    ev.channel = static_cast<int>(chosen);
                    ev.post = normalized_expectations(psi);
                    res.jump_logs[traj].push_back(std::move(ev));

                    t = t_jump;
                    threshold = uniform(rng);
                }
            }
            t = t_goal;
            record_at(gi);
        }
    };

    int n_threads = opts.n_threads > 0 ? opts.n_threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n_traj));

    if (n_threads == 1) {
        for (int i = 0; i < n_traj; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < n_threads; ++w) {
            pool.emplace_back([&]() {
                while (true) {
                    const int i = next.fetch_add(1);
                    if (i >= n_traj) return;
                    try {
                        run_one(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    res.max_norm_defect = worst_norm_defect.load();
    return res;
}

}  // namespace rydmech
