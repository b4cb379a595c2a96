#include "rydmech/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rydmech {

namespace {
void factor_extents(const SpaceSpec& space, std::size_t which, long& left, long& mid, long& right) {
    if (which >= space.n_factors()) throw InvalidArgument("partial_trace: factor index out of range");
    left = 1;
    right = 1;
    for (std::size_t k = 0; k < which; ++k) left *= space.factor(k).dim;
    mid = space.factor(which).dim;
    for (std::size_t k = which + 1; k < space.n_factors(); ++k) right *= space.factor(k).dim;
}
}  // namespace

Mat partial_trace_keep(const Mat& rho, const SpaceSpec& space, std::size_t keep) {
    if (rho.rows() != space.dim()) throw InvalidArgument("partial_trace: state does not live on the space");
    long left, mid, right;
    factor_extents(space, keep, left, mid, right);
    Mat out = Mat::Zero(mid, mid);
    for (long m = 0; m < mid; ++m)
        for (long mp = 0; mp < mid; ++mp) {
            cd acc = 0.0;
            for (long l = 0; l < left; ++l)
                for (long r = 0; r < right; ++r) acc += rho((l * mid + m) * right + r, (l * mid + mp) * right + r);
            out(m, mp) = acc;
        }
    return out;
}

Mat partial_trace_out(const Mat& rho, const SpaceSpec& space, std::size_t out_factor) {
    if (rho.rows() != space.dim()) throw InvalidArgument("partial_trace: state does not live on the space");
    long left, mid, right;
    factor_extents(space, out_factor, left, mid, right);
    const long d_red = left * right;
    Mat out = Mat::Zero(d_red, d_red);
    for (long l = 0; l < left; ++l)
        for (long r = 0; r < right; ++r)
            for (long lp = 0; lp < left; ++lp)
                for (long rp = 0; rp < right; ++rp) {
                    cd acc = 0.0;
                    for (long m = 0; m < mid; ++m) acc += rho((l * mid + m) * right + r, (lp * mid + m) * right + rp);
                    out(l * right + r, lp * right + rp) = acc;
                }
    return out;
}

SubspacePops subspace_populations(const Mat& rho_atomic, const SymmetricEmbed& embed, double t) {
    const SpaceSpec& micro = embed.micro_space();
    if (rho_atomic.rows() != micro.dim())
        throw InvalidArgument("subspace_populations: state does not live on the microscopic atomic space");
    SubspacePops out;
    out.t = t;
    // |G> is the all-ground string, index 0 in lexicographic enumeration.
    out.p_G = rho_atomic(0, 0).real();
    const int n = micro.factor(0).n_atoms;
    const Vec r_col = Vec(embed.isometry().col(n + 1));  // |E^0 R>
    out.p_R = (r_col.adjoint() * rho_atomic * r_col)(0).real();
    out.p_symmetric = embed.symmetric_population(rho_atomic);
    out.p_nonsymmetric = rho_atomic.trace().real() - out.p_symmetric;
    return out;
}

PhononDist phonon_distribution_from_probs(std::vector<double> p_n, double t) {
    PhononDist out;
    out.t = t;
    out.p_n = std::move(p_n);
    double total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < out.p_n.size(); ++n) {
        if (out.p_n[n] < -1e-9)
            throw InvalidArgument("phonon_distribution: negative probability " + std::to_string(out.p_n[n]));
        total += out.p_n[n];
        mean += static_cast<double>(n) * out.p_n[n];
        second += static_cast<double>(n) * static_cast<double>(n) * out.p_n[n];
    }
    out.norm_defect = std::abs(1.0 - total);
    if (total > 0.0) {
        mean /= total;
        second /= total;
    }
    out.mean = mean;
    out.variance = second - mean * mean;
    out.mandel_q = mean > 1e-300 ? (out.variance - mean) / mean : 0.0;
    return out;
}

PhononDist phonon_distribution(const Mat& rho, const SpaceSpec& space, std::size_t phonon_factor, double t) {
    const Mat reduced = partial_trace_keep(rho, space, phonon_factor);
    std::vector<double> p(reduced.rows());
    for (long n = 0; n < reduced.rows(); ++n) p[n] = reduced(n, n).real();
    return phonon_distribution_from_probs(std::move(p), t);
}

namespace {

void fft_radix2(std::vector<cd>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1))) throw InvalidArgument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const cd wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

struct Lorentzian {
    double a, c, hw, d;  // amplitude, center, half width, offset
    double eval(double w) const { return a / ((w - c) * (w - c) + hw * hw) + d; }
};

// Small Levenberg-Marquardt fit of the power spectrum window.
Lorentzian fit_lorentzian(const std::vector<double>& w, const std::vector<double>& p, Lorentzian init) {
    Lorentzian cur = init;
    const int n = static_cast<int>(w.size());
    auto chi2 = [&](const Lorentzian& l) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = l.eval(w[i]) - p[i];
            s += r * r;
        }
        return s;
    };
    double lambda = 1e-3;
    double best = chi2(cur);
    for (int iter = 0; iter < 200; ++iter) {
        Eigen::MatrixXd jac(n, 4);
        Eigen::VectorXd res(n);
        for (int i = 0; i < n; ++i) {
            const double dx = w[i] - cur.c;
            const double den = dx * dx + cur.hw * cur.hw;
            res(i) = cur.eval(w[i]) - p[i];
            jac(i, 0) = 1.0 / den;
            jac(i, 1) = 2.0 * cur.a * dx / (den * den);
            jac(i, 2) = -2.0 * cur.a * cur.hw / (den * den);
            jac(i, 3) = 1.0;
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * res;
        Eigen::MatrixXd lhs = jtj + lambda * Eigen::MatrixXd(jtj.diagonal().asDiagonal());
        const Eigen::VectorXd step = lhs.ldlt().solve(-g);
        Lorentzian trial = cur;
        trial.a += step(0);
        trial.c += step(1);
        trial.hw += step(2);
        trial.d += step(3);
        trial.hw = std::abs(trial.hw);
        const double trial_chi2 = chi2(trial);
        if (trial_chi2 < best) {
            cur = trial;
            best = trial_chi2;
            lambda = std::max(lambda * 0.5, 1e-12);
            if (step.norm() < 1e-12 * (1.0 + std::abs(cur.c))) break;
        } else {
            lambda = std::min(lambda * 4.0, 1e8);
        }
    }
    return cur;
}

}  // namespace

LinewidthResult linewidth(const std::vector<double>& signal, double dt, LinewidthOptions opts) {
    if (signal.size() < 8) throw InvalidArgument("linewidth: signal too short");
    if (dt <= 0) throw InvalidArgument("linewidth: dt must be positive");
    const std::size_t n = signal.size();
    const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);

    std::size_t n_pad = 1;
    while (n_pad < 4 * n) n_pad <<= 1;
    std::vector<cd> buf(n_pad, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double win =
            opts.hann_window ? 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n - 1)))
                             : 1.0;
        buf[i] = (signal[i] - mean) * win;
    }
    fft_radix2(buf);

    const double dw = 2.0 * M_PI / (static_cast<double>(n_pad) * dt);
    const std::size_t half = n_pad / 2;
    std::vector<double> power(half);
    double total = 0.0;
    for (std::size_t k = 0; k < half; ++k) {
        power[k] = std::norm(buf[k]);
        total += power[k];
    }
    std::size_t peak = 1;
    for (std::size_t k = 2; k < half; ++k)
        if (power[k] > power[peak]) peak = k;
    if (total <= 0.0 || power[peak] < opts.noise_floor * total)
        throw NumericalFailure("linewidth: no non-DC spectral peak above the noise floor");

    // Window around the peak for the Lorentzian fit. The padding factor is
    // 4, so +-10 signal bins correspond to +-40 padded bins.
    const long pad_factor = static_cast<long>(n_pad / n);
    const long win_bins = opts.fit_window_bins * std::max(1L, pad_factor);
    const long lo = std::max<long>(1, static_cast<long>(peak) - win_bins);
    const long hi = std::min<long>(static_cast<long>(half) - 1, static_cast<long>(peak) + win_bins);
    std::vector<double> ws, ps;
    for (long k = lo; k <= hi; ++k) {
        ws.push_back(static_cast<double>(k) * dw);
        ps.push_back(power[k]);
    }

    // Initial guesses: parabolic peak refinement and half-power width.
    double c0 = static_cast<double>(peak) * dw;
    if (peak > 0 && peak + 1 < half) {
        const double denom = power[peak - 1] - 2.0 * power[peak] + power[peak + 1];
        if (std::abs(denom) > 0) c0 += 0.5 * (power[peak - 1] - power[peak + 1]) / denom * dw;
    }
    long khi = static_cast<long>(peak);
    while (khi + 1 < static_cast<long>(half) && power[khi] > 0.5 * power[peak]) ++khi;
    long klo = static_cast<long>(peak);
    while (klo > 1 && power[klo] > 0.5 * power[peak]) --klo;
    double hw0 = 0.5 * static_cast<double>(khi - klo) * dw;
    if (hw0 <= 0) hw0 = dw;

    Lorentzian init{power[peak] * hw0 * hw0, c0, hw0, *std::min_element(ps.begin(), ps.end())};
    const Lorentzian fit = fit_lorentzian(ws, ps, init);

    LinewidthResult out;
    out.center = fit.c;
    out.fwhm = 2.0 * fit.hw;
    out.peak_power = power[peak];
    return out;
}

double transfer_fidelity(const LindbladModel& model, const Vec& psi0, const Vec& target, double t_g,
                         EvolveOptions opts) {
    if (std::abs(target.norm() - 1.0) > 1e-9) throw InvalidArgument("transfer_fidelity: target must be a pure state");
    if (std::abs(psi0.norm() - 1.0) > 1e-9) throw InvalidArgument("transfer_fidelity: psi0 must be normalized");
    const Mat rho0 = psi0 * psi0.adjoint();
    opts.keep_states = true;
    const EvolutionResult res = evolve_master(model, rho0, {0.0, t_g}, {}, opts);
    const Mat& rho = res.states.back();
    const double overlap = std::max(0.0, (target.adjoint() * rho * target)(0).real());
    return std::sqrt(overlap);
}

double fidelity_estimate(double g_eff, double gamma_m, double n_m, double gamma_r, double gamma_r_eff) {
    if (g_eff <= 0) throw InvalidArgument("fidelity_estimate: G_eff must be positive");
    return 1.0 - M_PI / (2.0 * g_eff) * (4.0 * n_m * gamma_m + gamma_m + gamma_r_eff + gamma_r);
}

CoolingPrediction cooling_steady_phonon(const PhysicalParams& p, const CoolingParams& c) {
    CoolingPrediction out;
    const EffectiveRates rates = effective_rates_approx(p);
    out.g_eff = std::abs(rates.G_eff_approx);
    out.gamma_cool = c.gamma_cool_R();
    out.strong_coupling = out.g_eff >= 10.0 * p.N_m * p.gamma_m;
    if (out.g_eff > 0.0 && out.gamma_cool > 0.0)
        out.n_s = 2.0 * p.N_m * p.gamma_m * (1.0 / out.g_eff + 1.0 / out.gamma_cool);
    return out;
}

std::vector<double> bose_einstein_probs(double n_m, std::size_t cutoff) {
    if (n_m < 0) throw InvalidArgument("bose_einstein_probs: negative occupation");
    std::vector<double> q(cutoff);
    const double r = n_m / (n_m + 1.0);
    double cur = 1.0 / (n_m + 1.0);
    for (std::size_t n = 0; n < cutoff; ++n) {
        q[n] = cur;
        cur *= r;
    }
    return q;
}

Mat thermal_density(long cutoff, double n_m) {
    if (cutoff < 1) throw InvalidArgument("thermal_density: cutoff must be >= 1");
    const std::vector<double> q = bose_einstein_probs(n_m, cutoff);
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    Mat rho = Mat::Zero(cutoff, cutoff);
    for (long n = 0; n < cutoff; ++n) rho(n, n) = q[n] / total;
    return rho;
}

double bose_einstein_distance(const std::vector<double>& p_n, bool fit, double n_m) {
    if (p_n.empty()) throw InvalidArgument("bose_einstein_distance: empty distribution");
    double total = 0.0, mean = 0.0;
    for (std::size_t n = 0; n < p_n.size(); ++n) {
        if (p_n[n] < -1e-9) throw InvalidArgument("bose_einstein_distance: negative probability");
        total += p_n[n];
        mean += static_cast<double>(n) * p_n[n];
    }
    if (total <= 0.0) throw InvalidArgument("bose_einstein_distance: zero distribution");
    const double target_mean = fit ? mean / total : n_m;
    const std::vector<double> q = bose_einstein_probs(target_mean, p_n.size());
    double tv = 0.0;
    double q_mass = 0.0;
    for (std::size_t n = 0; n < p_n.size(); ++n) {
        tv += std::abs(p_n[n] / total - q[n]);
        q_mass += q[n];
    }
    tv += 1.0 - q_mass;  // Bose-Einstein tail beyond the truncation
    return 0.5 * tv;
}

}  // namespace rydmech
