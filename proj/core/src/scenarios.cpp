#include "rydmech/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rydmech/csv.hpp"

namespace rydmech {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct OutputWriter {
    fs::path dir;
    RunOutcome* outcome;

    void csv(const std::string& name, const CsvTable& table, const std::string& plot_hint) const {
        const fs::path p = dir / name;
        csv_write_file(p.string(), table);
        outcome->files.push_back(p.string());
        std::ofstream spec(p.string() + ".plotspec");
        spec << plot_hint;
        outcome->files.push_back(p.string() + ".plotspec");
    }
};

std::string series_plotspec(const CsvTable& t, const std::string& title) {
    std::ostringstream os;
    os << "x: " << t.header.front() << "\n";
    os << "y:";
    for (std::size_t i = 1; i < t.header.size(); ++i) os << " " << t.header[i];
    os << "\ntitle: " << title << "\n";
    return os.str();
}

Operator superatom_projector(const SpaceSpec& space, long ph, int level) {
    // |level, ph><level, ph| on a (membrane x superatom) space.
    const long idx = space.flatten({ph, level});
    return ketbra(space, idx, idx);
}

double fig_drive(const ScenarioConfig& cfg) {
    const double g_bar = cfg.long_distance.G_bar_eff(cfg.params.n_atoms);
    return cfg.drive_relative ? cfg.drive * g_bar : cfg.drive;
}

void write_meta(const ScenarioConfig& cfg, const OutputWriter& out, double wall_seconds) {
    json meta;
    meta["version"] = kVersion;
    meta["scenario"] = to_string(cfg.scenario);
    meta["seed"] = cfg.seed;
    meta["wall_time_s"] = wall_seconds;
    meta["warnings"] = out.outcome->warnings;
    meta["config"] = json::parse(config_to_json(cfg));
    json files = json::array();
    for (const auto& f : out.outcome->files) files.push_back(fs::path(f).filename().string());
    meta["files"] = files;
    const fs::path p = out.dir / "meta.json";
    std::ofstream f(p);
    f << meta.dump(2) << "\n";
    out.outcome->files.push_back(p.string());
}

// ---------------------------------------------------------------- fig2 ----

void run_fig2(const ScenarioConfig& cfg, const OutputWriter& out) {
    const PhysicalParams& p = cfg.params;
    LindbladModel model = build_microscopic(p, cfg.cutoffs);
    const SpaceSpec& full = model.space();

    const CollectiveBasis coll(p.n_atoms);
    const MicroscopicBasis micro(p.n_atoms, true);
    const SymmetricEmbed iso(coll, micro);

    const double g_eff = std::abs(effective_rates_exact(p).G_eff);
    if (g_eff <= 0) throw InvalidArgument("fig2_trajectory: effective coupling vanishes for these parameters");

    // t_max is interpreted as a horizon in units of 1/G_eff.
    std::vector<double> grid = cfg.time_grid();
    for (auto& t : grid) t /= g_eff;

    std::vector<Observable> obs;
    obs.push_back({"rho_GG", embed(full, 2, ketbra(micro.space(), 0, 0))});
    const Vec r_col = Vec(iso.isometry().col(coll.index_ER(0)));
    obs.push_back({"rho_RR", embed(full, 2, projector_onto(micro.space(), r_col))});
    obs.push_back({"p_sym", embed(full, 2, iso.projector())});

    // initial state: |E^0 R> atomic, vacuum phonon and cavity
    Vec psi0 = Vec::Zero(full.dim());
    {
        const Vec lifted = iso.lift(basis_state(coll.space(), coll.index_ER(0)));
        for (long a = 0; a < micro.dim(); ++a)
            if (std::abs(lifted(a)) > 0) psi0(full.flatten({0, 0, a})) = lifted(a);
    }

    TrajectoryOptions topts;
    TrajectoryResult res = evolve_trajectories(model, psi0, grid, cfg.n_traj, cfg.seed, obs, topts);
    for (const auto& w : model.warnings()) out.outcome->warnings.push_back(w);

    CsvTable mean;
    mean.header = {"t", "t_Geff", "rho_GG_mean", "rho_GG_stderr", "rho_RR_mean", "rho_RR_stderr",
                   "p_sym_mean", "p_sym_stderr", "p_nonsym_mean"};
    const auto gg_m = res.mean("rho_GG"), gg_s = res.stderr_of_mean("rho_GG");
    const auto rr_m = res.mean("rho_RR"), rr_s = res.stderr_of_mean("rho_RR");
    const auto ps_m = res.mean("p_sym"), ps_s = res.stderr_of_mean("p_sym");
    for (std::size_t i = 0; i < grid.size(); ++i)
        mean.add_row({grid[i], grid[i] * g_eff, gg_m(i), gg_s(i), rr_m(i), rr_s(i), ps_m(i), ps_s(i), 1.0 - ps_m(i)});
    out.csv("ensemble_mean.csv", mean, series_plotspec(mean, "trajectory ensemble mean vs t G_eff"));

    const long k_sym = res.observable_index("p_sym");
    const long k_gg = res.observable_index("rho_GG");
    const long k_rr = res.observable_index("rho_RR");
    for (int k = 0; k < std::min(cfg.n_traj, 4); ++k) {
        CsvTable tr;
        tr.header = {"t", "t_Geff", "rho_GG", "rho_RR", "p_sym", "p_nonsym"};
        for (std::size_t i = 0; i < grid.size(); ++i)
            tr.add_row({grid[i], grid[i] * g_eff, res.records[k_gg](k, i), res.records[k_rr](k, i),
                        res.records[k_sym](k, i), 1.0 - res.records[k_sym](k, i)});
        out.csv("trajectory_" + std::to_string(k) + ".csv", tr,
                series_plotspec(tr, "single quantum trajectory (jump-resolved observables)"));
    }

    CsvTable jumps;
    jumps.header = {"trajectory", "time", "time_Geff", "channel", "p_nonsym_pre", "p_nonsym_post"};
    for (int k = 0; k < cfg.n_traj; ++k)
        for (const auto& ev : res.jump_logs[k])
            jumps.add_row({static_cast<double>(k), ev.time, ev.time * g_eff, static_cast<double>(ev.channel),
                           1.0 - ev.pre[2], 1.0 - ev.post[2]});
    std::ostringstream hint;
    hint << "x: time_Geff\ny: p_nonsym_post\ntitle: jump log (channel tags: ";
    for (std::size_t c = 0; c < res.channel_tags.size(); ++c) hint << (c ? ", " : "") << c << "=" << res.channel_tags[c];
    hint << ")\n";
    out.csv("jumps.csv", jumps, hint.str());
}

// ---------------------------------------------------------------- fig4 ----

void run_fig4(const ScenarioConfig& cfg, const OutputWriter& out) {
    if (!cfg.has_long_distance)
        throw InvalidArgument("fig4_state_prep: config must provide the long_distance block");
    const double eta = fig_drive(cfg);
    LindbladModel model = build_long_distance(cfg.long_distance, cfg.params, LongDistanceMode::resonant_limit,
                                              cfg.cutoffs.phonon, eta);
    const SpaceSpec& full = model.space();
    const double g_bar = cfg.long_distance.G_bar_eff(cfg.params.n_atoms);
    if (g_bar <= 0) throw InvalidArgument("fig4_state_prep: G_bar_eff must be positive");

    std::vector<double> grid = cfg.time_grid();
    for (auto& t : grid) t /= g_bar;  // horizon in units of 1/G_bar_eff

    Mat rho0 = Mat::Zero(full.dim(), full.dim());
    {
        const Mat th = thermal_density(cfg.cutoffs.phonon, cfg.params.N_m);
        for (long n = 0; n < cfg.cutoffs.phonon; ++n)
            rho0(full.flatten({n, 0}), full.flatten({n, 0})) = th(n, n);
    }

    std::vector<Observable> obs;
    const Operator b = embed(full, 0, annihilation_op(fock_space(cfg.cutoffs.phonon, "membrane")));
    obs.push_back({"n_phonon", b.adjoint() * b});
    obs.push_back({"p_R", embed(full, 1, ketbra(two_level_space("superatom"), 1, 1))});
    obs.push_back({"p_G1", superatom_projector(full, 1, 0)});
    obs.push_back({"p_R0", superatom_projector(full, 0, 1)});
    obs.push_back({"p_G2", superatom_projector(full, 2, 0)});
    obs.push_back({"p_R1", superatom_projector(full, 1, 1)});

    EvolveOptions eopts;
    eopts.keep_states = true;
    EvolutionResult res = evolve_master(model, rho0, grid, obs, eopts);
    for (const auto& w : res.warnings) out.outcome->warnings.push_back(w);

    CsvTable stats;
    stats.header = {"t", "t_Geff", "mean_n", "variance", "mandel_q", "tv_to_thermal"};
    CsvTable dist;
    dist.header = {"t", "t_Geff"};
    for (long n = 0; n < cfg.cutoffs.phonon; ++n) dist.header.push_back("p" + std::to_string(n));
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        const PhononDist pd = phonon_distribution(res.states[i], full, 0, res.times[i]);
        const double tv = bose_einstein_distance(pd.p_n, true);
        stats.add_row({res.times[i], res.times[i] * g_bar, pd.mean, pd.variance, pd.mandel_q, tv});
        std::vector<double> row = {res.times[i], res.times[i] * g_bar};
        row.insert(row.end(), pd.p_n.begin(), pd.p_n.end());
        dist.add_row(row);
    }
    out.csv("phonon_stats.csv", stats, series_plotspec(stats, "phonon statistics under the driven resonant model"));
    out.csv("phonon_distribution.csv", dist, series_plotspec(dist, "time-resolved phonon probability distribution"));

    CsvTable pairs;
    pairs.header = {"t", "t_Geff", "p_G1", "p_R0", "p_G2", "p_R1", "n_phonon", "p_R"};
    for (std::size_t i = 0; i < res.times.size(); ++i)
        pairs.add_row({res.times[i], res.times[i] * g_bar, res.observables[2][i].real(), res.observables[3][i].real(),
                       res.observables[4][i].real(), res.observables[5][i].real(), res.observables[0][i].real(),
                       res.observables[1][i].real()});
    out.csv("rabi_pairings.csv", pairs, series_plotspec(pairs, "manifold populations: |G,n> <-> |R,n-1> pairings"));
}

// ---------------------------------------------------------------- fig5 ----

void run_fig5(const ScenarioConfig& cfg, const OutputWriter& out) {
    const int n = cfg.params.n_atoms;
    const double omega_int = cfg.params.g;
    const double omega = cfg.params.Omega;
    if (omega_int <= 0 || omega <= 0)
        throw InvalidArgument("fig5_linewidth: params.g (Omega_int) and params.Omega must be positive");
    const double gamma_e = cfg.params.Gamma_e > 0 ? cfg.params.Gamma_e : 0.5 * omega_int;
    const double delta_detuned = cfg.semiclassical_delta_factor * omega;

    const MicroscopicBasis micro(n, true);
    const CollectiveBasis coll(n);
    const SymmetricEmbed iso(coll, micro);
    const Observable p_e1{"p_E1", projector_onto(micro.space(), Vec(iso.isometry().col(coll.index_E(1))))};

    const std::vector<double> grid = cfg.time_grid();
    const double dt = grid[1] - grid[0];

    CsvTable widths;
    widths.header = {"delta", "center", "fwhm"};
    std::vector<double> fwhms;
    int run_idx = 0;
    for (double delta : {0.0, delta_detuned}) {
        LindbladModel model = build_semiclassical(n, delta, omega_int, omega, gamma_e);
        Mat rho0 = Mat::Zero(micro.dim(), micro.dim());
        rho0(0, 0) = 1.0;  // all atoms in the ground state
        EvolveOptions eopts;
        eopts.keep_states = false;
        eopts.method = MasterMethod::expm_krylov;
        EvolutionResult res = evolve_master(model, rho0, grid, {p_e1}, eopts);

        CsvTable sig;
        sig.header = {"t", "p_E1"};
        const auto vals = res.record_real("p_E1");
        for (std::size_t i = 0; i < grid.size(); ++i) sig.add_row({grid[i], vals[i]});
        out.csv("signal_delta" + std::to_string(run_idx) + ".csv", sig,
                series_plotspec(sig, "intermediate-state Rabi oscillations, Delta = " + std::to_string(delta)));

        const LinewidthResult lw = linewidth(vals, dt);
        widths.add_row({delta, lw.center, lw.fwhm});
        fwhms.push_back(lw.fwhm);
        ++run_idx;
    }
    out.csv("linewidths.csv", widths, "x: delta\ny: fwhm\ntitle: intermediate-state linewidths\n");

    CsvTable ratio;
    ratio.header = {"fwhm_resonant", "fwhm_detuned", "ratio"};
    ratio.add_row({fwhms[0], fwhms[1], fwhms[0] / fwhms[1]});
    out.csv("linewidth_ratio.csv", ratio, "title: resonant-to-detuned linewidth ratio\n");
}

// ------------------------------------------------- strong-coupling table ----

void run_strong_coupling(const ScenarioConfig& cfg, const OutputWriter& out) {
    const FeasibilityReport rep = check_strong_coupling(cfg.params);
    CsvTable t;
    t.header = {"sqrtN_g"};
    std::vector<double> row = {rep.lhs};
    for (const auto& term : rep.terms) {
        std::string base = term.name;
        for (auto& ch : base)
            if (ch == ' ' || ch == '/' || ch == '(' || ch == ')' || ch == '^') ch = '_';
        t.header.push_back(base);
        t.header.push_back(base + "_ratio");
        row.push_back(term.value);
        row.push_back(term.ratio);
    }
    t.header.push_back("margin");
    t.header.push_back("pass");
    row.push_back(rep.margin);
    row.push_back(rep.pass ? 1.0 : 0.0);
    t.add_row(row);
    for (const auto& c : rep.caveats) out.outcome->warnings.push_back(c);
    out.csv("strong_coupling.csv", t, "title: strong-coupling feasibility (ratios vs margin)\n");
}

// -------------------------------------------------- effective vs full ----

void run_effective_vs_full(const ScenarioConfig& cfg, const OutputWriter& out) {
    CsvTable t;
    t.header = {"N", "rabi_extracted", "two_G_eff_exact", "two_G_eff_approx", "rel_err_exact", "sqrtN_scaling_err"};
    double omega1 = 0.0;
    if (cfg.params.kappa > 0 || cfg.params.Gamma_e > 0 || cfg.params.Gamma_r > 0 || cfg.params.gamma_m > 0)
        out.outcome->warnings.push_back(
            "effective_vs_full: decay rates are ignored; the sector extraction is coherent");
    for (std::size_t i = 0; i < cfg.atom_sweep.size(); ++i) {
        PhysicalParams p = cfg.params;
        p.n_atoms = cfg.atom_sweep[i];
        p.kappa = p.Gamma_e = p.Gamma_r = p.gamma_m = 0.0;
        const RabiExtraction ext = extract_symmetric_rabi(p);
        if (i == 0) omega1 = ext.frequency;
        const double expected_scaling =
            omega1 * std::sqrt(static_cast<double>(p.n_atoms) / static_cast<double>(cfg.atom_sweep[0]));
        t.add_row({static_cast<double>(p.n_atoms), ext.frequency, ext.two_g_eff_exact, ext.two_g_eff_approx,
                   std::abs(ext.frequency - ext.two_g_eff_exact) / ext.two_g_eff_exact,
                   std::abs(ext.frequency - expected_scaling) / expected_scaling});
    }
    out.csv("collective_enhancement.csv", t,
            "x: N\ny: rabi_extracted two_G_eff_exact\ntitle: sqrt(N) collective enhancement of the JC coupling\n");
}

// -------------------------------------------------------- cooling sweep ----

void run_cooling_sweep(const ScenarioConfig& cfg, const OutputWriter& out) {
    const PhysicalParams& p = cfg.params;
    const EffectiveRates rates = effective_rates_approx(p);
    const double g_eff = std::abs(rates.G_eff_approx);
    if (g_eff <= 0) throw InvalidArgument("cooling_sweep: effective coupling vanishes");

    CsvTable t;
    t.header = {"gamma_cool", "gamma_cool_over_Geff", "n_s_formula", "n_s_simulated", "rel_diff", "strong_coupling"};
    for (double f : cfg.cooling_gamma_factors) {
        CoolingParams c = cfg.cooling;
        if (c.gamma_cl <= 0 || !cfg.has_cooling) c.gamma_cl = 1000.0 * g_eff;
        c.Omega_d = std::sqrt(f * g_eff * c.gamma_cl);
        LindbladModel model = build_cooling(p, c, 1, cfg.cutoffs.phonon);
        SteadyStateOptions sopts;
        sopts.method = SteadyStateMethod::nullspace;
        const SteadyStateResult ss = steady_state(model, sopts);
        for (const auto& w : ss.warnings) out.outcome->warnings.push_back(w);
        const PhononDist pd = phonon_distribution(ss.rho, model.space(), 0);
        const CoolingPrediction pred = cooling_steady_phonon(p, c);
        t.add_row({pred.gamma_cool, f, pred.n_s, pd.mean, std::abs(pd.mean - pred.n_s) / std::max(pred.n_s, 1e-300),
                   pred.strong_coupling ? 1.0 : 0.0});
    }
    out.csv("cooling_sweep.csv", t,
            "x: gamma_cool_over_Geff\ny: n_s_formula n_s_simulated\ntitle: steady-state phonon number vs removal rate\n");
}

// --------------------------------------------------------------- custom ----

void run_custom(const ScenarioConfig& cfg, const OutputWriter& out) {
    LindbladModel model;
    Vec psi0;
    std::vector<Observable> obs;

    const std::string& kind = cfg.custom_model;
    if (kind == "microscopic" || kind == "symmetric") {
        model = kind == "microscopic" ? build_microscopic(cfg.params, cfg.cutoffs)
                                      : build_symmetric(cfg.params, cfg.cutoffs);
        const SpaceSpec& full = model.space();
        const Operator b = embed(full, 0, annihilation_op(fock_space(cfg.cutoffs.phonon, "membrane")));
        const Operator a = embed(full, 1, annihilation_op(fock_space(cfg.cutoffs.cavity, "cavity")));
        obs.push_back({"n_phonon", b.adjoint() * b});
        obs.push_back({"n_cavity", a.adjoint() * a});
        long r_index;
        if (kind == "symmetric") {
            const CollectiveBasis coll(cfg.params.n_atoms);
            obs.push_back({"rho_GG", embed(full, 2, coll.projector(coll.index_G()))});
            obs.push_back({"rho_RR", embed(full, 2, coll.projector(coll.index_ER(0)))});
            r_index = full.flatten({0, 0, coll.index_ER(0)});
        } else {
            const MicroscopicBasis micro(cfg.params.n_atoms, true);
            const CollectiveBasis coll(cfg.params.n_atoms);
            const SymmetricEmbed embed_iso(coll, micro);
            obs.push_back({"rho_GG", embed(full, 2, ketbra(micro.space(), 0, 0))});
            const Vec r_col = Vec(embed_iso.isometry().col(coll.index_ER(0)));
            obs.push_back({"rho_RR", embed(full, 2, projector_onto(micro.space(), r_col))});
            obs.push_back({"p_sym", embed(full, 2, embed_iso.projector())});
            psi0 = Vec::Zero(full.dim());
            Vec lifted = embed_iso.lift(basis_state(coll.space(), coll.index_ER(0)));
            for (long aidx = 0; aidx < micro.dim(); ++aidx)
                if (std::abs(lifted(aidx)) > 0) psi0(full.flatten({0, 0, aidx})) = lifted(aidx);
            r_index = -1;
        }
        if (psi0.size() == 0) psi0 = basis_state(full, r_index);
    } else if (kind == "effective" || kind == "effective_exact" || kind == "cooling") {
        model = kind == "cooling" ? build_cooling(cfg.params, cfg.cooling, 1, cfg.cutoffs.phonon)
                                  : build_effective_n(cfg.params, 1, kind == "effective_exact", cfg.cutoffs.phonon);
        const SpaceSpec& full = model.space();
        const Operator b = embed(full, 0, annihilation_op(fock_space(cfg.cutoffs.phonon, "membrane")));
        obs.push_back({"n_phonon", b.adjoint() * b});
        obs.push_back({"p_R", embed(full, 1, ketbra(two_level_space("superatom"), 1, 1))});
        obs.push_back({"p_G1", superatom_projector(full, 1, 0)});
        psi0 = basis_state(full, full.flatten({0, 1}));  // |R, 0>
    } else if (kind == "long_distance_positional" || kind == "long_distance_resonant") {
        if (!cfg.has_long_distance) throw InvalidArgument("custom: long_distance block required for this model");
        const auto mode =
            kind == "long_distance_positional" ? LongDistanceMode::positional : LongDistanceMode::resonant_limit;
        model = build_long_distance(cfg.long_distance, cfg.params, mode, cfg.cutoffs.phonon,
                                    mode == LongDistanceMode::resonant_limit ? fig_drive(cfg) : 0.0);
        const SpaceSpec& full = model.space();
        const Operator b = embed(full, 0, annihilation_op(fock_space(cfg.cutoffs.phonon, "membrane")));
        obs.push_back({"n_phonon", b.adjoint() * b});
        obs.push_back({"p_R", embed(full, 1, ketbra(two_level_space("superatom"), 1, 1))});
        psi0 = basis_state(full, full.flatten({0, 1}));
    } else if (kind == "semiclassical") {
        const int n = cfg.params.n_atoms;
        model = build_semiclassical(n, cfg.semiclassical_delta_factor * cfg.params.Omega, cfg.params.g,
                                    cfg.params.Omega, cfg.params.Gamma_e);
        const MicroscopicBasis micro(n, true);
        const CollectiveBasis coll(n);
        const SymmetricEmbed embed_iso(coll, micro);
        obs.push_back({"p_E1", projector_onto(micro.space(), Vec(embed_iso.isometry().col(coll.index_E(1))))});
        obs.push_back({"p_G", ketbra(micro.space(), 0, 0)});
        psi0 = basis_state(micro.space(), 0);
    } else {
        throw InvalidArgument("custom: unknown model '" + kind + "'");
    }

    const std::vector<double> grid = cfg.time_grid();
    if (cfg.custom_trajectories) {
        TrajectoryResult res = evolve_trajectories(model, psi0, grid, cfg.n_traj, cfg.seed, obs);
        CsvTable t;
        t.header = {"t"};
        for (const auto& ob : obs) {
            t.header.push_back(ob.name + "_mean");
            t.header.push_back(ob.name + "_stderr");
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<double> row = {grid[i]};
            for (const auto& ob : obs) {
                row.push_back(res.mean(ob.name)(i));
                row.push_back(res.stderr_of_mean(ob.name)(i));
            }
            t.add_row(row);
        }
        out.csv("series.csv", t, series_plotspec(t, "trajectory ensemble, model = " + kind));
    } else {
        EvolveOptions eopts;
        eopts.keep_states = false;
        EvolutionResult res = evolve_master(model, psi0 * psi0.adjoint(), grid, obs, eopts);
        for (const auto& w : res.warnings) out.outcome->warnings.push_back(w);
        CsvTable t;
        t.header = {"t"};
        for (const auto& ob : obs) t.header.push_back(ob.name);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<double> row = {grid[i]};
            for (const auto& ob : obs) row.push_back(res.record(ob.name)[i].real());
            t.add_row(row);
        }
        out.csv("series.csv", t, series_plotspec(t, "master-equation evolution, model = " + kind));
    }
}

}  // namespace

LindbladModel coherent_sector_model(const LindbladModel& full, const std::vector<long>& indices) {
    const SpaceSpec sector = fock_space(static_cast<long>(indices.size()), "sector");
    const Operator h = restrict_operator(full.hamiltonian(), indices, sector);
    // Verify nothing couples out of the sector: column sums of |H| over the
    // sector must match the full operator's.
    std::vector<bool> inside(full.dim(), false);
    for (long idx : indices) inside[idx] = true;
    const SpMat& m = full.hamiltonian().sparse();
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) {
            const bool row_in = inside[it.row()];
            const bool col_in = inside[it.col()];
            if (row_in != col_in && std::abs(it.value()) > 1e-12)
                throw InvalidArgument("coherent_sector_model: Hamiltonian couples the sector to its complement");
        }
    return LindbladModel(sector, h);
}

RabiExtraction extract_symmetric_rabi(const PhysicalParams& p, int n_periods, int n_points) {
    PhysicalParams q = p;
    q.kappa = q.Gamma_e = q.Gamma_r = q.gamma_m = 0.0;
    const Cutoffs cut{2, 2};
    LindbladModel model = build_symmetric(q, cut);
    const SpaceSpec& full = model.space();
    const CollectiveBasis coll(q.n_atoms);

    const std::vector<long> sector = {
        full.flatten({1, 0, coll.index_G()}),    // |G, 0, 1>
        full.flatten({0, 1, coll.index_G()}),    // |G, 1, 0>
        full.flatten({0, 0, coll.index_E(1)}),   // |E^1, 0, 0>
        full.flatten({0, 0, coll.index_ER(0)}),  // |R, 0, 0>
    };
    LindbladModel sector_model = coherent_sector_model(model, sector);

    const EffectiveRates rates = effective_rates_exact(q);
    RabiExtraction out;
    out.two_g_eff_exact = 2.0 * std::abs(rates.G_eff);
    out.two_g_eff_approx = 2.0 * std::abs(rates.G_eff_approx);
    if (out.two_g_eff_exact <= 0) throw InvalidArgument("extract_symmetric_rabi: vanishing effective coupling");

    const double t_max = n_periods * 2.0 * M_PI / out.two_g_eff_exact;
    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) grid[i] = t_max * static_cast<double>(i) / (n_points - 1);

    const Observable p_r{"p_R", ketbra(sector_model.space(), 3, 3)};
    Mat rho0 = Mat::Zero(4, 4);
    rho0(3, 3) = 1.0;
    EvolveOptions eopts;
    eopts.method = MasterMethod::expm_krylov;
    eopts.keep_states = false;
    const EvolutionResult res = evolve_master(sector_model, rho0, grid, {p_r}, eopts);

    const LinewidthResult lw = linewidth(res.record_real("p_R"), grid[1] - grid[0]);
    out.frequency = lw.center;
    return out;
}

RunOutcome run_scenario(const ScenarioConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    fs::create_directories(cfg.output_dir);
    OutputWriter out{fs::path(cfg.output_dir), &outcome};

    switch (cfg.scenario) {
        case ScenarioKind::fig2_trajectory: run_fig2(cfg, out); break;
        case ScenarioKind::fig4_state_prep: run_fig4(cfg, out); break;
        case ScenarioKind::fig5_linewidth: run_fig5(cfg, out); break;
        case ScenarioKind::strong_coupling_table: run_strong_coupling(cfg, out); break;
        case ScenarioKind::effective_vs_full: run_effective_vs_full(cfg, out); break;
        case ScenarioKind::cooling_sweep: run_cooling_sweep(cfg, out); break;
        case ScenarioKind::custom: run_custom(cfg, out); break;
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_meta(cfg, out, wall);
    return outcome;
}

std::string validation_report(const ScenarioConfig& cfg) {
    std::ostringstream os;
    const PhysicalParams& p = cfg.params;
    p.validate();
    os << "scenario: " << to_string(cfg.scenario) << "\n";
    os << "unit: " << cfg.unit << (cfg.two_pi ? " (values scaled by 2 pi on load)" : "") << "\n";
    os << "n_atoms: " << p.n_atoms << "\n";
    os << "detunings: Delta_c = " << p.delta_c() << ", Delta_e = " << p.delta_e() << ", Delta_p = " << p.delta_p()
       << "\n";
    if (p.has_bare_frequencies()) {
        const double defect = p.resonance_defect();
        os << "resonance omega_gr - (omega_L + omega_L_m + omega_m) = " << defect;
        if (std::abs(defect) > 1e-9 * std::max(1.0, std::abs(p.omega_gr))) os << "  [WARNING: violated]";
        os << "\n";
    }

    try {
        const EffectiveRates r = effective_rates_exact(p);
        os << "G_eff approx = " << r.G_eff_approx << ", exact = " << r.G_eff << "\n";
        os << "Delta_g approx = " << r.Delta_g_approx << ", exact = " << r.Delta_g << "\n";
        os << "Delta_r approx = " << r.Delta_r_approx << ", exact = " << r.Delta_r << "\n";
        os << "Gamma_r_eff = " << r.Gamma_r_eff << ", gamma_m_eff = " << r.gamma_m_eff << "\n";
    } catch (const Error& e) {
        os << "effective rates: " << e.what() << "\n";
    }

    const double fast = std::max({std::abs(p.G), p.Omega, p.Gamma_e, p.kappa});
    if (fast > 0 && p.delta_c() != 0 && p.delta_e() != 0) {
        os << "adiabaticity: min(|Delta_c|,|Delta_e|)/max(G,Omega,Gamma_e,kappa) = "
           << std::min(std::abs(p.delta_c()), std::abs(p.delta_e())) / fast;
        const double gbar2 = p.g * p.g * p.n_atoms;
        if (gbar2 > 0) os << ", Delta_c Delta_e / (g^2 N) = " << p.delta_c() * p.delta_e() / gbar2;
        os << "\n";
    }

    const FeasibilityReport rep = check_strong_coupling(p);
    os << "strong coupling: sqrt(N) g = " << rep.lhs << (rep.pass ? "  [PASS]" : "  [FAIL]") << "\n";
    for (const auto& t : rep.terms) os << "  vs " << t.name << " = " << t.value << "  (ratio " << t.ratio << ")\n";
    for (const auto& c : rep.caveats) os << "  note: " << c << "\n";

    if (cfg.has_cooling) {
        os << "cooling: gamma_cool_R = " << cfg.cooling.gamma_cool_R()
           << (cfg.cooling.elimination_valid() ? "" : "  [WARNING: gamma_cl >> Omega_d violated]") << "\n";
    }
    if (cfg.has_long_distance) {
        const auto& ld = cfg.long_distance;
        os << "long distance: G_bar_eff = " << ld.G_bar_eff(p.n_atoms) << ", Delta_at = " << ld.Delta_at()
           << ", gamma_m_diff = " << ld.gamma_m_diff() << ", k z = " << ld.k_L_m * ld.z_bar << "\n";
    }

    long dim_full = -1;
    try {
        dim_full = cavity_model_space(p, cfg.cutoffs, false).dim();
    } catch (const ResourceLimit&) {
    }
    os << "Hilbert dimensions: microscopic = ";
    if (dim_full > 0)
        os << dim_full;
    else
        os << "(exceeds cap " << dimension_cap() << ")";
    os << ", symmetric = " << cavity_model_space(p, cfg.cutoffs, true).dim() << ", JC = " << 2 * cfg.cutoffs.phonon
       << "\n";
    return os.str();
}

}  // namespace rydmech
