#include "rydmech/builders.hpp"

#include <cmath>

namespace rydmech {

namespace {

void check_adiabatic(const PhysicalParams& p, int n, LindbladModel& model) {
    const double dc = std::abs(p.delta_c());
    const double de = std::abs(p.delta_e());
    const double fast = std::max({std::abs(p.G) * std::sqrt(static_cast<double>(n)), p.Omega, p.Gamma_e, p.kappa});
    const double ratio_threshold = 10.0;
    if (fast > 0.0 && std::min(dc, de) < ratio_threshold * fast)
        model.add_warning("adiabatic condition Delta_c,Delta_e >> G sqrt(n), Omega, Gamma_e, kappa is marginal: min detuning / max fast scale = " +
                          std::to_string(std::min(dc, de) / fast));
    const double gbar2n = p.g * p.g * p.n_atoms * n;
    if (gbar2n > 0.0 && dc * de < ratio_threshold * gbar2n)
        model.add_warning("adiabatic condition Delta_c Delta_e >> g^2 N n is marginal: ratio = " +
                          std::to_string(dc * de / gbar2n));
}

void check_resonance(const PhysicalParams& p, LindbladModel& model) {
    if (!p.has_bare_frequencies()) return;
    const double defect = p.resonance_defect();
    const double scale = std::max({std::abs(p.omega_gr), std::abs(p.omega_L), 1.0});
    if (std::abs(defect) > 1e-9 * scale)
        model.add_warning("two-photon resonance condition omega_gr = omega_L + omega_L_m + omega_m violated by " +
                          std::to_string(defect));
}

void add_thermal_phonon(LindbladModel& model, const Operator& b, double gamma, double n_th) {
    model.add_lindblad((n_th + 1.0) * gamma, b, "gamma_m-");
    model.add_lindblad(n_th * gamma, b.adjoint(), "gamma_m+");
}

}  // namespace

SpaceSpec cavity_model_space(const PhysicalParams& p, Cutoffs cutoffs, bool symmetric_basis) {
    SpaceSpec membrane = fock_space(cutoffs.phonon, "membrane");
    SpaceSpec cavity = fock_space(cutoffs.cavity, "cavity");
    SpaceSpec atoms = symmetric_basis ? collective_space(p.n_atoms) : microscopic_space(p.n_atoms, true);
    return membrane.concat(cavity).concat(atoms);
}

SpaceSpec jc_model_space(long phonon_cutoff) {
    return fock_space(phonon_cutoff, "membrane").concat(two_level_space("superatom"));
}

LindbladModel build_microscopic(const PhysicalParams& p, Cutoffs cutoffs) {
    p.validate();
    const SpaceSpec full = cavity_model_space(p, cutoffs, false);
    const MicroscopicBasis atoms(p.n_atoms, true);

    const Operator b = embed(full, 0, annihilation_op(fock_space(cutoffs.phonon, "membrane")));
    const Operator a = embed(full, 1, annihilation_op(fock_space(cutoffs.cavity, "cavity")));
    const Operator n_c = a.adjoint() * a;

    Operator h = p.delta_c() * n_c;
    h += p.delta_e() * embed(full, 2, atoms.level_count(AtomLevel::e));
    const Operator s_ge = embed(full, 2, atoms.collective_op(AtomLevel::g, AtomLevel::e));
    const Operator s_er = embed(full, 2, atoms.collective_op(AtomLevel::e, AtomLevel::r));
    h += p.g * (a.adjoint() * s_ge + s_ge.adjoint() * a);
    h += p.Omega * (s_er + s_er.adjoint());
    h += p.G * (a.adjoint() * b) + std::conj(p.G) * (b.adjoint() * a);

    LindbladModel model(full, h);
    check_resonance(p, model);

    add_thermal_phonon(model, b, p.gamma_m, p.N_m);
    model.add_lindblad(p.kappa, a, "kappa");
    for (int i = 0; i < p.n_atoms; ++i) {
        model.add_lindblad(p.Gamma_e, embed(full, 2, atoms.atom_op(i, AtomLevel::g, AtomLevel::e)),
                           "Gamma_e[" + std::to_string(i) + "]");
        model.add_lindblad(p.Gamma_r, embed(full, 2, atoms.atom_op(i, AtomLevel::g, AtomLevel::r)),
                           "Gamma_r[" + std::to_string(i) + "]");
    }
    return model;
}

LindbladModel build_symmetric(const PhysicalParams& p, Cutoffs cutoffs) {
    p.validate();
    const int n = p.n_atoms;
    const SpaceSpec full = cavity_model_space(p, cutoffs, true);
    const CollectiveBasis coll(n);

    const Operator b = embed(full, 0, annihilation_op(fock_space(cutoffs.phonon, "membrane")));
    const Operator a = embed(full, 1, annihilation_op(fock_space(cutoffs.cavity, "cavity")));

    const Operator s0 = embed(full, 2, collective_lowering(coll, CollectiveBranch::cavity_branch_noR));
    const Operator sr = embed(full, 2, collective_lowering(coll, CollectiveBranch::cavity_branch_withR));
    const Operator sl = embed(full, 2, collective_lowering(coll, CollectiveBranch::laser_branch));
    const Operator e_count = embed(full, 2, coll.e_count());

    Operator h = p.delta_c() * (a.adjoint() * a) + p.delta_e() * e_count;
    h += p.g * (a * s0.adjoint() + s0 * a.adjoint());
    h += p.g * (a * sr.adjoint() + sr * a.adjoint());
    h += p.Omega * (sl + sl.adjoint());
    h += p.G * (a.adjoint() * b) + std::conj(p.G) * (b.adjoint() * a);

    LindbladModel model(full, h);
    check_resonance(p, model);

    add_thermal_phonon(model, b, p.gamma_m, p.N_m);
    model.add_lindblad(p.kappa, a, "kappa");
    for (int i = 0; i <= n - 1; ++i)
        model.add_lindblad(p.Gamma_r, embed(full, 2, ketbra(coll.space(), coll.index_E(i), coll.index_ER(i))),
                           "Gamma_r[E" + std::to_string(i) + "]");

    if (p.Gamma_e > 0.0) {
        // Four sandwich blocks of the symmetric-subspace cross dissipator,
        // factorized over the branch lowering operators S0, SR: the printed
        // coefficients 2 Gamma_e sqrt(ij (1-(i-1)/N)(1-(j-1)/N)) equal
        // (2 Gamma_e/N) times the products of ladder elements.
        const double c = p.Gamma_e / n;
        DissipatorTerm t00;
        t00.coeff = c;
        t00.left = s0;
        t00.right = s0.adjoint();
        t00.tag = "Gamma_e.sym";
        model.add_dissipator(t00);

        DissipatorTerm trr;
        trr.coeff = c;
        trr.left = sr;
        trr.right = sr.adjoint();
        trr.tag = "Gamma_e.sym";
        model.add_dissipator(trr);

        DissipatorTerm cross;
        cross.coeff = c;
        cross.left = sr;
        cross.right = s0.adjoint();
        cross.add_hc = true;
        cross.tag = "Gamma_e.sym";
        model.add_dissipator(cross);

        // Printed anticommutator carries the full per-excitation rate
        // -Gamma_e {N_e, rho}; the remainder beyond the sandwich terms'
        // own anticommutators is the leak into the non-symmetric subspace.
        Operator remainder = c * (s0.adjoint() * s0 + sr.adjoint() * sr) - p.Gamma_e * e_count;
        if (remainder.norm() > 1e-14 * p.Gamma_e * n) {
            DampingTerm leak;
            leak.coeff = 1.0;
            leak.op = remainder;
            model.add_damping(leak);
        }
    }
    return model;
}

LindbladModel build_effective_n(const PhysicalParams& p, int n, bool use_exact_rates, long phonon_cutoff) {
    p.validate();
    if (n < 1) throw InvalidArgument("build_effective_n: excitation number must be >= 1");
    if (use_exact_rates && n != 1)
        throw UnsupportedModel("build_effective_n: exact rates are derived only for the single-excitation manifold");
    if (phonon_cutoff < n + 1)
        throw InvalidArgument("build_effective_n: phonon cutoff too small for the requested manifold");

    const SpaceSpec full = jc_model_space(phonon_cutoff);
    const SpaceSpec tl = two_level_space("superatom");
    const Operator b = embed(full, 0, annihilation_op(fock_space(phonon_cutoff, "membrane")));
    const Operator nb = b.adjoint() * b;
    const Operator sigma_gg = embed(full, 1, ketbra(tl, 0, 0));
    const Operator sigma_rr = embed(full, 1, ketbra(tl, 1, 1));
    const Operator sigma_gr = embed(full, 1, ketbra(tl, 0, 1));

    const EffectiveRates rates = use_exact_rates ? effective_rates_exact(p) : effective_rates_approx(p);
    const double g_eff = use_exact_rates ? rates.G_eff : rates.G_eff_approx;
    const double delta_g = use_exact_rates ? rates.Delta_g : rates.Delta_g_approx;
    const double delta_r = use_exact_rates ? rates.Delta_r : rates.Delta_r_approx;

    // -n Delta_G on |G,n> realized as -Delta_G (number x |G><G|); the
    // sqrt(n) ladder factor is carried by b itself.
    Operator h = -delta_g * (nb * sigma_gg) - delta_r * sigma_rr;
    h += g_eff * (b * sigma_gr.adjoint() + b.adjoint() * sigma_gr);

    LindbladModel model(full, h);
    check_adiabatic(p, n, model);

    if (use_exact_rates) {
        model.add_lindblad(p.Gamma_r, sigma_gr, "Gamma_r");
        // Exact jump operators |G,0>(w_G1 <G,1| + w_R0 <R,0|).
        const long g0 = full.flatten({0, 0});
        const long g1 = full.flatten({1, 0});
        const long r0 = full.flatten({0, 1});
        auto jump_from_weights = [&](const std::array<cd, 2>& w) {
            std::vector<Triplet> tr;
            if (std::abs(w[0]) > 0) tr.emplace_back(g0, g1, w[0]);
            if (std::abs(w[1]) > 0) tr.emplace_back(g0, r0, w[1]);
            return Operator::from_triplets(full, tr);
        };
        const Operator j_gamma = jump_from_weights(rates.exact_jump_gamma);
        const Operator j_kappa = jump_from_weights(rates.exact_jump_kappa);
        if (j_gamma.nonzeros() > 0) model.add_lindblad(1.0, j_gamma, "J_Gamma");
        if (j_kappa.nonzeros() > 0) model.add_lindblad(1.0, j_kappa, "J_kappa");
        add_thermal_phonon(model, b, p.gamma_m, p.N_m);
    } else {
        model.add_lindblad(p.Gamma_r + rates.Gamma_r_eff, sigma_gr, "Gamma_r+eff");
        model.add_lindblad((p.N_m + 1.0) * p.gamma_m + rates.gamma_m_eff, b, "gamma_m-+eff");
        model.add_lindblad(p.N_m * p.gamma_m, b.adjoint(), "gamma_m+");
    }
    return model;
}

LindbladModel build_semiclassical(int n_atoms, double delta, double omega_int, double omega, double gamma_e) {
    if (n_atoms < 1) throw InvalidArgument("build_semiclassical: need at least one atom");
    if (gamma_e < 0) throw InvalidArgument("build_semiclassical: negative decay rate");
    const MicroscopicBasis atoms(n_atoms, true);
    const SpaceSpec space = atoms.space();

    const Operator s_ge = atoms.collective_op(AtomLevel::g, AtomLevel::e);
    const Operator s_er = atoms.collective_op(AtomLevel::e, AtomLevel::r);
    Operator h = delta * atoms.level_count(AtomLevel::e);
    h += omega_int * (s_ge + s_ge.adjoint());
    h += omega * (s_er + s_er.adjoint());

    LindbladModel model(space, h);
    for (int i = 0; i < n_atoms; ++i)
        model.add_lindblad(gamma_e, atoms.atom_op(i, AtomLevel::g, AtomLevel::e), "Gamma_e[" + std::to_string(i) + "]");
    return model;
}

LindbladModel build_long_distance(const LongDistanceParams& ld, const PhysicalParams& p, LongDistanceMode mode,
                                  long phonon_cutoff, double drive) {
    ld.validate();
    p.validate();
    const SpaceSpec full = jc_model_space(phonon_cutoff);
    const SpaceSpec tl = two_level_space("superatom");
    const Operator b = embed(full, 0, annihilation_op(fock_space(phonon_cutoff, "membrane")));
    const Operator sigma_gr = embed(full, 1, ketbra(tl, 0, 1));
    const Operator sigma_rr = embed(full, 1, ketbra(tl, 1, 1));

    const double g_bar_eff = ld.G_bar_eff(p.n_atoms);
    const double gamma_diff = ld.gamma_m_diff();

    if (mode == LongDistanceMode::positional) {
        if (drive != 0.0)
            throw InvalidArgument("build_long_distance: the coherent drive is defined for the resonant limit only");
        const double phase = ld.k_L_m * ld.z_bar;
        const double s = std::sin(phase);
        const double c = std::cos(phase);

        Operator h = -ld.Delta_at() * std::sin(2.0 * phase) * sigma_rr;
        h += g_bar_eff * c * (b.adjoint() * sigma_gr + sigma_gr.adjoint() * b);
        LindbladModel model(full, h);

        model.add_lindblad(gamma_diff / 4.0, b.adjoint(), "gamma_diff+");

        // 2 Delta_at sin^2 (2N sGR rho sRG - sRR rho - rho sRR), as printed.
        // The sandwich carries the factor 2N while the anticommutator does
        // not, so the block splits into a generalized dissipator plus a bare
        // anticommutator remainder; for N > 1 the trace grows at
        // 4 Delta_at sin^2 (N-1) <sigma_RR>.
        const double w = 2.0 * ld.Delta_at() * s * s;
        if (w > 0.0) {
            DissipatorTerm sandwich;
            sandwich.coeff = w * p.n_atoms;
            sandwich.left = sigma_gr;
            sandwich.right = sigma_gr.adjoint();
            sandwich.tag = "Delta_at.sin2";
            model.add_dissipator(sandwich);
            if (p.n_atoms > 1) {
                DampingTerm excess;
                excess.coeff = w * (p.n_atoms - 1.0);
                excess.op = sigma_rr;
                model.add_damping(excess);
            }
        }

        // Cascaded block (G_bar/sqrt(N)) sin (2 b rho sRG - sRG b rho - rho sRG b + h.c.).
        const double casc = g_bar_eff / std::sqrt(static_cast<double>(p.n_atoms)) * s;
        if (casc != 0.0) {
            DissipatorTerm cascade;
            cascade.coeff = casc;
            cascade.left = b;
            cascade.right = sigma_gr.adjoint();
            cascade.add_hc = true;
            cascade.tag = "cascaded";
            model.add_dissipator(cascade);
        }
        return model;
    }

    // Resonant limit k z << 1: maximal coupling, position dependence dropped.
    Operator h = g_bar_eff * (b.adjoint() * sigma_gr + sigma_gr.adjoint() * b);
    if (drive != 0.0) h += drive * (sigma_gr + sigma_gr.adjoint());
    LindbladModel model(full, h);
    model.add_lindblad(gamma_diff / 4.0, b, "gamma_diff");
    model.add_lindblad(0.5 * p.gamma_m * (p.N_m + 1.0), b, "gamma_m-");
    model.add_lindblad(0.5 * p.gamma_m * p.N_m, b.adjoint(), "gamma_m+");
    model.add_lindblad(0.5 * p.Gamma_r, sigma_gr, "Gamma_r");
    return model;
}

LindbladModel build_cooling(const PhysicalParams& p, const CoolingParams& c, int n, long phonon_cutoff,
                            bool use_exact_rates) {
    c.validate();
    LindbladModel model = build_effective_n(p, n, use_exact_rates, phonon_cutoff);
    if (!c.elimination_valid())
        model.add_warning("cooling elimination marginal: gamma_cl / Omega_d = " +
                          std::to_string(c.gamma_cl / c.Omega_d) + " below threshold " +
                          std::to_string(c.elimination_ratio_threshold));
    const SpaceSpec tl = two_level_space("superatom");
    const Operator sigma_gr = embed(model.space(), 1, ketbra(tl, 0, 1));
    // |vac> is identified with |G>; the atom-number loss N -> N-1 is not tracked.
    model.add_lindblad(c.gamma_cool_R(), sigma_gr, "gamma_cool");
    return model;
}

}  // namespace rydmech
