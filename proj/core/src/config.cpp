#include "rydmech/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rydmech {

using nlohmann::json;

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::fig2_trajectory: return "fig2_trajectory";
        case ScenarioKind::fig4_state_prep: return "fig4_state_prep";
        case ScenarioKind::fig5_linewidth: return "fig5_linewidth";
        case ScenarioKind::strong_coupling_table: return "strong_coupling_table";
        case ScenarioKind::effective_vs_full: return "effective_vs_full";
        case ScenarioKind::cooling_sweep: return "cooling_sweep";
        case ScenarioKind::custom: return "custom";
    }
    return "custom";
}

ScenarioKind scenario_from_string(const std::string& s) {
    for (auto k : {ScenarioKind::fig2_trajectory, ScenarioKind::fig4_state_prep, ScenarioKind::fig5_linewidth,
                   ScenarioKind::strong_coupling_table, ScenarioKind::effective_vs_full, ScenarioKind::cooling_sweep,
                   ScenarioKind::custom})
        if (to_string(k) == s) return k;
    throw InvalidArgument("config: unknown scenario '" + s + "'");
}

std::vector<double> ScenarioConfig::time_grid() const {
    if (n_points < 2) throw InvalidArgument("config: time grid needs at least two points");
    if (t_max <= 0) throw InvalidArgument("config: t_max must be positive");
    std::vector<double> t(n_points);
    for (int i = 0; i < n_points; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return t;
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw InvalidArgument("config: unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw InvalidArgument(std::string("config: '") + key + "' must be a number");
    return obj[key].get<double>();
}

void parse_params(const json& obj, PhysicalParams& p, double scale) {
    static const std::set<std::string> allowed = {
        "omega_m", "omega_0", "omega_p", "omega_ge", "omega_gr", "omega_L", "omega_L_m",
        "g0", "g", "G", "Omega", "E_p", "Delta_c", "Delta_e", "Delta_p",
        "kappa", "Gamma_e", "Gamma_r", "gamma_m", "N_m", "n_atoms"};
    reject_unknown_keys(obj, allowed, "params");
    p.omega_m = scale * get_num(obj, "omega_m", 0.0);
    p.omega_0 = scale * get_num(obj, "omega_0", 0.0);
    p.omega_p = scale * get_num(obj, "omega_p", 0.0);
    p.omega_ge = scale * get_num(obj, "omega_ge", 0.0);
    p.omega_gr = scale * get_num(obj, "omega_gr", 0.0);
    p.omega_L = scale * get_num(obj, "omega_L", 0.0);
    p.omega_L_m = scale * get_num(obj, "omega_L_m", 0.0);
    p.g0 = scale * get_num(obj, "g0", 0.0);
    p.g = scale * get_num(obj, "g", 0.0);
    p.G = scale * get_num(obj, "G", 0.0);
    p.Omega = scale * get_num(obj, "Omega", 0.0);
    p.E_p = scale * get_num(obj, "E_p", 0.0);
    if (obj.contains("Delta_c")) p.Delta_c = scale * obj["Delta_c"].get<double>();
    if (obj.contains("Delta_e")) p.Delta_e = scale * obj["Delta_e"].get<double>();
    if (obj.contains("Delta_p")) p.Delta_p = scale * obj["Delta_p"].get<double>();
    p.kappa = scale * get_num(obj, "kappa", 0.0);
    p.Gamma_e = scale * get_num(obj, "Gamma_e", 0.0);
    p.Gamma_r = scale * get_num(obj, "Gamma_r", 0.0);
    p.gamma_m = scale * get_num(obj, "gamma_m", 0.0);
    p.N_m = get_num(obj, "N_m", 0.0);
    if (obj.contains("n_atoms")) {
        if (!obj["n_atoms"].is_number_integer()) throw InvalidArgument("config: 'n_atoms' must be an integer");
        p.n_atoms = obj["n_atoms"].get<int>();
    }
    p.validate();
}

void parse_long_distance(const json& obj, LongDistanceParams& ld, double scale) {
    static const std::set<std::string> allowed = {"g_m", "g_at", "k_L_m", "z_bar"};
    reject_unknown_keys(obj, allowed, "long_distance");
    ld.g_m = scale * get_num(obj, "g_m", 0.0);
    ld.g_at = scale * get_num(obj, "g_at", 0.0);
    // the product k_L_m * z_bar is a dimensionless phase; no unit scaling
    ld.k_L_m = get_num(obj, "k_L_m", 0.0);
    ld.z_bar = get_num(obj, "z_bar", 0.0);
    ld.validate();
}

void parse_cooling(const json& obj, CoolingParams& c, double scale) {
    static const std::set<std::string> allowed = {"Omega_d", "gamma_cl", "elimination_ratio_threshold"};
    reject_unknown_keys(obj, allowed, "cooling");
    c.Omega_d = scale * get_num(obj, "Omega_d", 0.0);
    c.gamma_cl = scale * get_num(obj, "gamma_cl", 1.0);
    c.elimination_ratio_threshold = get_num(obj, "elimination_ratio_threshold", 10.0);
    c.validate();
}

}  // namespace

ScenarioConfig parse_config_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) throw InvalidArgument("config: top level must be an object");

    static const std::set<std::string> allowed = {
        "scenario", "unit", "params", "long_distance", "cooling", "cutoffs", "time",
        "n_traj", "seed", "output_dir", "drive", "drive_relative", "custom_model",
        "custom_trajectories", "atom_sweep", "cooling_gamma_factors", "semiclassical_delta_factor"};
    reject_unknown_keys(root, allowed, "the top level");

    ScenarioConfig cfg;
    if (!root.contains("scenario")) throw InvalidArgument("config: missing 'scenario'");
    cfg.scenario = scenario_from_string(root["scenario"].get<std::string>());

    if (root.contains("unit")) cfg.unit = root["unit"].get<std::string>();
    cfg.two_pi = cfg.unit.rfind("2pi", 0) == 0;
    const double scale = cfg.two_pi ? 2.0 * M_PI : 1.0;

    if (root.contains("params")) parse_params(root["params"], cfg.params, scale);
    if (root.contains("long_distance")) {
        parse_long_distance(root["long_distance"], cfg.long_distance, scale);
        cfg.has_long_distance = true;
    }
    if (root.contains("cooling")) {
        parse_cooling(root["cooling"], cfg.cooling, scale);
        cfg.has_cooling = true;
    }
    if (root.contains("cutoffs")) {
        const json& c = root["cutoffs"];
        reject_unknown_keys(c, {"phonon", "cavity"}, "cutoffs");
        cfg.cutoffs.phonon = static_cast<long>(get_num(c, "phonon", 2));
        cfg.cutoffs.cavity = static_cast<long>(get_num(c, "cavity", 2));
        if (cfg.cutoffs.phonon < 1 || cfg.cutoffs.cavity < 1)
            throw InvalidArgument("config: cutoffs must be >= 1");
    }
    if (root.contains("time")) {
        const json& t = root["time"];
        reject_unknown_keys(t, {"t_max", "n_points"}, "time");
        cfg.t_max = get_num(t, "t_max", cfg.t_max);
        cfg.n_points = static_cast<int>(get_num(t, "n_points", cfg.n_points));
        if (cfg.t_max <= 0) throw InvalidArgument("config: t_max must be positive");
        if (cfg.n_points < 2) throw InvalidArgument("config: time grid needs at least two points");
    }
    if (root.contains("n_traj")) {
        cfg.n_traj = root["n_traj"].get<int>();
        if (cfg.n_traj < 1) throw InvalidArgument("config: n_traj must be >= 1");
    }
    if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("output_dir")) cfg.output_dir = root["output_dir"].get<std::string>();
    if (root.contains("drive")) cfg.drive = root["drive"].get<double>();
    if (root.contains("drive_relative")) cfg.drive_relative = root["drive_relative"].get<bool>();
    if (root.contains("custom_model")) cfg.custom_model = root["custom_model"].get<std::string>();
    if (root.contains("custom_trajectories")) cfg.custom_trajectories = root["custom_trajectories"].get<bool>();
    if (root.contains("atom_sweep")) {
        cfg.atom_sweep.clear();
        for (const auto& v : root["atom_sweep"]) cfg.atom_sweep.push_back(v.get<int>());
        if (cfg.atom_sweep.empty()) throw InvalidArgument("config: atom_sweep must not be empty");
    }
    if (root.contains("cooling_gamma_factors")) {
        cfg.cooling_gamma_factors.clear();
        for (const auto& v : root["cooling_gamma_factors"]) cfg.cooling_gamma_factors.push_back(v.get<double>());
        if (cfg.cooling_gamma_factors.empty())
            throw InvalidArgument("config: cooling_gamma_factors must not be empty");
    }
    if (root.contains("semiclassical_delta_factor"))
        cfg.semiclassical_delta_factor = root["semiclassical_delta_factor"].get<double>();
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_json(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json root;
    root["scenario"] = to_string(cfg.scenario);
    root["unit"] = cfg.unit;
    const double inv = cfg.two_pi ? 1.0 / (2.0 * M_PI) : 1.0;
    json p;
    const PhysicalParams& pp = cfg.params;
    p["omega_m"] = inv * pp.omega_m;
    p["omega_0"] = inv * pp.omega_0;
    p["omega_p"] = inv * pp.omega_p;
    p["omega_ge"] = inv * pp.omega_ge;
    p["omega_gr"] = inv * pp.omega_gr;
    p["omega_L"] = inv * pp.omega_L;
    p["omega_L_m"] = inv * pp.omega_L_m;
    p["g0"] = inv * pp.g0;
    p["g"] = inv * pp.g;
    p["G"] = inv * std::abs(pp.G);
    p["Omega"] = inv * pp.Omega;
    p["E_p"] = inv * pp.E_p;
    if (pp.Delta_c) p["Delta_c"] = inv * *pp.Delta_c;
    if (pp.Delta_e) p["Delta_e"] = inv * *pp.Delta_e;
    if (pp.Delta_p) p["Delta_p"] = inv * *pp.Delta_p;
    p["kappa"] = inv * pp.kappa;
    p["Gamma_e"] = inv * pp.Gamma_e;
    p["Gamma_r"] = inv * pp.Gamma_r;
    p["gamma_m"] = inv * pp.gamma_m;
    p["N_m"] = pp.N_m;
    p["n_atoms"] = pp.n_atoms;
    root["params"] = p;
    if (cfg.has_long_distance) {
        json ld;
        ld["g_m"] = inv * cfg.long_distance.g_m;
        ld["g_at"] = inv * cfg.long_distance.g_at;
        ld["k_L_m"] = cfg.long_distance.k_L_m;
        ld["z_bar"] = cfg.long_distance.z_bar;
        root["long_distance"] = ld;
    }
    if (cfg.has_cooling) {
        json c;
        c["Omega_d"] = inv * cfg.cooling.Omega_d;
        c["gamma_cl"] = inv * cfg.cooling.gamma_cl;
        c["elimination_ratio_threshold"] = cfg.cooling.elimination_ratio_threshold;
        root["cooling"] = c;
    }
    root["cutoffs"] = {{"phonon", cfg.cutoffs.phonon}, {"cavity", cfg.cutoffs.cavity}};
    root["time"] = {{"t_max", cfg.t_max}, {"n_points", cfg.n_points}};
    root["n_traj"] = cfg.n_traj;
    root["seed"] = cfg.seed;
    root["output_dir"] = cfg.output_dir;
    root["drive"] = cfg.drive;
    root["drive_relative"] = cfg.drive_relative;
    root["custom_model"] = cfg.custom_model;
    root["custom_trajectories"] = cfg.custom_trajectories;
    root["atom_sweep"] = cfg.atom_sweep;
    root["cooling_gamma_factors"] = cfg.cooling_gamma_factors;
    root["semiclassical_delta_factor"] = cfg.semiclassical_delta_factor;
    return root.dump(2);
}

}  // namespace rydmech
