#include "config.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace hetspec::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "config root",
               {"units", "params", "noise", "detector", "scenario", "grids",
                "montecarlo", "cooling", "outputs"});

    RunConfig cfg;
    const std::string units = get_or<std::string>(doc, "units", "gamma_m");
    if (units != "gamma_m" && units != "si")
        throw ConfigError("units must be 'gamma_m' or 'si'");

    if (!doc.contains("params")) throw ConfigError("missing 'params' section");
    const json& p = doc.at("params");
    check_keys(p, "params",
               {"gamma_m", "omega_m", "kappa", "kappa_ext", "Delta", "G", "lambda",
                "n_th", "beta", "temperature"});
    cfg.params.mech.gamma_m = get_or(p, "gamma_m", 1.0);
    cfg.params.mech.omega_m = get_or(p, "omega_m", 50.0);
    cfg.params.cavity.kappa = get_or(p, "kappa", 500.0);
    cfg.params.cavity.kappa_ext = get_or(p, "kappa_ext", 400.0);
    cfg.params.cavity.Delta = get_or(p, "Delta", 0.0);
    cfg.params.cavity.G = get_or(p, "G", 0.0);
    cfg.params.cavity.lambda = get_or(p, "lambda", 0);
    cfg.params.mech.n_th = get_or(p, "n_th", 0.0);
    cfg.params.mech.beta = get_or(p, "beta", 1.0);

    if (doc.contains("noise")) {
        const json& n = doc.at("noise");
        check_keys(n, "noise", {"field", "alpha", "laser"});
        const std::string field = get_or<std::string>(n, "field", "quantum");
        if (field == "quantum") {
            cfg.params.noise.kind = FieldKind::QuantumVacuum;
        } else if (field == "classical") {
            cfg.params.noise.kind = FieldKind::ClassicalIntrinsic;
        } else {
            throw ConfigError("noise.field must be 'quantum' or 'classical'");
        }
        cfg.params.noise.alpha = get_or(n, "alpha", 1.0);
        if (n.contains("laser")) {
            const json& l = n.at("laser");
            check_keys(l, "noise.laser", {"C_xx", "C_xy", "C_yy", "r"});
            LaserNoise laser;
            laser.C_xx = get_or(l, "C_xx", 0.0);
            laser.C_xy = get_or(l, "C_xy", 0.0);
            laser.C_yy = get_or(l, "C_yy", 0.0);
            laser.r = get_or(l, "r", 0.0);
            cfg.params.noise.laser = laser;
        }
    }
    if (!doc.contains("detector")) throw ConfigError("missing 'detector' section");
    const json& d = doc.at("detector");
    check_keys(d, "detector", {"model", "Z2", "omega_if", "i0_ratio"});
    const std::string model = get_or<std::string>(d, "model", "scl");
    if (model == "scl") {
        cfg.params.detector.model = DetectorModel::SCL;
    } else if (model == "qua") {
        cfg.params.detector.model = DetectorModel::QUA;
    } else {
        throw ConfigError("detector.model must be 'scl' or 'qua'");
    }
    cfg.params.detector.Z2 = get_or(d, "Z2", 1.0);
    cfg.params.detector.omega_if = get_or(d, "omega_if", 0.0);
    cfg.params.detector.i0_ratio = get_or(d, "i0_ratio", 1.0);

    if (units == "si") {
        // temperature is only meaningful with SI rates (needs omega_m in rad/s)
        if (p.contains("temperature")) {
            const double T = p.at("temperature").get<double>();
            cfg.params.mech.n_th = occupancy_from_temperature(
                T, cfg.params.mech.omega_m,
                cfg.params.noise.kind == FieldKind::ClassicalIntrinsic);
        }
    } else if (p.contains("temperature")) {
        throw ConfigError("params.temperature requires units = 'si'");
    }

    if (doc.contains("scenario")) {
        const json& s = doc.at("scenario");
        check_keys(s, "scenario", {"name", "force"});
        cfg.scenario = get_or<std::string>(s, "name", "default");
        cfg.force = get_or(s, "force", false);
    }

    if (doc.contains("grids")) {
        const json& g = doc.at("grids");
        check_keys(g, "grids",
                   {"points", "margin", "window_halfwidth", "Q_min", "Q_max",
                    "Q_points"});
        cfg.grids.points = get_or<std::size_t>(g, "points", cfg.grids.points);
        cfg.grids.margin = get_or(g, "margin", cfg.grids.margin);
        cfg.grids.window_halfwidth =
            get_or(g, "window_halfwidth", cfg.grids.window_halfwidth);
        cfg.grids.Q_min = get_or(g, "Q_min", cfg.grids.Q_min);
        cfg.grids.Q_max = get_or(g, "Q_max", cfg.grids.Q_max);
        cfg.grids.Q_points = get_or<std::size_t>(g, "Q_points", cfg.grids.Q_points);
    }

    if (doc.contains("montecarlo")) {
        const json& m = doc.at("montecarlo");
        check_keys(m, "montecarlo",
                   {"seed", "segments", "dt", "T_s", "window", "threads"});
        if (m.contains("seed") && !m.at("seed").is_number_unsigned())
            throw ConfigError("montecarlo.seed must be an unsigned integer");
        cfg.mc.seed = get_or<std::uint64_t>(m, "seed", 1);
        cfg.mc.segments = get_or<std::size_t>(m, "segments", 64);
        cfg.mc.dt = get_or(m, "dt", 0.0);
        cfg.mc.T_s = get_or(m, "T_s", 100.0);
        cfg.mc.threads = get_or(m, "threads", 0);
        const std::string window = get_or<std::string>(m, "window", "rectangular");
        if (window == "rectangular") {
            cfg.mc.window = PsdWindow::Rectangular;
        } else if (window == "hann") {
            cfg.mc.window = PsdWindow::Hann;
        } else {
            throw ConfigError("montecarlo.window must be 'rectangular' or 'hann'");
        }
        cfg.mc.window_halfwidth = cfg.grids.window_halfwidth;
    }

    if (doc.contains("cooling")) {
        const json& c = doc.at("cooling");
        check_keys(c, "cooling",
                   {"Delta_2", "G_2", "kappa", "gamma_m0", "omega_m0", "n_th0",
                    "alpha", "beta", "p_probe", "sweep"});
        cfg.cooling.Delta_2 = get_or(c, "Delta_2", cfg.cooling.Delta_2);
        cfg.cooling.G_2 = get_or(c, "G_2", cfg.cooling.G_2);
        cfg.cooling.kappa = get_or(c, "kappa", cfg.cooling.kappa);
        cfg.cooling.gamma_m0 = get_or(c, "gamma_m0", cfg.cooling.gamma_m0);
        cfg.cooling.omega_m0 = get_or(c, "omega_m0", cfg.cooling.omega_m0);
        cfg.cooling.n_th0 = get_or(c, "n_th0", cfg.cooling.n_th0);
        cfg.cooling.alpha = get_or(c, "alpha", cfg.cooling.alpha);
        cfg.cooling.beta = get_or(c, "beta", cfg.cooling.beta);
        cfg.cooling_p_probe = get_or(c, "p_probe", 0.0);
        if (c.contains("sweep")) {
            const json& s = c.at("sweep");
            check_keys(s, "cooling.sweep",
                       {"delta_min", "delta_max", "delta_points", "ratio_min",
                        "ratio_max", "ratio_points"});
            cfg.sweep.delta_min = get_or(s, "delta_min", cfg.sweep.delta_min);
            cfg.sweep.delta_max = get_or(s, "delta_max", cfg.sweep.delta_max);
            cfg.sweep.delta_points =
                get_or<std::size_t>(s, "delta_points", cfg.sweep.delta_points);
            cfg.sweep.ratio_min = get_or(s, "ratio_min", cfg.sweep.ratio_min);
            cfg.sweep.ratio_max = get_or(s, "ratio_max", cfg.sweep.ratio_max);
            cfg.sweep.ratio_points =
                get_or<std::size_t>(s, "ratio_points", cfg.sweep.ratio_points);
        }
    }

    if (doc.contains("outputs")) {
        const json& o = doc.at("outputs");
        check_keys(o, "outputs", {"directory", "formats"});
        cfg.out_dir = get_or<std::string>(o, "directory", cfg.out_dir);
        cfg.formats = get_or<std::vector<std::string>>(o, "formats", cfg.formats);
        for (const auto& f : cfg.formats)
            if (f != "csv" && f != "svg")
                throw ConfigError("unknown output format '" + f + "'");
    }

    if (units == "si") {
        const double g = cfg.params.mech.gamma_m;
        if (!(g > 0.0)) throw ConfigError("gamma_m must be > 0");
        // keep params in natural units; validate() performs the same division,
        // but mc step/duration and cooling rates need explicit conversion
        cfg.mc.dt *= g;
        cfg.mc.T_s *= g;
        cfg.cooling.Delta_2 /= g;
        cfg.cooling.G_2 /= g;
        cfg.cooling.kappa /= g;
        cfg.cooling.gamma_m0 /= g;
        cfg.cooling.omega_m0 /= g;
    }
    return cfg;
}

std::string manifest_json(const RunConfig& cfg) {
    const double g = cfg.params.mech.gamma_m;  // 1 unless the input was SI
    json doc;
    doc["units"] = "gamma_m";
    json p;
    p["gamma_m"] = 1.0;
    p["omega_m"] = cfg.params.mech.omega_m / g;
    p["kappa"] = cfg.params.cavity.kappa / g;
    p["kappa_ext"] = cfg.params.cavity.kappa_ext / g;
    p["Delta"] = cfg.params.cavity.Delta / g;
    p["G"] = cfg.params.cavity.G / g;
    p["lambda"] = cfg.params.cavity.lambda;
    p["n_th"] = cfg.params.mech.n_th;
    p["beta"] = cfg.params.mech.beta;
    doc["params"] = p;
    json n;
    n["field"] = cfg.params.noise.kind == FieldKind::QuantumVacuum ? "quantum"
                                                                   : "classical";
    n["alpha"] = cfg.params.noise.alpha;
    if (cfg.params.noise.laser) {
        json l;
        l["C_xx"] = cfg.params.noise.laser->C_xx;
        l["C_xy"] = cfg.params.noise.laser->C_xy;
        l["C_yy"] = cfg.params.noise.laser->C_yy;
        l["r"] = cfg.params.noise.laser->r;
        n["laser"] = l;
    }
    doc["noise"] = n;
    json d;
    d["model"] = cfg.params.detector.model == DetectorModel::SCL ? "scl" : "qua";
    d["Z2"] = cfg.params.detector.Z2;
    d["omega_if"] = cfg.params.detector.omega_if / g;
    d["i0_ratio"] = cfg.params.detector.i0_ratio;
    doc["detector"] = d;
    doc["scenario"] = {{"name", cfg.scenario}, {"force", cfg.force}};
    doc["grids"] = {{"points", cfg.grids.points},
                    {"margin", cfg.grids.margin},
                    {"window_halfwidth", cfg.grids.window_halfwidth},
                    {"Q_min", cfg.grids.Q_min},
                    {"Q_max", cfg.grids.Q_max},
                    {"Q_points", cfg.grids.Q_points}};
    doc["montecarlo"] = {{"seed", cfg.mc.seed},
                         {"segments", cfg.mc.segments},
                         {"dt", cfg.mc.dt},
                         {"T_s", cfg.mc.T_s},
                         {"window", cfg.mc.window == PsdWindow::Hann ? "hann"
                                                                    : "rectangular"},
                         {"threads", cfg.mc.threads}};
    doc["cooling"] = {{"Delta_2", cfg.cooling.Delta_2},
                      {"G_2", cfg.cooling.G_2},
                      {"kappa", cfg.cooling.kappa},
                      {"gamma_m0", cfg.cooling.gamma_m0},
                      {"omega_m0", cfg.cooling.omega_m0},
                      {"n_th0", cfg.cooling.n_th0},
                      {"alpha", cfg.cooling.alpha},
                      {"beta", cfg.cooling.beta},
                      {"p_probe", cfg.cooling_p_probe},
                      {"sweep", {{"delta_min", cfg.sweep.delta_min},
                                 {"delta_max", cfg.sweep.delta_max},
                                 {"delta_points", cfg.sweep.delta_points},
                                 {"ratio_min", cfg.sweep.ratio_min},
                                 {"ratio_max", cfg.sweep.ratio_max},
                                 {"ratio_points", cfg.sweep.ratio_points}}}};
    doc["outputs"] = {{"directory", cfg.out_dir}, {"formats", cfg.formats}};
    return doc.dump(2) + "\n";
}

} // namespace hetspec::cli
