#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "hetspec/cooling.hpp"
#include "hetspec/heterodyne.hpp"
#include "hetspec/montecarlo.hpp"
#include "io.hpp"

namespace hetspec::cli {

namespace {

namespace fs = std::filesystem;

std::string combo_name(const SystemParams& p) {
    std::string name = p.noise.kind == FieldKind::QuantumVacuum ? "quantum"
                                                                : "classical";
    name += p.detector.model == DetectorModel::SCL ? "_scl" : "_qua";
    return name;
}

ValidatedParams validated(const RunConfig& cfg) {
    ValidateOptions opt;
    opt.force = cfg.force;
    return validate(cfg.params, opt);
}

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

bool wants(const RunConfig& cfg, const std::string& format) {
    for (const auto& f : cfg.formats)
        if (f == format) return true;
    return false;
}

std::vector<double> sideband_grid(const ValidatedParams& vp, const GridConfig& g) {
    std::vector<double> grid(g.points);
    const double lo = vp.mech().omega_m - g.margin;
    const double hi = vp.mech().omega_m + g.margin;
    for (std::size_t k = 0; k < g.points; ++k)
        grid[k] = lo + (hi - lo) * static_cast<double>(k) /
                       static_cast<double>(g.points - 1);
    return grid;
}

} // namespace

void cmd_spectrum(const RunConfig& cfg) {
    const ValidatedParams vp = validated(cfg);
    const fs::path dir = prepare_out_dir(cfg);
    const SidebandSpectra s = sidebands(vp, sideband_grid(vp, cfg.grids));

    CsvTable table;
    table.metadata = {
        {"command", "spectrum"},
        {"scenario", cfg.scenario},
        {"combo", combo_name(cfg.params)},
        {"p", std::to_string(vp.coupling().p)},
        {"kappa_bar_ext", std::to_string(vp.coupling().kappa_bar_ext)},
        {"n_eff", std::to_string(vp.n_eff())},
        {"floor", std::to_string(s.floor)},
    };
    table.columns = {"omega_tilde", "red_S_o", "red_S_om", "red_S_m", "red_S_total",
                     "blue_S_o", "blue_S_om", "blue_S_m", "blue_S_total"};
    for (std::size_t k = 0; k < s.red.grid.size(); ++k)
        table.rows.push_back({s.red.grid[k], s.red.S_o[k], s.red.S_om[k],
                              s.red.S_m[k], s.red.S_total[k], s.blue.S_o[k],
                              s.blue.S_om[k], s.blue.S_m[k], s.blue.S_total[k]});
    const std::string stem = "spectrum_" + combo_name(cfg.params);
    write_csv((dir / (stem + ".csv")).string(), table);

    if (wants(cfg, "svg")) {
        write_svg_plot((dir / (stem + "_components.svg")).string(),
                       "Red sideband components (" + combo_name(cfg.params) + ")",
                       "omega_tilde [gamma_m]", "S [|Z|^2]",
                       {{"S_o", "#777777", s.red.grid, s.red.S_o},
                        {"S_om", "#2a9d4e", s.red.grid, s.red.S_om},
                        {"S_m", "#d1495b", s.red.grid, s.red.S_m},
                        {"S_total", "#1f6fb2", s.red.grid, s.red.S_total}});
        write_svg_plot((dir / (stem + "_sidebands.svg")).string(),
                       "Sideband spectra (" + combo_name(cfg.params) + ")",
                       "omega_tilde [gamma_m]", "S [|Z|^2]",
                       {{"red", "#d1495b", s.red.grid, s.red.S_total},
                        {"blue", "#1f6fb2", s.blue.grid, s.blue.S_total}});
    }
}

void cmd_simulate(const RunConfig& cfg) {
    const ValidatedParams vp = validated(cfg);
    const fs::path dir = prepare_out_dir(cfg);
    McOptions mc = cfg.mc;
    mc.window_halfwidth = cfg.grids.window_halfwidth;
    const McRun run = run_heterodyne_mc(vp, mc);

    {
        CsvTable table;
        table.metadata = {{"command", "simulate"},
                          {"scenario", cfg.scenario},
                          {"seed", std::to_string(run.seed)},
                          {"segments", std::to_string(run.segments)},
                          {"dt", std::to_string(run.dt)},
                          {"T_s", std::to_string(run.T_s)}};
        table.columns = {"omega", "psd_mean", "psd_stderr"};
        for (std::size_t k = 0; k < run.psd.grid.size(); ++k)
            table.rows.push_back({run.psd.grid[k], run.psd.mean[k],
                                  run.psd.stderr_[k]});
        write_csv((dir / "psd.csv").string(), table);
    }
    {
        CsvTable table;
        table.metadata = {{"command", "simulate"},
                          {"scenario", cfg.scenario},
                          {"omega_if", std::to_string(vp.detector().omega_if)}};
        table.columns = {"omega_tilde_red", "S_rr", "se_rr",
                         "omega_tilde_blue", "S_bb", "se_bb"};
        const std::size_t n = std::min(run.sidebands.grid_r.size(),
                                       run.sidebands.grid_b.size());
        for (std::size_t k = 0; k < n; ++k)
            table.rows.push_back({run.sidebands.grid_r[k], run.sidebands.S_rr[k],
                                  run.sidebands.se_r[k], run.sidebands.grid_b[k],
                                  run.sidebands.S_bb[k], run.sidebands.se_b[k]});
        write_csv((dir / "sidebands.csv").string(), table);
    }
    {
        nlohmann::json rep;
        rep["fit_ok"] = run.fit_ok;
        rep["floor"] = run.fit.floor;
        rep["h_r"] = run.fit.h_r;
        rep["h_b"] = run.fit.h_b;
        rep["h_r_err"] = run.fit.h_r_err;
        rep["h_b_err"] = run.fit.h_b_err;
        rep["gamma_fit"] = run.fit.gamma_fit;
        rep["omega_m_fit"] = run.fit.omega_m_fit;
        rep["ratio_method_n"] = run.fit.ratio_method_n;
        rep["floor_method_n"] = run.fit.floor_method_n;
        rep["delta_ratio"] = run.fit.delta_ratio;
        rep["squashing"] = run.fit.squashing;
        rep["var_x"] = run.var_x;
        rep["n_eff_mc"] = run.n_eff_mc;
        std::ofstream out(dir / "thermometry.json");
        out << rep.dump(2) << "\n";
    }
    {
        std::ofstream out(dir / "manifest.json");
        out << manifest_json(cfg);
    }
    if (wants(cfg, "svg")) {
        const std::size_t n = std::min(run.sidebands.grid_r.size(),
                                       run.sidebands.grid_b.size());
        std::vector<double> gr(run.sidebands.grid_r.begin(),
                               run.sidebands.grid_r.begin() + n);
        std::vector<double> yr(run.sidebands.S_rr.begin(),
                               run.sidebands.S_rr.begin() + n);
        std::vector<double> yb(run.sidebands.S_bb.begin(),
                               run.sidebands.S_bb.begin() + n);
        write_svg_plot((dir / "sidebands.svg").string(),
                       "Monte Carlo sidebands (" + cfg.scenario + ")",
                       "omega_tilde [gamma_m]", "S [|Z|^2]",
                       {{"red", "#d1495b", gr, yr}, {"blue", "#1f6fb2", gr, yb}});
    }
}

void cmd_cooling(const RunConfig& cfg) {
    const fs::path dir = prepare_out_dir(cfg);
    const CoolingSweep& sw = cfg.sweep;

    CsvTable table;
    table.columns = {"Delta_2", "G_2", "gamma_ratio", "omega_m_eff",
                     "n_classical", "n_quantum", "n_inf", "limit_ok"};
    double min_classical = std::numeric_limits<double>::max();
    double min_quantum = min_classical;
    double min_n_inf = min_classical;
    for (std::size_t i = 0; i < sw.delta_points; ++i) {
        const double frac = sw.delta_points > 1
            ? static_cast<double>(i) / static_cast<double>(sw.delta_points - 1)
            : 0.0;
        CoolingParams cp = cfg.cooling;
        cp.Delta_2 = (sw.delta_min + (sw.delta_max - sw.delta_min) * frac) * cp.kappa;
        const std::complex<double> diff =
            chi_c(cp.omega_m0, cp.kappa, cp.Delta_2) -
            std::conj(chi_c(-cp.omega_m0, cp.kappa, cp.Delta_2));
        if (diff.real() <= 0.0) continue;  // heating side, no damping target
        for (std::size_t j = 0; j < sw.ratio_points; ++j) {
            const double t = sw.ratio_points > 1
                ? static_cast<double>(j) / static_cast<double>(sw.ratio_points - 1)
                : 0.0;
            const double ratio =
                sw.ratio_min * std::pow(sw.ratio_max / sw.ratio_min, t);
            cp.G_2 = std::sqrt((ratio - 1.0) * cp.gamma_m0 / (2.0 * diff.real()));
            try {
                const CoolingReport cl =
                    cooled_occupancy(cp, CoolingModel::Classical, cfg.cooling_p_probe);
                const CoolingReport qu =
                    cooled_occupancy(cp, CoolingModel::Quantum, cfg.cooling_p_probe);
                min_classical = std::min(min_classical, cl.n_th_eff);
                min_quantum = std::min(min_quantum, qu.n_th_eff);
                min_n_inf = std::min(min_n_inf, cl.n_inf);
                table.rows.push_back({cp.Delta_2, cp.G_2,
                                      cl.gamma_m_eff / cp.gamma_m0, cl.omega_m_eff,
                                      cl.n_th_eff, qu.n_th_eff, cl.n_inf,
                                      cl.limit_ok ? 1.0 : 0.0});
            } catch (const Error&) {
                // outside the self-consistent regime; skip the grid point
            }
        }
    }
    const bool floor_ok = min_classical > cfg.cooling.alpha / 2.0;
    table.metadata = {{"command", "cooling"},
                      {"scenario", cfg.scenario},
                      {"min_n_classical", std::to_string(min_classical)},
                      {"min_n_quantum", std::to_string(min_quantum)},
                      {"min_n_inf", std::to_string(min_n_inf)},
                      {"classical_floor", std::to_string(cfg.cooling.alpha / 2.0)},
                      {"classical_floor_ok", floor_ok ? "1" : "0"}};
    write_csv((dir / "cooling_sweep.csv").string(), table);

    nlohmann::json summary;
    summary["min_n_classical"] = min_classical;
    summary["min_n_quantum"] = min_quantum;
    summary["min_n_inf"] = min_n_inf;
    summary["classical_floor"] = cfg.cooling.alpha / 2.0;
    summary["classical_floor_ok"] = floor_ok;
    std::ofstream out(dir / "cooling_summary.json");
    out << summary.dump(2) << "\n";
}

void cmd_bluecurve(const RunConfig& cfg) {
    const ValidatedParams vp = validated(cfg);
    const fs::path dir = prepare_out_dir(cfg);
    const double alpha = vp.noise().alpha;
    const double p = vp.coupling().p;

    std::vector<double> Q(cfg.grids.Q_points);
    for (std::size_t k = 0; k < Q.size(); ++k) {
        const double t = Q.size() > 1
            ? static_cast<double>(k) / static_cast<double>(Q.size() - 1)
            : 0.0;
        Q[k] = cfg.grids.Q_min * std::pow(cfg.grids.Q_max / cfg.grids.Q_min, t);
    }
    const BlueHeightCurves curves = blue_height_vs_Q(std::move(Q), alpha, p);
    const double crossing = classical_blue_zero_crossing(alpha, p);

    CsvTable table;
    table.metadata = {{"command", "bluecurve"},
                      {"scenario", cfg.scenario},
                      {"alpha", std::to_string(alpha)},
                      {"p", std::to_string(p)},
                      {"units", "blue height in 4 p kappa_bar_ext |Z|^2"},
                      {"classical_zero_crossing", std::to_string(crossing)}};
    table.columns = {"Q", "n_quantum", "n_classical"};
    for (std::size_t k = 0; k < curves.Q.size(); ++k)
        table.rows.push_back({curves.Q[k], curves.n_quantum[k],
                              curves.n_classical[k]});
    write_csv((dir / "bluecurve.csv").string(), table);

    if (wants(cfg, "svg")) {
        write_svg_plot((dir / "bluecurve.svg").string(),
                       "Blue-sideband height vs Q", "Q = hbar omega_m / k_B T",
                       "height [4 p kext |Z|^2]",
                       {{"quantum", "#d1495b", curves.Q, curves.n_quantum},
                        {"classical", "#1f6fb2", curves.Q, curves.n_classical}});
    }
}

} // namespace hetspec::cli
