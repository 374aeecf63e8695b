// Python bindings for the hetspec core: parameter validation, closed-form
// spectra, thermometry fits, cooling limits and the Monte Carlo oracle.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hetspec/cooling.hpp"
#include "hetspec/fit.hpp"
#include "hetspec/heterodyne.hpp"
#include "hetspec/montecarlo.hpp"
#include "hetspec/params.hpp"
#include "hetspec/psd.hpp"
#include "hetspec/response.hpp"

namespace py = pybind11;
using namespace hetspec;

PYBIND11_MODULE(_hetspec, m) {
    m.doc() = "heterodyne optomechanics spectra, thermometry and cooling";

    py::register_exception<ConfigError>(m, "ConfigError");
    static py::exception<Error> exc(m, "HetspecError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError&) {
            throw;  // handled by the registration above
        } catch (const Error& e) {
            exc(e.what());
        }
    });

    py::class_<MechParams>(m, "MechParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &MechParams::omega_m)
        .def_readwrite("gamma_m", &MechParams::gamma_m)
        .def_readwrite("n_th", &MechParams::n_th)
        .def_readwrite("beta", &MechParams::beta);

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<>())
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("kappa_ext", &CavityParams::kappa_ext)
        .def_readwrite("Delta", &CavityParams::Delta)
        .def_readwrite("G", &CavityParams::G)
        .def_readwrite("lambda_", &CavityParams::lambda);

    py::class_<LaserNoise>(m, "LaserNoise")
        .def(py::init<>())
        .def_readwrite("C_xx", &LaserNoise::C_xx)
        .def_readwrite("C_xy", &LaserNoise::C_xy)
        .def_readwrite("C_yy", &LaserNoise::C_yy)
        .def_readwrite("r", &LaserNoise::r);

    py::enum_<FieldKind>(m, "FieldKind")
        .value("ClassicalIntrinsic", FieldKind::ClassicalIntrinsic)
        .value("QuantumVacuum", FieldKind::QuantumVacuum);

    py::class_<FieldNoise>(m, "FieldNoise")
        .def(py::init<>())
        .def_readwrite("kind", &FieldNoise::kind)
        .def_readwrite("alpha", &FieldNoise::alpha)
        .def_readwrite("laser", &FieldNoise::laser);

    py::enum_<DetectorModel>(m, "DetectorModel")
        .value("SCL", DetectorModel::SCL)
        .value("QUA", DetectorModel::QUA);

    py::class_<DetectorParams>(m, "DetectorParams")
        .def(py::init<>())
        .def_readwrite("model", &DetectorParams::model)
        .def_readwrite("Z2", &DetectorParams::Z2)
        .def_readwrite("omega_if", &DetectorParams::omega_if)
        .def_readwrite("i0_ratio", &DetectorParams::i0_ratio);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("mech", &SystemParams::mech)
        .def_readwrite("cavity", &SystemParams::cavity)
        .def_readwrite("noise", &SystemParams::noise)
        .def_readwrite("detector", &SystemParams::detector);

    py::class_<DerivedCoupling>(m, "DerivedCoupling")
        .def_readonly("p", &DerivedCoupling::p)
        .def_readonly("C", &DerivedCoupling::C)
        .def_readonly("kappa_bar_ext", &DerivedCoupling::kappa_bar_ext);

    py::class_<ValidateOptions>(m, "ValidateOptions")
        .def(py::init<>())
        .def_readwrite("force", &ValidateOptions::force)
        .def_readwrite("min_quality", &ValidateOptions::min_quality)
        .def_readwrite("max_coupling_ratio", &ValidateOptions::max_coupling_ratio)
        .def_readwrite("require_zero_detuning", &ValidateOptions::require_zero_detuning);

    py::class_<ValidatedParams>(m, "ValidatedParams")
        .def_property_readonly("sys", &ValidatedParams::sys)
        .def_property_readonly("coupling", &ValidatedParams::coupling)
        .def("n_eff", &ValidatedParams::n_eff);

    m.def("validate", &validate, py::arg("params"),
          py::arg("options") = ValidateOptions{});
    m.def("derive_coupling", &derive_coupling, py::arg("cavity"), py::arg("mech"));
    m.def("occupancy_from_temperature", &occupancy_from_temperature,
          py::arg("T"), py::arg("omega_m"), py::arg("classical") = false);

    m.def("chi_m", &chi_m, py::arg("omega"), py::arg("omega_m"),
          py::arg("gamma_m") = 1.0);
    m.def("chi_c", &chi_c, py::arg("omega"), py::arg("kappa"),
          py::arg("Delta") = 0.0);
    m.def("lorentzian_L", &lorentzian_L, py::arg("omega_tilde"),
          py::arg("omega_m"), py::arg("gamma_m") = 1.0);
    m.def("symmetric_grid", &symmetric_grid, py::arg("omega_m"),
          py::arg("gamma_m") = 1.0, py::arg("points") = 4001,
          py::arg("margin") = 25.0);

    py::class_<SxxCurve>(m, "SxxCurve")
        .def_readonly("grid", &SxxCurve::grid)
        .def_readonly("values", &SxxCurve::values)
        .def_readonly("omega_m", &SxxCurve::omega_m)
        .def_readonly("gamma_m", &SxxCurve::gamma_m)
        .def_readonly("n_eff", &SxxCurve::n_eff)
        .def_readonly("beta", &SxxCurve::beta);

    m.def("sxx_thermal", &sxx_thermal, py::arg("grid"), py::arg("omega_m"),
          py::arg("n_th"), py::arg("beta"), py::arg("gamma_m") = 1.0);
    m.def("sxx_with_backaction", &sxx_with_backaction, py::arg("grid"),
          py::arg("params"));
    m.def("sxx_symmetrized", &sxx_symmetrized, py::arg("curve"));
    m.def("integrated_weight", &integrated_weight, py::arg("curve"));

    py::class_<SpectrumCurve>(m, "SpectrumCurve")
        .def_readonly("grid", &SpectrumCurve::grid)
        .def_readonly("S_o", &SpectrumCurve::S_o)
        .def_readonly("S_om", &SpectrumCurve::S_om)
        .def_readonly("S_m", &SpectrumCurve::S_m)
        .def_readonly("S_total", &SpectrumCurve::S_total);

    py::class_<SidebandSpectra>(m, "SidebandSpectra")
        .def_readonly("red", &SidebandSpectra::red)
        .def_readonly("blue", &SidebandSpectra::blue)
        .def_readonly("floor", &SidebandSpectra::floor);

    m.def("noise_floor", &noise_floor, py::arg("params"), py::arg("omega_tilde"));
    m.def("sidebands", &sidebands, py::arg("params"), py::arg("grid"));
    m.def("asymmetry", &asymmetry, py::arg("spectra"));
    m.def("asymmetry_peak_ratio", &asymmetry_peak_ratio, py::arg("params"));

    py::class_<ThermometryReport>(m, "ThermometryReport")
        .def_readonly("floor", &ThermometryReport::floor)
        .def_readonly("h_r", &ThermometryReport::h_r)
        .def_readonly("h_b", &ThermometryReport::h_b)
        .def_readonly("h_r_err", &ThermometryReport::h_r_err)
        .def_readonly("h_b_err", &ThermometryReport::h_b_err)
        .def_readonly("gamma_fit", &ThermometryReport::gamma_fit)
        .def_readonly("omega_m_fit", &ThermometryReport::omega_m_fit)
        .def_readonly("ratio_method_n", &ThermometryReport::ratio_method_n)
        .def_readonly("floor_method_n", &ThermometryReport::floor_method_n)
        .def_readonly("delta_ratio", &ThermometryReport::delta_ratio)
        .def_readonly("squashing", &ThermometryReport::squashing);

    m.def("inferred_occupancy", &inferred_occupancy, py::arg("fit"));
    m.def("classical_inferred_occupancy", &classical_inferred_occupancy,
          py::arg("n_th"), py::arg("alpha"), py::arg("p"));

    py::class_<BlueHeightCurves>(m, "BlueHeightCurves")
        .def_readonly("Q", &BlueHeightCurves::Q)
        .def_readonly("n_quantum", &BlueHeightCurves::n_quantum)
        .def_readonly("n_classical", &BlueHeightCurves::n_classical);

    m.def("blue_height_vs_Q", &blue_height_vs_Q, py::arg("Q_grid"),
          py::arg("alpha"), py::arg("p"));
    m.def("classical_blue_zero_crossing", &classical_blue_zero_crossing,
          py::arg("alpha"), py::arg("p"));
    m.def("detectability_bound", &detectability_bound, py::arg("alpha"),
          py::arg("p"), py::arg("omega_m"));

    py::class_<SidebandData>(m, "SidebandData")
        .def(py::init<>())
        .def_readwrite("grid_r", &SidebandData::grid_r)
        .def_readwrite("S_rr", &SidebandData::S_rr)
        .def_readwrite("se_r", &SidebandData::se_r)
        .def_readwrite("grid_b", &SidebandData::grid_b)
        .def_readwrite("S_bb", &SidebandData::S_bb)
        .def_readwrite("se_b", &SidebandData::se_b);

    py::class_<FitOptions>(m, "FitOptions")
        .def(py::init<>())
        .def_readwrite("max_iterations", &FitOptions::max_iterations)
        .def_readwrite("tolerance", &FitOptions::tolerance);

    m.def("fit_thermometry", &fit_thermometry, py::arg("data"),
          py::arg("options") = FitOptions{});

    py::class_<CoolingParams>(m, "CoolingParams")
        .def(py::init<>())
        .def_readwrite("Delta_2", &CoolingParams::Delta_2)
        .def_readwrite("G_2", &CoolingParams::G_2)
        .def_readwrite("kappa", &CoolingParams::kappa)
        .def_readwrite("gamma_m0", &CoolingParams::gamma_m0)
        .def_readwrite("omega_m0", &CoolingParams::omega_m0)
        .def_readwrite("n_th0", &CoolingParams::n_th0)
        .def_readwrite("alpha", &CoolingParams::alpha)
        .def_readwrite("beta", &CoolingParams::beta);

    py::class_<EffectiveDynamics>(m, "EffectiveDynamics")
        .def_readonly("gamma_m", &EffectiveDynamics::gamma_m)
        .def_readonly("omega_m", &EffectiveDynamics::omega_m)
        .def_readonly("iterations", &EffectiveDynamics::iterations);

    py::enum_<CoolingModel>(m, "CoolingModel")
        .value("Classical", CoolingModel::Classical)
        .value("Quantum", CoolingModel::Quantum);

    py::class_<CoolingReport>(m, "CoolingReport")
        .def_readonly("gamma_m_eff", &CoolingReport::gamma_m_eff)
        .def_readonly("omega_m_eff", &CoolingReport::omega_m_eff)
        .def_readonly("n_th_eff", &CoolingReport::n_th_eff)
        .def_readonly("n_inf", &CoolingReport::n_inf)
        .def_readonly("limit_ok", &CoolingReport::limit_ok);

    m.def("effective_dynamics", &effective_dynamics, py::arg("params"));
    m.def("cooled_occupancy", &cooled_occupancy, py::arg("params"),
          py::arg("model"), py::arg("p_probe") = 0.0);

    py::enum_<PsdWindow>(m, "PsdWindow")
        .value("Rectangular", PsdWindow::Rectangular)
        .value("Hann", PsdWindow::Hann);

    py::class_<PsdEstimate>(m, "PsdEstimate")
        .def_readonly("grid", &PsdEstimate::grid)
        .def_readonly("mean", &PsdEstimate::mean)
        .def_readonly("stderr", &PsdEstimate::stderr_)
        .def_readonly("segments", &PsdEstimate::segments)
        .def_readonly("dt", &PsdEstimate::dt);

    m.def("estimate_psd", &estimate_psd, py::arg("samples"), py::arg("dt"),
          py::arg("segments"), py::arg("window") = PsdWindow::Rectangular);
    m.def("parseval_residual", &parseval_residual, py::arg("psd"),
          py::arg("variance"));
    m.def("extract_sidebands", &extract_sidebands, py::arg("psd"),
          py::arg("omega_if"), py::arg("omega_m"), py::arg("halfwidth"));

    py::class_<McOptions>(m, "McOptions")
        .def(py::init<>())
        .def_readwrite("seed", &McOptions::seed)
        .def_readwrite("segments", &McOptions::segments)
        .def_readwrite("dt", &McOptions::dt)
        .def_readwrite("T_s", &McOptions::T_s)
        .def_readwrite("window_halfwidth", &McOptions::window_halfwidth)
        .def_readwrite("window", &McOptions::window)
        .def_readwrite("threads", &McOptions::threads);

    py::class_<McRun>(m, "McRun")
        .def_readonly("psd", &McRun::psd)
        .def_readonly("sidebands", &McRun::sidebands)
        .def_readonly("fit", &McRun::fit)
        .def_readonly("fit_ok", &McRun::fit_ok)
        .def_readonly("var_x", &McRun::var_x)
        .def_readonly("n_eff_mc", &McRun::n_eff_mc)
        .def_readonly("dt", &McRun::dt)
        .def_readonly("T_s", &McRun::T_s)
        .def_readonly("segments", &McRun::segments)
        .def_readonly("seed", &McRun::seed);

    m.def("run_heterodyne_mc", &run_heterodyne_mc, py::arg("params"),
          py::arg("options") = McOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("default_step", &default_step, py::arg("params"));
}
