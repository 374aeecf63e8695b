#include "hetspec/params.hpp"

#include <cmath>

#include "hetspec/response.hpp"

namespace hetspec {

namespace {

constexpr double k_hbar = 1.054571817e-34;  // J s
constexpr double k_boltzmann = 1.380649e-23; // J/K

} // namespace

double ValidatedParams::n_eff() const {
    double drive = sys_.noise.alpha;
    if (sys_.noise.laser) drive += sys_.noise.laser->r * sys_.noise.laser->C_xx;
    return sys_.mech.n_th + coupling_.p * drive;
}

DerivedCoupling derive_coupling(const CavityParams& cavity, const MechParams& mech) {
    DerivedCoupling out;
    out.kappa_bar_ext = cavity.kappa_ext / cavity.kappa;
    out.C = 4.0 * cavity.G * cavity.G / (cavity.kappa * mech.gamma_m);
    const double chi2 = std::norm(chi_c(mech.omega_m, cavity.kappa, cavity.Delta));
    out.p = cavity.kappa * cavity.kappa * chi2 / 4.0 * out.C;
    return out;
}

ValidatedParams validate(SystemParams params, const ValidateOptions& opt) {
    if (!(params.mech.gamma_m > 0.0))
        throw NonPositiveRate("gamma_m = " + std::to_string(params.mech.gamma_m));
    if (!(params.cavity.kappa > 0.0))
        throw NonPositiveRate("kappa = " + std::to_string(params.cavity.kappa));
    if (!(params.cavity.kappa_ext > 0.0))
        throw NonPositiveRate("kappa_ext = " + std::to_string(params.cavity.kappa_ext));
    if (!(params.mech.omega_m > 0.0))
        throw NonPositiveRate("omega_m = " + std::to_string(params.mech.omega_m));
    if (!(params.detector.Z2 > 0.0))
        throw NonPositiveRate("Z2 = " + std::to_string(params.detector.Z2));

    // normalize to gamma_m-units
    const double g = params.mech.gamma_m;
    params.mech.omega_m /= g;
    params.cavity.kappa /= g;
    params.cavity.kappa_ext /= g;
    params.cavity.Delta /= g;
    params.cavity.G /= g;
    params.detector.omega_if /= g;
    params.mech.gamma_m = 1.0;

    if (params.detector.omega_if == 0.0)
        params.detector.omega_if = 8.0 * params.mech.omega_m;

    if (params.mech.n_th < 0.0)
        throw RegimeViolation("n_th", params.mech.n_th, 0.0);
    if (params.mech.beta < 0.0)
        throw RegimeViolation("beta", params.mech.beta, 0.0);
    if (params.noise.alpha < 0.0)
        throw RegimeViolation("alpha", params.noise.alpha, 0.0);
    if (params.cavity.kappa_ext > params.cavity.kappa)
        throw RegimeViolation("kappa_ext", params.cavity.kappa_ext, params.cavity.kappa);
    if (params.cavity.lambda != 0 && params.cavity.lambda != 1)
        throw RegimeViolation("lambda", params.cavity.lambda, 1.0);
    if (params.noise.laser) {
        const auto& l = *params.noise.laser;
        if (l.C_xx < 0.0 || l.C_yy < 0.0 || l.C_xy * l.C_xy > l.C_xx * l.C_yy)
            throw RegimeViolation("C_xy^2", l.C_xy * l.C_xy, l.C_xx * l.C_yy);
    }
    if (!opt.force) {
        if (params.mech.omega_m < opt.min_quality)
            throw RegimeViolation("omega_m/gamma_m", params.mech.omega_m, opt.min_quality);
        if (std::abs(params.cavity.G) > opt.max_coupling_ratio * params.cavity.kappa)
            throw RegimeViolation("|G|/kappa", std::abs(params.cavity.G) / params.cavity.kappa,
                                  opt.max_coupling_ratio);
        if (params.detector.omega_if < params.mech.omega_m + 5.0)
            throw RegimeViolation("omega_if", params.detector.omega_if,
                                  params.mech.omega_m + 5.0);
    }
    if (opt.require_zero_detuning && params.cavity.Delta != 0.0)
        throw DetuningNotZeroForClosedForm(params.cavity.Delta);

    ValidatedParams out;
    out.sys_ = params;
    out.coupling_ = derive_coupling(params.cavity, params.mech);
    return out;
}

double occupancy_from_temperature(double T, double omega_m, bool classical) {
    if (!(T > 0.0)) throw NonPositiveTemperature(T);
    if (!(omega_m > 0.0)) throw NonPositiveRate("omega_m = " + std::to_string(omega_m));
    const double x = k_hbar * omega_m / (k_boltzmann * T);
    return classical ? 1.0 / x : 1.0 / std::expm1(x);
}

std::complex<double> abar(double Omega, double kappa, double Delta) {
    return Omega / std::complex<double>(kappa / 2.0, -Delta);
}

} // namespace hetspec
