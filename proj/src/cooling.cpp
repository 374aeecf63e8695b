#include "hetspec/cooling.hpp"

#include <cmath>
#include <complex>

#include "hetspec/response.hpp"

namespace hetspec {

namespace {

// chi_c2 difference entering both the linewidth and the spring shift
std::complex<double> response_diff(const CoolingParams& cp, double omega_m) {
    return chi_c(omega_m, cp.kappa, cp.Delta_2) -
           std::conj(chi_c(-omega_m, cp.kappa, cp.Delta_2));
}

} // namespace

EffectiveDynamics effective_dynamics(const CoolingParams& cp) {
    if (!(cp.gamma_m0 > 0.0))
        throw NonPositiveRate("gamma_m0 = " + std::to_string(cp.gamma_m0));
    if (!(cp.omega_m0 > 0.0))
        throw NonPositiveRate("omega_m0 = " + std::to_string(cp.omega_m0));

    const double G2 = cp.G_2 * cp.G_2;
    double omega = cp.omega_m0;
    const double tol = 1e-10 * cp.omega_m0;
    int it = 0;
    for (; it < 100; ++it) {
        const double next = cp.omega_m0 + G2 * std::imag(response_diff(cp, omega));
        if (std::abs(next - omega) <= tol) {
            omega = next;
            break;
        }
        omega = next;
    }
    if (it == 100) throw NoConvergence("frequency shift fixed point");

    EffectiveDynamics out;
    out.omega_m = omega;
    out.gamma_m = cp.gamma_m0 + 2.0 * G2 * std::real(response_diff(cp, omega));
    out.iterations = it + 1;
    if (out.gamma_m <= 0.0) throw AntiDamping(out.gamma_m);
    return out;
}

CoolingReport cooled_occupancy(const CoolingParams& cp, CoolingModel model,
                               double p_probe) {
    const EffectiveDynamics dyn = effective_dynamics(cp);
    CoolingReport out;
    out.gamma_m_eff = dyn.gamma_m;
    out.omega_m_eff = dyn.omega_m;

    const double residual = cp.gamma_m0 * cp.n_th0 / dyn.gamma_m;
    const double rsb = std::pow(cp.kappa / (4.0 * dyn.omega_m), 2);
    if (model == CoolingModel::Classical) {
        const double G2 = cp.G_2 * cp.G_2;
        const double drive = cp.alpha * cp.kappa * G2 *
            (std::norm(chi_c(dyn.omega_m, cp.kappa, cp.Delta_2)) +
             std::norm(chi_c(-dyn.omega_m, cp.kappa, cp.Delta_2))) /
            (2.0 * dyn.gamma_m);
        out.n_th_eff = residual + drive;
    } else {
        out.n_th_eff = residual + rsb;
    }
    out.n_inf = residual / cp.alpha + rsb + p_probe;
    out.limit_ok = out.n_th_eff > cp.alpha / 2.0;
    return out;
}

double classical_occupancy_strong_cooling(const CoolingParams& cp,
                                          const EffectiveDynamics& dyn) {
    // gamma_m >> gamma_m0 limit: the drive term alone, with the linewidth
    // dominated by the cooling-beam damping
    const double G2 = cp.G_2 * cp.G_2;
    const double chi_p = std::norm(chi_c(dyn.omega_m, cp.kappa, cp.Delta_2));
    const double chi_n = std::norm(chi_c(-dyn.omega_m, cp.kappa, cp.Delta_2));
    const double gamma_opt = 2.0 * G2 * std::real(response_diff(cp, dyn.omega_m));
    return cp.alpha * cp.kappa * G2 * (chi_p + chi_n) / (2.0 * gamma_opt);
}

} // namespace hetspec
