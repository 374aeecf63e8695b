#include "hetspec/response.hpp"

#include <cmath>

namespace hetspec {

std::vector<double> symmetric_grid(double omega_m, double gamma_m,
                                   std::size_t points, double margin) {
    if (points < 3 || points % 2 == 0) points |= 1;  // odd count keeps 0 on the grid
    const double span = omega_m + margin * gamma_m;
    std::vector<double> grid(points);
    const std::size_t half = points / 2;
    for (std::size_t k = 0; k < points; ++k) {
        // symmetric by construction: grid[i] = -grid[n-1-i] exactly
        grid[k] = span * (static_cast<double>(k) - static_cast<double>(half)) /
                  static_cast<double>(half);
    }
    return grid;
}

SxxCurve sxx_thermal(std::vector<double> grid, double omega_m, double n_th,
                     double beta, double gamma_m) {
    SxxCurve out;
    out.grid = std::move(grid);
    out.values.resize(out.grid.size());
    out.variant = SxxVariant::Thermal;
    out.omega_m = omega_m;
    out.gamma_m = gamma_m;
    out.n_eff = n_th;
    out.beta = beta;
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        const double w = out.grid[k];
        out.values[k] = gamma_m * ((n_th + beta) * std::norm(chi_m(w, omega_m, gamma_m)) +
                        n_th * std::norm(chi_m(-w, omega_m, gamma_m)));
    }
    return out;
}

SxxCurve sxx_with_backaction(std::vector<double> grid, const ValidatedParams& vp) {
    SxxCurve out = sxx_thermal(std::move(grid), vp.mech().omega_m, vp.n_eff(),
                               vp.mech().beta, vp.mech().gamma_m);
    out.variant = SxxVariant::WithBackaction;
    return out;
}

SxxCurve sxx_symmetrized(const SxxCurve& curve) {
    const std::size_t n = curve.grid.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double mirror = curve.grid[n - 1 - k];
        if (std::abs(curve.grid[k] + mirror) >
            1e-12 * (1.0 + std::abs(curve.grid[k])))
            throw AsymmetricGrid("grid point " + std::to_string(curve.grid[k]) +
                                 " has no mirror at " + std::to_string(-mirror));
    }
    SxxCurve out = curve;
    out.variant = SxxVariant::Symmetrized;
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = 0.5 * (curve.values[k] + curve.values[n - 1 - k]);
    return out;
}

SxxCurve spectrum_from_moments(std::vector<double> grid, const MechMoments& mm,
                               double omega_m, double gamma_m) {
    // S_xx[w] = |chi_m[w]|^2/2 [gamma <x^2> - (i/2) gamma <[x,p]> - (w - w_m) <{x,p}>]
    //         + |chi_m[-w]|^2/2 [gamma <x^2> + (i/2) gamma <[x,p]> + (w + w_m) <{x,p}>]
    // <[x,p]> is pure imaginary, so both brackets are real.
    const double c = mm.xp_comm.imag();
    SxxCurve out;
    out.grid = std::move(grid);
    out.values.resize(out.grid.size());
    out.variant = SxxVariant::FromMoments;
    out.omega_m = omega_m;
    out.gamma_m = gamma_m;
    out.n_eff = 0.5 * (mm.x2 - c / 2.0);  // thermal identification <x^2> = 2n + c/2
    out.beta = c / 2.0;
    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        const double w = out.grid[k];
        const double bracket_plus = gamma_m * mm.x2 + gamma_m * c / 2.0 -
                                    (w - omega_m) * mm.xp_anti;
        const double bracket_minus = gamma_m * mm.x2 - gamma_m * c / 2.0 +
                                     (w + omega_m) * mm.xp_anti;
        out.values[k] = 0.5 * (std::norm(chi_m(w, omega_m, gamma_m)) * bracket_plus +
                               std::norm(chi_m(-w, omega_m, gamma_m)) * bracket_minus);
    }
    return out;
}

std::vector<std::complex<double>> autocorrelation_x(const std::vector<double>& tau_grid,
                                                    const MechMoments& mm,
                                                    double omega_m, double gamma_m) {
    // <px> = (<{x,p}> - <[x,p]>)/2 for tau > 0, -<xp> = -(<{x,p}> + <[x,p]>)/2 for tau < 0
    const std::complex<double> px = (std::complex<double>(mm.xp_anti) - mm.xp_comm) / 2.0;
    const std::complex<double> xp = (std::complex<double>(mm.xp_anti) + mm.xp_comm) / 2.0;
    std::vector<std::complex<double>> out(tau_grid.size());
    for (std::size_t k = 0; k < tau_grid.size(); ++k) {
        const double tau = tau_grid[k];
        const double env = std::exp(-gamma_m * std::abs(tau) / 2.0);
        const std::complex<double> osc = tau >= 0.0 ? px : -xp;
        out[k] = env * (std::cos(omega_m * tau) * mm.x2 + std::sin(omega_m * tau) * osc);
    }
    return out;
}

double integrated_weight(const SxxCurve& curve) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < curve.grid.size(); ++k)
        sum += 0.5 * (curve.values[k] + curve.values[k + 1]) *
               (curve.grid[k + 1] - curve.grid[k]);
    return sum / (2.0 * M_PI);
}

} // namespace hetspec
