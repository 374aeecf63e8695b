// response.hpp — susceptibilities and mechanical position noise spectra.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hetspec/params.hpp"

namespace hetspec {

inline std::complex<double> chi_m(double omega, double omega_m, double gamma_m = 1.0) {
    return 1.0 / std::complex<double>(gamma_m / 2.0, -(omega - omega_m));
}

inline std::complex<double> chi_c(double omega, double kappa, double Delta = 0.0) {
    return 1.0 / std::complex<double>(kappa / 2.0, -(omega + Delta));
}

// unit-peak Lorentzian of width gamma_m centered at omega_m
inline double lorentzian_L(double omega_tilde, double omega_m, double gamma_m = 1.0) {
    const double hw = gamma_m / 2.0;
    const double d = omega_tilde - omega_m;
    return hw * hw / (hw * hw + d * d);
}

enum class SxxVariant { Thermal, WithBackaction, Symmetrized, FromMoments };

struct SxxCurve {
    std::vector<double> grid;
    std::vector<double> values;
    SxxVariant variant{SxxVariant::Thermal};
    double omega_m{0.0};
    double gamma_m{1.0};
    double n_eff{0.0};  // occupancy weighting the Lorentzians
    double beta{0.0};
};

// equal-time moments of x and p ([x,p] = 2i in the quantum theory, 0 classical)
struct MechMoments {
    double x2{1.0};                     // <x^2>
    double xp_anti{0.0};                // <{x,p}>
    std::complex<double> xp_comm{0.0, 2.0};  // <[x,p]>, pure imaginary
};

// symmetric grid of `points` frequencies spanning +-(omega_m + margin*gamma_m)
std::vector<double> symmetric_grid(double omega_m, double gamma_m = 1.0,
                                   std::size_t points = 4001, double margin = 25.0);

// gamma_m [(n_th+beta)|chi_m[w]|^2 + n_th |chi_m[-w]|^2]
SxxCurve sxx_thermal(std::vector<double> grid, double omega_m, double n_th,
                     double beta, double gamma_m = 1.0);

// thermal curve at the backaction-shifted occupancy n_eff = n_th + p(alpha + r C_xx)
SxxCurve sxx_with_backaction(std::vector<double> grid, const ValidatedParams& vp);

// (S_xx[w] + S_xx[-w])/2; requires a grid symmetric about 0
SxxCurve sxx_symmetrized(const SxxCurve& curve);

// two-Lorentzian spectrum from equal-time moments only
SxxCurve spectrum_from_moments(std::vector<double> grid, const MechMoments& mm,
                               double omega_m, double gamma_m = 1.0);

// stationary autocorrelation <x(tau) x(0)> for the same moments
std::vector<std::complex<double>> autocorrelation_x(const std::vector<double>& tau_grid,
                                                    const MechMoments& mm,
                                                    double omega_m, double gamma_m = 1.0);

// trapezoidal integral of curve.values over curve.grid divided by 2 pi
double integrated_weight(const SxxCurve& curve);

} // namespace hetspec
