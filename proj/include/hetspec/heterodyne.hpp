// heterodyne.hpp — closed-form photocurrent spectra, sideband asymmetry and
// thermometry inversion for every field-model x detector-model combination.
//
// All spectra are in units of |Z|^2 and restricted to zero probe detuning,
// where the explicit sideband forms hold. The image Lorentzian L[-w] is kept
// exactly; it contributes at O((gamma_m/omega_m)^2).
#pragma once

#include <vector>

#include "hetspec/params.hpp"
#include "hetspec/response.hpp"

namespace hetspec {

enum class Theory { Quantum, Classical };

struct SpectrumCurve {
    std::vector<double> grid;  // omega_tilde near omega_m
    std::vector<double> S_o, S_om, S_m, S_total;
};

struct SidebandSpectra {
    SpectrumCurve red;   // S[omega_if + omega_tilde]
    SpectrumCurve blue;  // S[omega_if - omega_tilde]
    double floor{1.0};   // S^(o), flat across the gamma_m-wide windows
};

// white floor S^(o) in |Z|^2 units, evaluated at omega_tilde
double noise_floor(const ValidatedParams& vp, double omega_tilde);

SidebandSpectra sidebands(const ValidatedParams& vp, std::vector<double> grid);

// quantum-form sidebands 1 + 4 p kext [(n+1)L + n L-] (red) and the mirrored
// blue, used for the floor-normalized coincidence with classical models
SidebandSpectra sidebands_quantum_form(double p, double kappa_bar_ext, double n,
                                       double omega_m, std::vector<double> grid,
                                       double gamma_m = 1.0);

// Delta S[w~] = S_rr - S_bb on the common grid
std::vector<double> asymmetry(const SidebandSpectra& s);

// Delta S[omega_m] / S^(o); equals 4 p kext (beta or alpha) up to the image term
double asymmetry_peak_ratio(const ValidatedParams& vp);

struct ThermometryReport {
    double floor{0.0};
    double h_r{0.0}, h_b{0.0};       // peak heights above floor
    double h_r_err{0.0}, h_b_err{0.0};
    double gamma_fit{0.0};
    double omega_m_fit{0.0};
    double ratio_method_n{0.0};      // h_b/(h_r - h_b)
    double floor_method_n{0.0};      // h_b/(floor 4 p kext), filled by caller helper
    double delta_ratio{0.0};         // (h_r - h_b)/floor
    bool squashing{false};           // h_b < 0
};

// ratio-method occupancy; throws DegenerateFit when h_r <= h_b
double inferred_occupancy(const ThermometryReport& fit);

// occupancy a classical world produces when read with the quantum formula
double classical_inferred_occupancy(double n_th, double alpha, double p);

struct BlueHeightCurves {
    std::vector<double> Q;           // hbar omega_m / k_B T
    std::vector<double> n_quantum;   // 1/(e^Q - 1) + p
    std::vector<double> n_classical; // 1/(alpha Q) + p - 1/2
};

BlueHeightCurves blue_height_vs_Q(std::vector<double> Q_grid, double alpha, double p);

// Q where the classical blue height crosses zero, found by root bracketing
double classical_blue_zero_crossing(double alpha, double p);

// largest temperature [K] at which the classical blue sideband is negative;
// omega_m in rad/s. Throws BackactionTooLarge for p >= 1/2.
double detectability_bound(double alpha, double p, double omega_m);

struct EquivalenceCheck {
    double spectrum_residual{0.0};    // max |S^SCL - S^QUA| / floor
    double commutator_residual{0.0};  // output-noise commutator identity
};

EquivalenceCheck detector_equivalence_check(const ValidatedParams& vp,
                                            const std::vector<double>& grid);

// classical lasers-off prediction B (q v^2 alpha / 2)^2; falsification diagnostic
inline double dark_noise_floor(double alpha, double B, double q, double v) {
    const double s = q * v * v * alpha / 2.0;
    return B * s * s;
}

} // namespace hetspec
