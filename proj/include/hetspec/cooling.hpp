// cooling.hpp — cavity cooling: effective mechanical dynamics and occupancy
// limits for classical and quantum noise models.
#pragma once

#include "hetspec/params.hpp"

namespace hetspec {

struct CoolingParams {
    double Delta_2{0.0};    // cooling-beam detuning
    double G_2{0.0};        // cooling coupling
    double kappa{500.0};    // cooling-mode linewidth
    double gamma_m0{1.0};   // intrinsic mechanical linewidth
    double omega_m0{50.0};  // bare mechanical frequency
    double n_th0{0.0};      // support occupancy
    double alpha{1.0};      // intrinsic field noise of the cooling mode
    double beta{1.0};
};

struct EffectiveDynamics {
    double gamma_m{0.0};
    double omega_m{0.0};
    int iterations{0};
};

// gamma_m = gamma_m0 + 2 G2^2 Re(chi_c2[w_m] - chi_c2*[-w_m]),
// omega_m = omega_m0 + G2^2 Im(chi_c2[w_m] - chi_c2*[-w_m]),
// solved self-consistently for the omega_m appearing in chi_c2.
// Throws AntiDamping when gamma_m <= 0, NoConvergence past 100 iterations.
EffectiveDynamics effective_dynamics(const CoolingParams& cp);

enum class CoolingModel { Classical, Quantum };

struct CoolingReport {
    double gamma_m_eff{0.0};
    double omega_m_eff{0.0};
    double n_th_eff{0.0};
    double n_inf{0.0};     // classically inferred occupancy (resolved sideband)
    bool limit_ok{false};  // classical floor n_th_eff > alpha/2
};

// classical: n = g0 n0/g + alpha kappa G2^2 (|chi2[w]|^2 + |chi2[-w]|^2)/(2g)
// quantum (resolved sideband): n = g0 n0/g + (kappa/4 w)^2
// n_inf = g0 n0/(alpha g) + (kappa/4 w)^2 + p_probe
CoolingReport cooled_occupancy(const CoolingParams& cp, CoolingModel model,
                               double p_probe = 0.0);

// strong-cooling approximation (gamma_m >> gamma_m0) of the classical
// occupancy, exposed next to the full form above
double classical_occupancy_strong_cooling(const CoolingParams& cp,
                                          const EffectiveDynamics& dyn);

} // namespace hetspec
