// fit.hpp — joint two-sideband Lorentzian fit for thermometry.
//
// Model: S_r(w~) = a_r + h_r L[w~] + h_b L[-w~]
//        S_b(w~) = a_b + h_b L[w~] + h_r L[-w~]
// with shared center w0 and width gamma. The cross-tied image heights mirror
// the structure of the sideband spectra (the image of one sideband is the
// main peak of the other), which lets noiseless closed-form curves round-trip
// exactly.
#pragma once

#include <vector>

#include "hetspec/heterodyne.hpp"

namespace hetspec {

struct SidebandData {
    std::vector<double> grid_r, S_rr, se_r;  // omega_tilde, value, standard error
    std::vector<double> grid_b, S_bb, se_b;  // empty se_* means unit weights
};

struct FitOptions {
    int max_iterations{200};
    double tolerance{1e-12};  // relative change of chi^2 and parameters
};

// Damped (Levenberg-style) least squares with grid-scan initialization
// (w0 = argmax, gamma = FWHM estimate). Throws DegenerateFit when the data
// cannot constrain the model, NoConvergence when iteration stalls.
ThermometryReport fit_thermometry(const SidebandData& data, const FitOptions& opt = {});

// fills floor_method_n = h_b / (floor 4 p kext) on an existing report
void apply_floor_method(ThermometryReport& report, double p, double kappa_bar_ext);

} // namespace hetspec
