// montecarlo.hpp — stochastic time-domain oracle for the closed forms.
//
// Integrates the linearized cavity + oscillator Langevin system with an exact
// discrete-time propagator (matrix exponential of the drift, matching Gaussian
// increment covariance), so linewidths and peak heights carry no step-size
// bias. Quantum scenarios use symmetric-ordering c-number equivalents: field
// noise alpha/2 per order, mechanical bath n_th + beta/2 per order.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hetspec/params.hpp"
#include "hetspec/psd.hpp"

namespace hetspec {

struct TimeTrace {
    double dt{0.0};
    double T_s{0.0};
    std::vector<double> x;                    // point samples at step ends
    std::vector<std::complex<double>> d;      // point samples at step ends
    std::vector<std::complex<double>> d_out;  // per-step boxcar averages
    std::vector<double> i;                    // photocurrent, filled later
};

// default step min(0.05/kappa, 2 pi / (16 (omega_if + omega_m)))
double default_step(const ValidatedParams& vp);

// Single stationary segment (initial state drawn from the stationary
// distribution). Throws StepTooLarge when dt > 0.1/kappa, UnstableDrift when
// the drift has a growing mode.
TimeTrace integrate(const ValidatedParams& vp, std::uint64_t seed,
                    double dt, double T_s);

// i(t) = 2 Re(Z e^{i omega_if t} d_out(t)) with Z = i sqrt(Z2); the QUA
// detector adds an independent white record of two-sided PSD Z2*i0_ratio
// (photoelectron self-correlation), SCL adds nothing. The carrier tone and
// constant offset are omitted: they sit far from the sideband windows.
// Throws MissingOutputTrace.
std::vector<double> synthesize_photocurrent(const TimeTrace& trace,
                                            const DetectorParams& det,
                                            std::uint64_t seed);

struct McOptions {
    std::uint64_t seed{1};
    std::size_t segments{64};
    double dt{0.0};               // 0 -> default_step
    double T_s{100.0};            // per segment, units of 1/gamma_m
    double window_halfwidth{10.0};
    PsdWindow window{PsdWindow::Rectangular};
    int threads{0};               // 0 -> HETSPEC_THREADS or 1
};

struct McRun {
    PsdEstimate psd;
    SidebandData sidebands;
    ThermometryReport fit;
    bool fit_ok{false};
    double var_x{0.0};     // mean over segments of Var(x)
    double n_eff_mc{0.0};  // Var(x)/2 - beta/2
    double dt{0.0};
    double T_s{0.0};
    std::size_t segments{0};
    std::uint64_t seed{0};
};

// Independent stationary segments with per-segment derived seeds; PSD
// accumulation is an order-fixed reduction, so results are reproducible for
// any thread count.
McRun run_heterodyne_mc(const ValidatedParams& vp, const McOptions& opt);

} // namespace hetspec
