// psd.hpp — Welch-averaged power spectral density estimation.
//
// Normalization: a white process of two-sided intensity S0 (sample variance
// S0/dt) reads S0. Two-sided grid reported for omega >= 0; the PSD of a real
// signal is symmetric.
#pragma once

#include <cstddef>
#include <vector>

#include "hetspec/errors.hpp"
#include "hetspec/fit.hpp"

namespace hetspec {

enum class PsdWindow { Rectangular, Hann };

struct PsdEstimate {
    std::vector<double> grid;    // angular frequency, 0..pi/dt
    std::vector<double> mean;    // averaged periodogram
    std::vector<double> stderr_; // standard error of the mean per bin
    std::size_t segments{0};
    double dt{0.0};
};

// Splits the record into `segments` equal non-overlapping pieces (remainder
// dropped), removes each segment's mean, averages periodograms.
// Throws TooFewSamples when segments < 16 or a segment would be shorter
// than 16 samples.
PsdEstimate estimate_psd(const std::vector<double>& samples, double dt,
                         std::size_t segments, PsdWindow window = PsdWindow::Rectangular);

// Accumulates single-segment periodograms streamed one at a time; used by the
// Monte Carlo driver so full records never need to be held in memory.
class PsdAccumulator {
public:
    PsdAccumulator() = default;

    // `segment` is consumed as one Welch segment (mean removed internally)
    void add_segment(const std::vector<double>& segment, double dt, PsdWindow window);
    void merge(const PsdAccumulator& other);
    PsdEstimate finalize() const;  // TooFewSamples when < 16 segments

private:
    std::vector<double> mean_, m2_;
    std::size_t count_{0};
    double dt_{0.0};
    std::size_t n_{0};
};

// sum(PSD) dw/(2 pi) over the two-sided spectrum vs the given variance
double parseval_residual(const PsdEstimate& psd, double variance);

// red = psd[omega_if + w~], blue = psd[omega_if - w~], w~ in
// [omega_m - halfwidth, omega_m + halfwidth]; bins mapped without
// interpolation. Throws WindowOutOfRange when either window leaves the grid.
SidebandData extract_sidebands(const PsdEstimate& psd, double omega_if,
                               double omega_m, double halfwidth);

} // namespace hetspec
