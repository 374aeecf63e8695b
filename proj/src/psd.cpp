#include "hetspec/psd.hpp"

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>

#include <fftw3.h>

namespace hetspec {

namespace {

std::mutex planner_mutex;  // FFTW planning is not thread-safe

struct RealFft {
    std::size_t n{0};
    double* in{nullptr};
    fftw_complex* out{nullptr};
    fftw_plan plan{nullptr};

    explicit RealFft(std::size_t size) : n(size) {
        in = fftw_alloc_real(n);
        out = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    ~RealFft() {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
};

RealFft& cached_fft(std::size_t n) {
    thread_local std::unordered_map<std::size_t, std::unique_ptr<RealFft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<RealFft>(n);
    return *slot;
}

} // namespace

void PsdAccumulator::add_segment(const std::vector<double>& segment, double dt,
                                 PsdWindow window) {
    const std::size_t n = segment.size();
    if (n < 16) throw TooFewSamples("segment of " + std::to_string(n) + " samples");
    if (n_ == 0) {
        n_ = n;
        dt_ = dt;
        mean_.assign(n / 2 + 1, 0.0);
        m2_.assign(n / 2 + 1, 0.0);
    } else if (n != n_ || dt != dt_) {
        throw GridMismatch("segment length or dt changed mid-accumulation");
    }

    RealFft& fft = cached_fft(n);
    double mean = 0.0;
    for (double v : segment) mean += v;
    mean /= static_cast<double>(n);

    double wnorm = 0.0;
    if (window == PsdWindow::Rectangular) {
        for (std::size_t k = 0; k < n; ++k) fft.in[k] = segment[k] - mean;
        wnorm = static_cast<double>(n);
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(k) /
                                                   static_cast<double>(n)));
            fft.in[k] = (segment[k] - mean) * w;
            wnorm += w * w;
        }
    }
    fftw_execute(fft.plan);

    ++count_;
    const double scale = dt_ / wnorm;
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        const double p = scale * (fft.out[j][0] * fft.out[j][0] +
                                  fft.out[j][1] * fft.out[j][1]);
        const double delta = p - mean_[j];
        mean_[j] += delta / static_cast<double>(count_);
        m2_[j] += delta * (p - mean_[j]);
    }
}

void PsdAccumulator::merge(const PsdAccumulator& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    if (n_ != other.n_ || dt_ != other.dt_)
        throw GridMismatch("merging incompatible PSD accumulators");
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        const double delta = other.mean_[j] - mean_[j];
        mean_[j] += delta * nb / (na + nb);
        m2_[j] += other.m2_[j] + delta * delta * na * nb / (na + nb);
    }
    count_ += other.count_;
}

PsdEstimate PsdAccumulator::finalize() const {
    if (count_ < 16)
        throw TooFewSamples(std::to_string(count_) + " segments; need >= 16");
    PsdEstimate out;
    out.segments = count_;
    out.dt = dt_;
    out.mean = mean_;
    out.grid.resize(mean_.size());
    out.stderr_.resize(mean_.size());
    const double dw = 2.0 * M_PI / (static_cast<double>(n_) * dt_);
    const double norm = static_cast<double>(count_) * static_cast<double>(count_ - 1);
    for (std::size_t j = 0; j < mean_.size(); ++j) {
        out.grid[j] = dw * static_cast<double>(j);
        out.stderr_[j] = std::sqrt(m2_[j] / norm);
    }
    return out;
}

PsdEstimate estimate_psd(const std::vector<double>& samples, double dt,
                         std::size_t segments, PsdWindow window) {
    if (segments < 16) throw TooFewSamples("requested " + std::to_string(segments) +
                                           " segments; need >= 16");
    const std::size_t n = samples.size() / segments;
    if (n < 16) throw TooFewSamples("record too short for requested segmentation");
    PsdAccumulator acc;
    std::vector<double> seg(n);
    for (std::size_t s = 0; s < segments; ++s) {
        std::memcpy(seg.data(), samples.data() + s * n, n * sizeof(double));
        acc.add_segment(seg, dt, window);
    }
    return acc.finalize();
}

double parseval_residual(const PsdEstimate& psd, double variance) {
    const std::size_t m = psd.mean.size();
    double sum = psd.mean.front() + psd.mean.back();
    for (std::size_t j = 1; j + 1 < m; ++j) sum += 2.0 * psd.mean[j];
    const std::size_t n = 2 * (m - 1);
    const double total = sum / (static_cast<double>(n) * psd.dt);
    return std::abs(total - variance) / variance;
}

SidebandData extract_sidebands(const PsdEstimate& psd, double omega_if,
                               double omega_m, double halfwidth) {
    const double dw = psd.grid[1] - psd.grid[0];
    const double nyquist = psd.grid.back();
    if (omega_if - omega_m - halfwidth <= 0.0 ||
        omega_if + omega_m + halfwidth >= nyquist)
        throw WindowOutOfRange("sideband windows must sit inside (0, Nyquist)");

    SidebandData out;
    auto bin = [&](double w) { return static_cast<std::size_t>(std::lround(w / dw)); };
    for (std::size_t j = bin(omega_if + omega_m - halfwidth);
         j <= bin(omega_if + omega_m + halfwidth); ++j) {
        out.grid_r.push_back(psd.grid[j] - omega_if);
        out.S_rr.push_back(psd.mean[j]);
        out.se_r.push_back(psd.stderr_[j]);
    }
    for (std::size_t j = bin(omega_if - omega_m + halfwidth) + 1;
         j-- > bin(omega_if - omega_m - halfwidth);) {
        out.grid_b.push_back(omega_if - psd.grid[j]);
        out.S_bb.push_back(psd.mean[j]);
        out.se_b.push_back(psd.stderr_[j]);
    }
    return out;
}

} // namespace hetspec
