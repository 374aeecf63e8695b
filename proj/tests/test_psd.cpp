#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hetspec/psd.hpp"
#include "hetspec/rng.hpp"

using namespace hetspec;

namespace {

std::vector<double> white_record(std::size_t n, double s0, double dt,
                                 std::uint64_t seed) {
    // discrete white noise of two-sided intensity s0: variance s0/dt
    Rng rng(derive_seed(seed, 0));
    const double sd = std::sqrt(s0 / dt);
    std::vector<double> out(n);
    for (double& v : out) v = sd * rng.next_normal();
    return out;
}

double band_mean(const PsdEstimate& psd, double lo, double hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < psd.grid.size(); ++k) {
        if (psd.grid[k] < lo || psd.grid[k] > hi) continue;
        sum += psd.mean[k];
        ++count;
    }
    REQUIRE(count > 0);
    return sum / static_cast<double>(count);
}

} // namespace

TEST_CASE("white noise reads its intensity") {
    const double s0 = 2.7, dt = 1e-3;
    const auto rec = white_record(1 << 18, s0, dt, 42);
    for (PsdWindow w : {PsdWindow::Rectangular, PsdWindow::Hann}) {
        const auto psd = estimate_psd(rec, dt, 64, w);
        CHECK(psd.segments == 64);
        CHECK(band_mean(psd, 0.0, M_PI / dt) == doctest::Approx(s0).epsilon(0.02));
    }
}

TEST_CASE("deterministic tone lands in its bin with the right weight") {
    const double dt = 1e-3;
    const std::size_t nseg = 4096, segs = 16;
    const double w0 = 2.0 * M_PI * 164.0 /
                      (static_cast<double>(nseg) * dt);  // exactly on bin 164
    const double A = 3.0;
    std::vector<double> rec(nseg * segs);
    for (std::size_t k = 0; k < rec.size(); ++k)
        rec[k] = A * std::cos(w0 * static_cast<double>(k) * dt);

    const auto psd = estimate_psd(rec, dt, segs);
    const double dw = 2.0 * M_PI / (static_cast<double>(nseg) * dt);
    // one-bin tone: PSD integrates to A^2/4 per two-sided line
    std::size_t peak = 0;
    for (std::size_t k = 1; k < psd.mean.size(); ++k)
        if (psd.mean[k] > psd.mean[peak]) peak = k;
    CHECK(psd.grid[peak] == doctest::Approx(w0).epsilon(1e-12));
    CHECK(psd.mean[peak] * dw / (2.0 * M_PI) ==
          doctest::Approx(A * A / 4.0).epsilon(1e-10));
    CHECK(psd.stderr_[peak] < 1e-9 * psd.mean[peak]);  // identical segments
}

TEST_CASE("parseval closes") {
    const double dt = 2e-3;
    const auto rec = white_record(1 << 16, 1.0, dt, 7);
    const auto psd = estimate_psd(rec, dt, 16);
    // per-segment mean removal: compare against the mean-removed variance
    double mean = std::accumulate(rec.begin(), rec.end(), 0.0) /
                  static_cast<double>(rec.size());
    double var = 0.0;
    for (double v : rec) var += (v - mean) * (v - mean);
    var /= static_cast<double>(rec.size());
    CHECK(parseval_residual(psd, var) ==
          doctest::Approx(0.0).epsilon(1e-3).scale(1.0));
}

TEST_CASE("streaming accumulator reproduces the batch estimate") {
    const double dt = 1e-3;
    const std::size_t segs = 24, nseg = 2048;
    const auto rec = white_record(segs * nseg, 1.5, dt, 99);

    const auto batch = estimate_psd(rec, dt, segs);

    PsdAccumulator a, b;
    for (std::size_t s = 0; s < segs; ++s) {
        std::vector<double> seg(rec.begin() + s * nseg,
                                rec.begin() + (s + 1) * nseg);
        (s % 2 == 0 ? a : b).add_segment(seg, dt, PsdWindow::Rectangular);
    }
    a.merge(b);
    const auto merged = a.finalize();
    REQUIRE(merged.mean.size() == batch.mean.size());
    for (std::size_t k = 0; k < merged.mean.size(); ++k)
        CHECK(merged.mean[k] == doctest::Approx(batch.mean[k]).epsilon(1e-12));
}

TEST_CASE("too few samples or segments") {
    const auto rec = white_record(1024, 1.0, 1e-3, 1);
    CHECK_THROWS_AS(estimate_psd(rec, 1e-3, 8), TooFewSamples);
    CHECK_THROWS_AS(estimate_psd(rec, 1e-3, 256), TooFewSamples);
}

TEST_CASE("sideband extraction mirrors around the intermediate frequency") {
    // synthetic PSD on a uniform grid: value = omega, so window contents are
    // trivially predictable
    PsdEstimate psd;
    const double dw = 0.01;
    const std::size_t n = 100001;
    psd.grid.resize(n);
    psd.mean.resize(n);
    psd.stderr_.assign(n, 1.0);
    psd.segments = 16;
    psd.dt = M_PI / ((static_cast<double>(n) - 1.0) * dw);
    for (std::size_t k = 0; k < n; ++k) {
        psd.grid[k] = static_cast<double>(k) * dw;
        psd.mean[k] = psd.grid[k];
    }

    const double w_if = 400.0, wm = 50.0, half = 10.0;
    const auto sb = extract_sidebands(psd, w_if, wm, half);
    REQUIRE(sb.grid_r.size() == sb.grid_b.size());
    CHECK(sb.grid_r.front() == doctest::Approx(wm - half).epsilon(1e-9));
    CHECK(sb.grid_r.back() == doctest::Approx(wm + half).epsilon(1e-9));
    for (std::size_t k = 0; k < sb.grid_r.size(); ++k) {
        CHECK(sb.grid_b[k] == doctest::Approx(sb.grid_r[k]).epsilon(1e-12));
        // red window read upward from w_if, blue downward
        CHECK(sb.S_rr[k] == doctest::Approx(w_if + sb.grid_r[k]).epsilon(1e-9));
        CHECK(sb.S_bb[k] == doctest::Approx(w_if - sb.grid_b[k]).epsilon(1e-9));
    }

    CHECK_THROWS_AS(extract_sidebands(psd, 950.0, wm, half), WindowOutOfRange);
}
