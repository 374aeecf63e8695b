#include <doctest.h>

#include <cmath>

#include "hetspec/fit.hpp"
#include "hetspec/rng.hpp"

using namespace hetspec;

namespace {

SidebandData from_closed_form(const SidebandSpectra& s) {
    SidebandData d;
    d.grid_r = s.red.grid;
    d.S_rr = s.red.S_total;
    d.grid_b = s.blue.grid;
    d.S_bb = s.blue.S_total;
    return d;
}

std::vector<double> window_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return g;
}

} // namespace

TEST_CASE("noiseless closed-form curves round-trip exactly") {
    SystemParams sp;
    sp.cavity.G = std::sqrt(13.0);
    sp.mech.n_th = 0.4;
    const auto vp = validate(sp);
    const auto s = sidebands(vp, window_grid(40.0, 60.0, 401));

    const auto fit = fit_thermometry(from_closed_form(s));
    const double Li_peak = lorentzian_L(-50.0, 50.0);
    CHECK(fit.floor == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.h_r == doctest::Approx(0.48).epsilon(1e-9));
    CHECK(fit.h_b == doctest::Approx(0.16).epsilon(1e-9));
    CHECK(fit.omega_m_fit == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(fit.gamma_fit == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.squashing == false);
    CHECK(inferred_occupancy(fit) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(fit.delta_ratio == doctest::Approx(0.32).epsilon(1e-8));
    (void)Li_peak;

    ThermometryReport r = fit;
    apply_floor_method(r, 0.1, 0.8);
    CHECK(r.floor_method_n == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("squashing is reported as a negative blue height") {
    SystemParams sp;
    sp.cavity.G = std::sqrt(6.5);  // p = 0.05
    sp.mech.n_th = 0.1;
    sp.mech.beta = 0.0;
    sp.noise.kind = FieldKind::ClassicalIntrinsic;
    sp.detector.model = DetectorModel::QUA;
    const auto vp = validate(sp);
    // n_inf = n_th/alpha + p - 1/2 = -0.35 < 0: blue dip below the floor
    const auto s = sidebands(vp, window_grid(40.0, 60.0, 401));
    const auto fit = fit_thermometry(from_closed_form(s));
    CHECK(fit.squashing);
    CHECK(fit.h_b == doctest::Approx(4.0 * 0.05 * 0.8 * -0.35).epsilon(1e-6));
}

TEST_CASE("fit tolerates noise and reports sane errors") {
    SystemParams sp;
    sp.cavity.G = std::sqrt(13.0);
    sp.mech.n_th = 0.4;
    const auto vp = validate(sp);
    const auto s = sidebands(vp, window_grid(40.0, 60.0, 401));
    auto d = from_closed_form(s);

    Rng rng(derive_seed(123, 0));
    const double sigma = 0.05;
    for (auto* v : {&d.S_rr, &d.S_bb})
        for (double& x : *v) x += sigma * rng.next_normal();
    d.se_r.assign(d.grid_r.size(), sigma);
    d.se_b.assign(d.grid_b.size(), sigma);

    const auto fit = fit_thermometry(d);
    CHECK(fit.h_r == doctest::Approx(0.48).epsilon(0.25));
    CHECK(fit.h_b == doctest::Approx(0.16).epsilon(0.6));
    CHECK(fit.h_r_err > 0.0);
    CHECK(fit.h_b_err > 0.0);
    CHECK(std::abs(fit.h_r - 0.48) < 4.0 * fit.h_r_err);
    CHECK(std::abs(fit.h_b - 0.16) < 4.0 * fit.h_b_err);
}

TEST_CASE("unconstrained data raises") {
    SidebandData d;
    d.grid_r = window_grid(40.0, 60.0, 11);
    d.S_rr.assign(11, 1.0);  // flat: no peak to locate
    d.grid_b = d.grid_r;
    d.S_bb.assign(11, 1.0);
    CHECK_THROWS_AS(fit_thermometry(d), Error);
}
