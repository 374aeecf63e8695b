#include <doctest.h>

#include <cmath>

#include "hetspec/params.hpp"

using namespace hetspec;

TEST_CASE("coupling numbers at the reference point") {
    CavityParams cav;
    cav.kappa = 500.0;
    cav.kappa_ext = 400.0;
    cav.G = 3.6056;
    MechParams mech;  // omega_m = 50, gamma_m = 1

    const auto dc = derive_coupling(cav, mech);
    CHECK(dc.C == doctest::Approx(0.10400).epsilon(1e-4));
    CHECK(dc.p == doctest::Approx(0.10000).epsilon(1e-4));
    CHECK(dc.kappa_bar_ext == doctest::Approx(0.8).epsilon(1e-12));

    // G = sqrt(13) makes p = 1/10 exactly: kappa^2 |chi_c|^2/4 = 25/26,
    // C = 13/125
    cav.G = std::sqrt(13.0);
    const auto exact = derive_coupling(cav, mech);
    CHECK(exact.C == doctest::Approx(13.0 / 125.0).epsilon(1e-14));
    CHECK(exact.p == doctest::Approx(0.1).epsilon(1e-14));

    cav.G = std::sqrt(6.5);
    CHECK(derive_coupling(cav, mech).p == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("validation normalizes to gamma_m units") {
    SystemParams sp;
    sp.mech.gamma_m = 2.0;
    sp.mech.omega_m = 100.0;
    sp.cavity.kappa = 1000.0;
    sp.cavity.kappa_ext = 800.0;
    sp.cavity.G = 2.0 * std::sqrt(13.0);
    sp.detector.omega_if = 800.0;

    const auto vp = validate(sp);
    CHECK(vp.mech().gamma_m == 1.0);
    CHECK(vp.mech().omega_m == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(vp.cavity().kappa == doctest::Approx(500.0).epsilon(1e-14));
    CHECK(vp.detector().omega_if == doctest::Approx(400.0).epsilon(1e-14));
    // p is scale invariant
    CHECK(vp.coupling().p == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("validation guards") {
    SystemParams sp;
    sp.cavity.G = 1.0;

    SUBCASE("negative rate") {
        sp.mech.gamma_m = -1.0;
        CHECK_THROWS_AS(validate(sp), NonPositiveRate);
    }
    SUBCASE("bath occupancy") {
        sp.mech.n_th = -0.1;
        CHECK_THROWS_AS(validate(sp), RegimeViolation);
    }
    SUBCASE("external coupling exceeds total") {
        sp.cavity.kappa_ext = 600.0;
        CHECK_THROWS_AS(validate(sp), RegimeViolation);
    }
    SUBCASE("detuning") {
        sp.cavity.Delta = 1.0;
        CHECK_THROWS_AS(validate(sp), DetuningNotZeroForClosedForm);
        ValidateOptions opt;
        opt.require_zero_detuning = false;
        CHECK_NOTHROW(validate(sp, opt));
    }
    SUBCASE("low quality factor is force-skippable") {
        sp.mech.omega_m = 5.0;
        sp.detector.omega_if = 40.0;
        CHECK_THROWS_AS(validate(sp), RegimeViolation);
        ValidateOptions opt;
        opt.force = true;
        CHECK_NOTHROW(validate(sp, opt));
    }
    SUBCASE("strong coupling is force-skippable") {
        sp.cavity.G = 100.0;
        CHECK_THROWS_AS(validate(sp), RegimeViolation);
        ValidateOptions opt;
        opt.force = true;
        CHECK_NOTHROW(validate(sp, opt));
    }
    SUBCASE("laser Cauchy-Schwarz") {
        LaserNoise l;
        l.C_xx = 1.0;
        l.C_yy = 1.0;
        l.C_xy = 1.5;
        l.r = 0.5;
        sp.noise.laser = l;
        CHECK_THROWS_AS(validate(sp), RegimeViolation);
    }
}

TEST_CASE("default intermediate frequency resolves to 8 omega_m") {
    SystemParams sp;
    const auto vp = validate(sp);
    CHECK(vp.detector().omega_if == doctest::Approx(400.0));
}

TEST_CASE("effective occupancy includes probe backaction") {
    SystemParams sp;
    sp.cavity.G = std::sqrt(13.0);
    sp.mech.n_th = 0.4;
    CHECK(validate(sp).n_eff() == doctest::Approx(0.5).epsilon(1e-13));

    // r C_xx adds to the backaction-heated occupancy
    LaserNoise l;
    l.C_xx = 2.0;
    l.r = 1.0;
    sp.noise.laser = l;
    CHECK(validate(sp).n_eff() == doctest::Approx(0.7).epsilon(1e-13));
}

TEST_CASE("occupancy from temperature") {
    const double hbar = 1.054571817e-34;
    const double kB = 1.380649e-23;
    const double omega = 2.0 * M_PI * 5e6;  // 5 MHz oscillator
    const double T = 0.1;

    const double x = hbar * omega / (kB * T);
    CHECK(occupancy_from_temperature(T, omega) ==
          doctest::Approx(1.0 / std::expm1(x)).epsilon(1e-12));
    CHECK(occupancy_from_temperature(T, omega, true) ==
          doctest::Approx(1.0 / x).epsilon(1e-12));
    // classical and quantum agree at high temperature to O(x)
    CHECK(occupancy_from_temperature(300.0, omega, true) ==
          doctest::Approx(occupancy_from_temperature(300.0, omega) + 0.5)
              .epsilon(1e-6));
    CHECK_THROWS_AS(occupancy_from_temperature(-1.0, omega), NonPositiveTemperature);
}

TEST_CASE("steady-state cavity amplitude") {
    const auto a = abar(10.0, 4.0, 3.0);
    // Omega/(kappa/2 - i Delta)
    const std::complex<double> expect = 10.0 / std::complex<double>(2.0, -3.0);
    CHECK(std::abs(a - expect) < 1e-15);
}
