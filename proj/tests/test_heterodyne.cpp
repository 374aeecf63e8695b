#include <doctest.h>

#include <cmath>

#include "hetspec/heterodyne.hpp"

using namespace hetspec;

namespace {

SystemParams reference_system() {
    SystemParams sp;
    sp.cavity.G = std::sqrt(13.0);  // p = 0.1 exactly
    sp.mech.n_th = 0.4;             // n_eff = 0.5 with alpha = 1
    return sp;
}

} // namespace

TEST_CASE("flat noise floor") {
    auto sp = reference_system();
    SUBCASE("scl floor is alpha") {
        sp.noise.alpha = 1.3;
        const auto vp = validate(sp);
        CHECK(noise_floor(vp, 40.0) == doctest::Approx(1.3).epsilon(1e-14));
        CHECK(noise_floor(vp, 60.0) == doctest::Approx(1.3).epsilon(1e-14));
    }
    SUBCASE("qua floor is the shot-noise ratio") {
        sp.detector.model = DetectorModel::QUA;
        sp.detector.i0_ratio = 0.7;
        const auto vp = validate(sp);
        CHECK(noise_floor(vp, 50.0) == doctest::Approx(0.7).epsilon(1e-14));
    }
    SUBCASE("photocurrent scale multiplies everything") {
        sp.detector.Z2 = 2.5;
        const auto vp = validate(sp);
        CHECK(noise_floor(vp, 50.0) == doctest::Approx(2.5).epsilon(1e-14));
    }
    SUBCASE("laser noise adds a cavity-filtered floor") {
        LaserNoise l;
        l.C_xx = 0.2;
        l.C_yy = 0.1;
        l.r = 1.0;
        sp.noise.laser = l;
        const auto vp = validate(sp);
        const auto& c = vp.cavity();
        const double w = 50.0;
        const double expect =
            1.0 + c.kappa / (4.0 * c.kappa_ext) *
                      std::norm(c.kappa_ext * chi_c(-w, c.kappa)) * 0.3;
        CHECK(noise_floor(vp, w) == doctest::Approx(expect).epsilon(1e-13));
        // the filtered floor is no longer flat
        CHECK(noise_floor(vp, 10.0) != doctest::Approx(noise_floor(vp, 70.0)));
    }
}

TEST_CASE("sideband structure at the reference point") {
    const auto vp = validate(reference_system());
    const double wm = 50.0;
    const auto s = sidebands(vp, {wm});

    // peak: S^(om) = 2 p kext (1 - L-), S^(m) = 4 (n + 1/2) p kext (1 + L-)
    const double Li = lorentzian_L(-wm, wm);
    CHECK(s.red.S_om[0] == doctest::Approx(0.16 * (1.0 - Li)).epsilon(1e-13));
    CHECK(s.blue.S_om[0] == doctest::Approx(-0.16 * (1.0 - Li)).epsilon(1e-13));
    CHECK(s.red.S_m[0] == doctest::Approx(0.32 * (1.0 + Li)).epsilon(1e-13));
    CHECK(s.blue.S_m[0] == doctest::Approx(0.32 * (1.0 + Li)).epsilon(1e-13));
    CHECK(s.floor == doctest::Approx(1.0).epsilon(1e-14));

    // asymmetry ratio approaches 4 p kext beta = 0.32
    CHECK(asymmetry_peak_ratio(vp) ==
          doctest::Approx(0.32 * (1.0 - Li)).epsilon(1e-13));
    CHECK(asymmetry_peak_ratio(vp) == doctest::Approx(0.32).epsilon(1e-4));
}

TEST_CASE("detector models agree for a quantum field") {
    auto sp = reference_system();
    sp.detector.i0_ratio = sp.noise.alpha;  // matched floors
    const auto vp = validate(sp);
    const auto grid = symmetric_grid(50.0, 1.0, 801);
    const auto check = detector_equivalence_check(vp, grid);
    CHECK(check.spectrum_residual < 1e-12);
    CHECK(check.commutator_residual < 1e-12);
}

TEST_CASE("classical intrinsic noise keeps the cross term under qua") {
    auto sp = reference_system();
    sp.detector.model = DetectorModel::QUA;
    sp.noise.kind = FieldKind::ClassicalIntrinsic;
    sp.mech.beta = 0.0;
    const auto vp = validate(sp);
    const auto s = sidebands(vp, {50.0});
    CHECK(s.red.S_om[0] != 0.0);

    sp.noise.kind = FieldKind::QuantumVacuum;
    const auto s2 = sidebands(validate(sp), {50.0});
    CHECK(s2.red.S_om[0] == 0.0);  // vacuum cross term invisible to qua
}

TEST_CASE("quantum-form curve matches the scl total for alpha = beta = 1") {
    const auto vp = validate(reference_system());
    const auto grid = symmetric_grid(50.0, 1.0, 801);
    const auto scl = sidebands(vp, grid);
    const auto qf = sidebands_quantum_form(0.1, 0.8, vp.n_eff(), 50.0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(scl.red.S_total[k] ==
              doctest::Approx(qf.red.S_total[k]).epsilon(1e-13));
        CHECK(scl.blue.S_total[k] ==
              doctest::Approx(qf.blue.S_total[k]).epsilon(1e-13));
    }
}

TEST_CASE("asymmetry helpers") {
    const auto vp = validate(reference_system());
    const auto s = sidebands(vp, {49.5, 50.0, 50.5});
    const auto d = asymmetry(s);
    REQUIRE(d.size() == 3);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(d[k] == doctest::Approx(2.0 * s.red.S_om[k]).epsilon(1e-13));

    SidebandSpectra bad = s;
    bad.blue.grid[0] = 49.0;
    CHECK_THROWS_AS(asymmetry(bad), GridMismatch);
}

TEST_CASE("ratio-method occupancy") {
    ThermometryReport r;
    r.h_r = 0.48;
    r.h_b = 0.16;
    CHECK(inferred_occupancy(r) == doctest::Approx(0.5).epsilon(1e-14));
    r.h_b = 0.48;
    CHECK_THROWS_AS(inferred_occupancy(r), DegenerateFit);
}

TEST_CASE("classical reading of a classical world") {
    CHECK(classical_inferred_occupancy(0.1, 1.0, 0.05) ==
          doctest::Approx(-0.35).epsilon(1e-14));
    CHECK(classical_inferred_occupancy(1.0, 1.0, 0.1) ==
          doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("blue height curves and zero crossing") {
    const auto c = blue_height_vs_Q({0.01, 2.5, 100.0}, 1.0, 0.1);
    // high temperature: curves coincide (the -1/2 is the symmetric-ordering shift)
    CHECK(c.n_quantum[0] == doctest::Approx(c.n_classical[0]).epsilon(1e-4));
    // classical curve crosses zero at Q = 1/(alpha(1/2 - p)) = 2.5
    CHECK(c.n_classical[1] == doctest::Approx(0.0).epsilon(1e-14));
    // low temperature: quantum floor is the backaction p
    CHECK(c.n_quantum[2] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(c.n_classical[2] < 0.0);

    CHECK(classical_blue_zero_crossing(1.0, 0.1) ==
          doctest::Approx(2.5).epsilon(1e-12));
    CHECK(classical_blue_zero_crossing(2.0, 0.25) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(classical_blue_zero_crossing(1.0, 0.6), BackactionTooLarge);
}

TEST_CASE("detectability bound") {
    const double hbar = 1.054571817e-34, kB = 1.380649e-23;
    const double wm = 2.0 * M_PI * 5e6;
    CHECK(detectability_bound(1.0, 0.1, wm) ==
          doctest::Approx(hbar * wm * 0.4 / kB).epsilon(1e-12));
    CHECK_THROWS_AS(detectability_bound(1.0, 0.5, wm), BackactionTooLarge);
}

TEST_CASE("dark-port falsification floor") {
    CHECK(dark_noise_floor(2.0, 3.0, 0.5, 2.0) ==
          doctest::Approx(3.0 * 4.0).epsilon(1e-14));
}
