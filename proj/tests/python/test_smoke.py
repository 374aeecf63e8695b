"""Smoke tests for the Python bindings: one pass through each exposed area."""

import math

import pytest

import hetspec as hs


def reference_system():
    sp = hs.SystemParams()
    sp.cavity.G = math.sqrt(13.0)
    sp.mech.n_th = 0.4
    sp.detector.omega_if = 400.0
    return sp


def test_validate_and_coupling():
    vp = hs.validate(reference_system())
    assert vp.coupling.p == pytest.approx(0.1, abs=1e-13)
    assert vp.coupling.kappa_bar_ext == pytest.approx(0.8)
    assert vp.n_eff() == pytest.approx(0.5, abs=1e-13)


def test_validation_errors_map_to_python():
    sp = reference_system()
    sp.mech.gamma_m = -1.0
    with pytest.raises(hs.HetspecError):
        hs.validate(sp)


def test_closed_form_sidebands():
    vp = hs.validate(reference_system())
    s = hs.sidebands(vp, [50.0])
    assert s.floor == pytest.approx(1.0)
    assert s.red.S_total[0] - s.blue.S_total[0] == pytest.approx(0.32, rel=1e-4)
    assert hs.asymmetry_peak_ratio(vp) == pytest.approx(0.32, rel=1e-4)


def test_response_curves():
    grid = hs.symmetric_grid(50.0, 1.0, 601, 25.0)  # 0.25 spacing puts 50 on-grid
    curve = hs.sxx_thermal(grid, 50.0, 0.4, 1.0)
    assert max(curve.values) == pytest.approx(4.0 * 1.4, rel=1e-3)
    assert hs.integrated_weight(curve) == pytest.approx(1.8, rel=0.02)


def test_fit_round_trip():
    vp = hs.validate(reference_system())
    grid = [40.0 + 20.0 * k / 400.0 for k in range(401)]
    s = hs.sidebands(vp, grid)
    data = hs.SidebandData()
    data.grid_r = s.red.grid
    data.S_rr = s.red.S_total
    data.grid_b = s.blue.grid
    data.S_bb = s.blue.S_total
    fit = hs.fit_thermometry(data)
    assert fit.h_r == pytest.approx(0.48, abs=1e-9)
    assert fit.h_b == pytest.approx(0.16, abs=1e-9)
    assert hs.inferred_occupancy(fit) == pytest.approx(0.5, abs=1e-8)


def test_blue_curves_and_bounds():
    assert hs.classical_blue_zero_crossing(1.0, 0.1) == pytest.approx(2.5, abs=1e-9)
    curves = hs.blue_height_vs_Q([100.0], 1.0, 0.1)
    assert curves.n_quantum[0] == pytest.approx(0.1, abs=1e-12)
    assert curves.n_classical[0] < 0.0


def test_cooling():
    cp = hs.CoolingParams()
    cp.Delta_2 = -50.0
    cp.G_2 = 10.0
    cp.omega_m0 = 50.0
    cp.kappa = 500.0
    cp.n_th0 = 1000.0
    rep = hs.cooled_occupancy(cp, hs.CoolingModel.Classical)
    assert rep.gamma_m_eff > 1.0
    assert rep.n_th_eff > 0.5
    quantum = hs.cooled_occupancy(cp, hs.CoolingModel.Quantum)
    assert rep.n_inf == pytest.approx(quantum.n_th_eff, abs=1e-12)


def test_monte_carlo_small():
    vp = hs.validate(reference_system())
    opt = hs.McOptions()
    opt.seed = 5
    opt.segments = 16
    opt.T_s = 20.0
    opt.dt = 2e-4
    run = hs.run_heterodyne_mc(vp, opt)
    assert run.segments == 16
    assert run.psd.segments == 16
    assert 0.0 < run.n_eff_mc < 1.5
    # same seed reproduces bit-identical spectra
    again = hs.run_heterodyne_mc(vp, opt)
    assert list(run.psd.mean) == list(again.psd.mean)


def test_psd_white_noise():
    # derive a deterministic pseudo-random record from the integrator itself
    vp = hs.validate(reference_system())
    trace_len = 1 << 15
    import random

    rng = random.Random(11)
    dt = 1e-3
    rec = [rng.gauss(0.0, math.sqrt(2.5 / dt)) for _ in range(trace_len)]
    psd = hs.estimate_psd(rec, dt, 16)
    mean = sum(psd.mean) / len(psd.mean)
    assert mean == pytest.approx(2.5, rel=0.05)
