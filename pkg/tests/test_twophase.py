import numpy as np
import pytest

from rsir1d import eos as _eos
from rsir1d import twophase as tp
from rsir1d.euler import PositivityError
from conftest import random_twophase_states

WATER = _eos.preset("water-sg")
AIR = _eos.preset("air-ideal")


def test_cons_prim_roundtrip(rng):
    wl, _ = random_twophase_states(rng, 300, WATER, AIR)
    uc = tp.tp_cons_from_prim(wl, WATER, AIR)
    w2 = tp.tp_prim_from_cons(uc, WATER, AIR)
    assert np.allclose(w2[..., 0], wl[..., 0], rtol=1e-13)
    assert np.allclose(w2[..., [1, 4]], wl[..., [1, 4]], rtol=1e-12)
    # pressure errors scale with p + gamma p_inf
    assert np.all(np.abs(w2[..., 3] - wl[..., 3])
                  <= 1e-9 * (wl[..., 3] + WATER.gamma * WATER.p_inf))
    assert np.allclose(w2[..., 6], wl[..., 6], rtol=1e-9)


def test_alpha_bounds_enforced():
    w = np.array([1.2, 1000.0, 0.0, 1e5, 1.0, 0.0, 1e5])
    with pytest.raises(PositivityError):
        tp.tp_cons_from_prim(w, WATER, AIR)


def test_alpha_clamp_counted():
    uc = tp.tp_cons_from_prim(
        np.array([0.5, 1000.0, 0.0, 1e5, 1.0, 0.0, 1e5]), WATER, AIR)
    uc[0] = 1e-12  # push below the floor
    stats = {"alpha": 0}
    tp.tp_prim_from_cons(uc, WATER, AIR, stats)
    assert stats["alpha"] == 1


def test_interfacial_pressure_upwind_rule():
    wl = np.array([0.8, 1000.0, 0.0, 2e5, 1.0, 0.0, 1e5])
    wr = np.array([0.2, 1000.0, 0.0, 3e5, 1.0, 0.0, 1e5])
    assert tp.interfacial_pressure(wl, wr) == 2e5   # phase 1 lives on the left
    assert tp.interfacial_pressure(wr, wl) == 2e5   # and on the right here
    wr2 = wr.copy(); wr2[0] = 0.8
    assert tp.interfacial_pressure(wl, wr2) == 2.5e5  # tie: average


def test_local_state_inserts_alpha2():
    uc = tp.tp_cons_from_prim(
        np.array([0.3, 1000.0, 10.0, 1e5, 1.0, 20.0, 1e5]), WATER, AIR)
    v = tp.local_state(uc)
    assert v.shape == (8,)
    assert v[4] == pytest.approx(0.7)
    assert np.allclose(v[[0, 1, 2, 3]], uc[[0, 1, 2, 3]])
    assert np.allclose(v[[5, 6, 7]], uc[[4, 5, 6]])


def test_local_flux_reduces_to_phys_flux():
    """Adding the frozen-p_i corrections to the 8-slot flux recovers the
    7-slot flux of the plain formulation."""
    w = np.array([0.3, 1000.0, 10.0, 2e5, 1.0, 20.0, 1e5])
    p_i = 2e5
    phi = tp.local_flux(w, p_i, WATER, AIR)
    f = tp.phys_flux(w, WATER, AIR)
    a1, a2 = 0.3, 0.7
    assert phi[2] + p_i * a1 == pytest.approx(f[2], rel=1e-13)
    assert phi[3] + p_i * phi[0] == pytest.approx(f[3], rel=1e-13)
    assert phi[6] + p_i * a2 == pytest.approx(f[5], rel=1e-13)
    assert phi[7] - p_i * phi[0] == pytest.approx(f[6], rel=1e-13)
    # the two volume-fraction fluxes cancel by saturation
    assert phi[4] == -phi[0]


def test_wave_bounds_contain_eigenvalues(rng):
    wl, wr = random_twophase_states(rng, 200, WATER, AIR)
    s_l, s_r = tp.tp_wave_bounds(wl, wr, AIR)
    for w in (wl, wr):
        c2 = _eos.sound_speed(AIR, w[..., 4], w[..., 6])
        for lam in (w[..., 2], w[..., 5] - c2, w[..., 5] + c2):
            assert np.all(s_l <= lam + 1e-9)
            assert np.all(lam <= s_r + 1e-9)


def test_solvers_consistent_with_phys_flux(rng):
    w, _ = random_twophase_states(rng, 100, WATER, AIR)
    f_ref = tp.phys_flux(w, WATER, AIR)
    for rec in (tp.rusanov_basic_flux(w, w, WATER, AIR),
                tp.rusanov_local_flux(w, w, WATER, AIR),
                tp.tp_hll_flux(w, w, WATER, AIR),
                tp.rsir_tp_flux(w, w, WATER, AIR, 1.0)):
        assert np.allclose(rec.f_flux, f_ref, rtol=1e-9, atol=1e-5)


def test_beta_zero_is_tp_hll_bitwise(rng):
    wl, wr = random_twophase_states(rng, 300, WATER, AIR)
    rec0 = tp.rsir_tp_flux(wl, wr, WATER, AIR, 0.0)
    rec_h = tp.tp_hll_flux(wl, wr, WATER, AIR)
    assert np.array_equal(rec0.f_flux, rec_h.f_flux)
    assert np.array_equal(rec0.alpha_face, rec_h.alpha_face)
    assert np.array_equal(rec0.phi_alpha_face, rec_h.phi_alpha_face)


def test_star_states_recombine_to_hll(rng):
    wl, wr = random_twophase_states(rng, 200, WATER, AIR, slip=0.1)
    (wl, wr, vl, vr, phil, phir, u_hll,
     s_l, s_m1, s_m2, s_r, rho2_bar, p_i) = tp._tp_fan_common(
         wl, wr, WATER, AIR)
    u_star_l, u_star_r, bad = tp.rsir_reconstruct(
        u_hll, wl, wr, s_l, s_m1, s_m2, s_r, rho2_bar, p_i, 1.0, WATER, AIR)
    om_l = ((s_m1 - s_l) / (s_r - s_l))[..., None]
    om_r = ((s_r - s_m1) / (s_r - s_l))[..., None]
    rec = om_r * u_star_r + om_l * u_star_l
    scale = np.maximum(np.abs(u_hll), 1.0)
    assert np.all(np.abs(rec - u_hll) <= 1e-9 * scale)


def test_psi_vanishes_at_beta_zero(rng):
    wl, wr = random_twophase_states(rng, 50, WATER, AIR)
    (wl, wr, vl, vr, phil, phir, u_hll,
     s_l, s_m1, s_m2, s_r, rho2_bar, p_i) = tp._tp_fan_common(
         wl, wr, WATER, AIR)
    psi = tp._tp_psi(wl, wr, s_m1, s_m2, rho2_bar, p_i, 0.0, WATER, AIR,
                     u_hll[..., 1], u_hll[..., 1])
    assert np.all(psi == 0.0)


def test_mechanical_equilibrium_flux_is_exact():
    """Uniform p and u with an alpha jump: the interface flux must be the
    exact transported flux (no pressure or velocity perturbation)."""
    wl = np.array([[0.8, 1000.0, 100.0, 1e5, 1.0, 100.0, 1e5]])
    wr = np.array([[0.2, 1000.0, 100.0, 1e5, 1.0, 100.0, 1e5]])
    rec = tp.rsir_tp_flux(wl, wr, WATER, AIR, 1.0)
    f_exact = tp.phys_flux(wl, WATER, AIR)  # upwind side (u > 0)
    # the phase momentum slots carry the p_i alpha_face split that the
    # non-conservative cell terms balance; everything else is exact, and
    # so is the mixture momentum flux
    assert np.allclose(rec.f_flux[..., [0, 1, 3, 4, 6]],
                       f_exact[..., [0, 1, 3, 4, 6]], rtol=1e-9)
    assert np.allclose(rec.f_flux[..., 2] + rec.f_flux[..., 5],
                       f_exact[..., 2] + f_exact[..., 5], rtol=1e-12)
    # and the momentum correction is consistent with the face alpha
    assert np.allclose(rec.f_flux[..., 2] + rec.p_i * (wl[..., 0] - rec.alpha_face),
                       f_exact[..., 2], rtol=1e-9)
    assert rec.n_fallback == 0


def test_fallback_counted_on_inadmissible_reconstruction():
    """A huge alpha contrast with tiny apparent densities forces the
    per-interface fallback to the single-state solver."""
    wl = np.array([[0.97, 1000.0, 5.0, 1e5, 1.0, 400.0, 1e5]])
    wr = np.array([[0.03, 1000.0, -5.0, 4e6, 30.0, -400.0, 4e6]])
    rec1 = tp.rsir_tp_flux(wl, wr, WATER, AIR, 1.0)
    rec0 = tp.tp_hll_flux(wl, wr, WATER, AIR)
    if rec1.n_fallback:
        assert np.allclose(rec1.f_flux, rec0.f_flux)


def test_invalid_beta_raises():
    w = np.array([0.5, 1000.0, 0.0, 1e5, 1.0, 0.0, 1e5])
    with pytest.raises(ValueError):
        tp.rsir_tp_flux(w, w, WATER, AIR, 2.0)


def test_mixture_entropy_finite(rng):
    w, _ = random_twophase_states(rng, 50, WATER, AIR)
    s = tp.mixture_entropy(w, WATER, AIR)
    assert np.all(np.isfinite(s))
