"""Dense-dilute two-phase model: state algebra, interfacial-pressure
rule, local conservative formulation, Rusanov variants, and the two-phase
internal-reconstruction solver.

Phase 1 is the dispersed fluid, phase 2 the carrier.  Layouts:

primitive  (7): (alpha1, rho1, u1, p1, rho2, u2, p2)
conserved  (7): (alpha1, (ar)1, (aru)1, (arE)1, (ar)2, (aru)2, (arE)2)
local-conservative state (8): conserved with alpha2 inserted at slot 4:
            (alpha1, (ar)1, (aru)1, (arE)1, alpha2, (ar)2, (aru)2, (arE)2)

The interfacial pressure p_i is frozen per interface (pressure of
phase 1 on the side where that phase is present), which makes the system
locally conservative; the 8-slot flux of that system is called `phi`
throughout.  All functions are vectorized over leading axes.
"""

from dataclasses import dataclass

import numpy as np

from . import eos as _eos
from .euler import DegenerateFanError, PositivityError

__all__ = [
    "ALPHA_FLOOR",
    "TwoPhaseFaceFlux",
    "TwoPhaseFan",
    "tp_cons_from_prim",
    "tp_prim_from_cons",
    "interfacial_pressure",
    "local_state",
    "local_flux",
    "phys_flux",
    "tp_wave_bounds",
    "rusanov_speed",
    "rusanov_basic_flux",
    "rusanov_local_flux",
    "tp_hll_state",
    "rsir_reconstruct",
    "tp_hll_flux",
    "rsir_tp_flux",
    "mixture_entropy",
]

# volume fraction floor applied at state recovery; clamps are counted, not silent
ALPHA_FLOOR = 1e-8


@dataclass
class TwoPhaseFaceFlux:
    """Per-interface flux record shared by every two-phase solver.

    f_flux         : 7-component flux of the non-conservative-form system
    alpha_face     : face value of alpha1 feeding the momentum H-terms
    phi_alpha_face : face value of the alpha1-equation flux (alpha1*u1)
                     feeding the energy H-terms
    p_i            : frozen interfacial pressure of this interface
    """

    f_flux: np.ndarray
    alpha_face: np.ndarray
    phi_alpha_face: np.ndarray
    p_i: np.ndarray


@dataclass
class TwoPhaseFan(TwoPhaseFaceFlux):
    """Reconstruction record of the two-phase internal-reconstruction solver."""

    s_l: np.ndarray = None
    s_m1: np.ndarray = None
    s_m2: np.ndarray = None
    s_r: np.ndarray = None
    u_star_l: np.ndarray = None
    u_star_r: np.ndarray = None
    flux_l: np.ndarray = None  # local-conservative (phi) star flux, left
    flux_r: np.ndarray = None
    beta: float = 1.0
    n_fallback: int = 0


def tp_cons_from_prim(w, eos1, eos2):
    w = np.asarray(w, dtype=float)
    a1 = w[..., 0]
    if np.any((a1 <= 0.0) | (a1 >= 1.0)):
        raise PositivityError(
            f"alpha1 must lie strictly inside (0,1), got extrema "
            f"[{np.min(a1)!r}, {np.max(a1)!r}]"
        )
    a2 = 1.0 - a1
    rho1, u1, p1 = w[..., 1], w[..., 2], w[..., 3]
    rho2, u2, p2 = w[..., 4], w[..., 5], w[..., 6]
    e1 = _eos.internal_energy(eos1, rho1, p1)
    e2 = _eos.internal_energy(eos2, rho2, p2)
    return np.stack([
        a1,
        a1 * rho1,
        a1 * rho1 * u1,
        a1 * rho1 * (e1 + 0.5 * u1 * u1),
        a2 * rho2,
        a2 * rho2 * u2,
        a2 * rho2 * (e2 + 0.5 * u2 * u2),
    ], axis=-1)


def tp_prim_from_cons(uc, eos1, eos2, clamp_stats=None):
    """Recover primitives; alpha1 is clamped to [floor, 1-floor] with the
    clamp count reported through ``clamp_stats`` (a dict with key 'alpha')."""
    uc = np.asarray(uc, dtype=float)
    a1 = uc[..., 0]
    clamped = np.count_nonzero((a1 < ALPHA_FLOOR) | (a1 > 1.0 - ALPHA_FLOOR))
    if clamp_stats is not None:
        clamp_stats["alpha"] = clamp_stats.get("alpha", 0) + int(clamped)
    a1 = np.clip(a1, ALPHA_FLOOR, 1.0 - ALPHA_FLOOR)
    a2 = 1.0 - a1
    m1, q1, en1 = uc[..., 1], uc[..., 2], uc[..., 3]
    m2, q2, en2 = uc[..., 4], uc[..., 5], uc[..., 6]
    if np.any(m1 <= 0.0) or np.any(m2 <= 0.0):
        raise PositivityError(
            f"non-positive apparent density (min phase1 {np.min(m1)!r}, "
            f"phase2 {np.min(m2)!r})"
        )
    rho1 = m1 / a1
    rho2 = m2 / a2
    u1 = q1 / m1
    u2 = q2 / m2
    e1 = en1 / m1 - 0.5 * u1 * u1
    e2 = en2 / m2 - 0.5 * u2 * u2
    p1 = _eos.pressure(eos1, rho1, e1)
    p2 = _eos.pressure(eos2, rho2, e2)
    if np.any(p1 + eos1.p_inf <= 0.0) or np.any(p2 + eos2.p_inf <= 0.0):
        raise PositivityError(
            f"recovered phase pressure below -p_inf (min p1 {np.min(p1)!r}, "
            f"min p2 {np.min(p2)!r})"
        )
    return np.stack([a1, rho1, u1, p1, rho2, u2, p2], axis=-1)


def interfacial_pressure(wl, wr):
    """p_i = phase-1 pressure on the side where phase 1 is present; the
    average of the two phase-1 pressures breaks exact ties."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    a1l, a1r = wl[..., 0], wr[..., 0]
    p1l, p1r = wl[..., 3], wr[..., 3]
    return np.where(a1l > a1r, p1l,
                    np.where(a1l < a1r, p1r, 0.5 * (p1l + p1r)))


def local_state(uc):
    """7-component conserved vector -> 8-component local-conservative state."""
    uc = np.asarray(uc, dtype=float)
    return np.concatenate([
        uc[..., :4], 1.0 - uc[..., :1], uc[..., 4:]], axis=-1)


def local_flux(w, p_i, eos1, eos2):
    """Flux of the locally conservative system for frozen p_i (8 slots)."""
    w = np.asarray(w, dtype=float)
    p_i = np.asarray(p_i, dtype=float)
    a1 = w[..., 0]
    a2 = 1.0 - a1
    rho1, u1, p1 = w[..., 1], w[..., 2], w[..., 3]
    rho2, u2, p2 = w[..., 4], w[..., 5], w[..., 6]
    e1 = _eos.internal_energy(eos1, rho1, p1)
    e2 = _eos.internal_energy(eos2, rho2, p2)
    en1 = a1 * rho1 * (e1 + 0.5 * u1 * u1)
    en2 = a2 * rho2 * (e2 + 0.5 * u2 * u2)
    return np.stack([
        a1 * u1,
        a1 * rho1 * u1,
        a1 * rho1 * u1 * u1 + a1 * (p1 - p_i),
        (en1 + a1 * (p1 - p_i)) * u1,
        -a1 * u1,
        a2 * rho2 * u2,
        a2 * rho2 * u2 * u2 + a2 * (p2 - p_i),
        (en2 + a2 * p2) * u2 + p_i * a1 * u1,
    ], axis=-1)


def phys_flux(w, eos1, eos2):
    """Flux F of the non-conservative formulation (7 slots)."""
    w = np.asarray(w, dtype=float)
    a1 = w[..., 0]
    a2 = 1.0 - a1
    rho1, u1, p1 = w[..., 1], w[..., 2], w[..., 3]
    rho2, u2, p2 = w[..., 4], w[..., 5], w[..., 6]
    e1 = _eos.internal_energy(eos1, rho1, p1)
    e2 = _eos.internal_energy(eos2, rho2, p2)
    en1 = a1 * rho1 * (e1 + 0.5 * u1 * u1)
    en2 = a2 * rho2 * (e2 + 0.5 * u2 * u2)
    return np.stack([
        a1 * u1,
        a1 * rho1 * u1,
        a1 * rho1 * u1 * u1 + a1 * p1,
        (en1 + a1 * p1) * u1,
        a2 * rho2 * u2,
        a2 * rho2 * u2 * u2 + a2 * p2,
        (en2 + a2 * p2) * u2,
    ], axis=-1)


def _eigen_extrema(w, eos2):
    c2 = _eos.sound_speed(eos2, w[..., 4], w[..., 6])
    u1 = w[..., 2]
    u2 = w[..., 5]
    lo = np.minimum(u1, u2 - c2)
    hi = np.maximum(u1, u2 + c2)
    return lo, hi


def tp_wave_bounds(wl, wr, eos2):
    """Davis-type exterior bounds over the eigenvalues u1, u2 -+ c2."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    lo_l, hi_l = _eigen_extrema(wl, eos2)
    lo_r, hi_r = _eigen_extrema(wr, eos2)
    return np.minimum(lo_l, lo_r), np.maximum(hi_l, hi_r)


def rusanov_speed(wl, wr, eos2):
    """S = max over both states of max_k |lambda_k|."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    lo_l, hi_l = _eigen_extrema(wl, eos2)
    lo_r, hi_r = _eigen_extrema(wr, eos2)
    return np.maximum(np.maximum(np.abs(lo_l), hi_l),
                      np.maximum(np.abs(lo_r), hi_r))


def rusanov_basic_flux(wl, wr, eos1, eos2):
    """Rusanov flux on the non-conservative form; pairs with arithmetic
    face averages in the H-terms."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    s = rusanov_speed(wl, wr, eos2)[..., None]
    ul = tp_cons_from_prim(wl, eos1, eos2)
    ur = tp_cons_from_prim(wr, eos1, eos2)
    f = 0.5 * (phys_flux(wr, eos1, eos2) + phys_flux(wl, eos1, eos2)
               - s * (ur - ul))
    alpha_face = 0.5 * (wl[..., 0] + wr[..., 0])
    phi_alpha_face = 0.5 * (wl[..., 0] * wl[..., 2] + wr[..., 0] * wr[..., 2])
    return TwoPhaseFaceFlux(f_flux=f, alpha_face=alpha_face,
                            phi_alpha_face=phi_alpha_face,
                            p_i=interfacial_pressure(wl, wr))


def rusanov_local_flux(wl, wr, eos1, eos2):
    """Rusanov flux built on the locally conservative system; the F-flux
    of the non-conservative form is recovered by adding the frozen-p_i
    corrections."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    p_i = interfacial_pressure(wl, wr)
    s = rusanov_speed(wl, wr, eos2)
    ul = local_state(tp_cons_from_prim(wl, eos1, eos2))
    ur = local_state(tp_cons_from_prim(wr, eos1, eos2))
    phil = local_flux(wl, p_i, eos1, eos2)
    phir = local_flux(wr, p_i, eos1, eos2)
    phi_star = 0.5 * (phir + phil - s[..., None] * (ur - ul))
    # face volume fractions from the Rusanov intermediate state
    a1l, a1r = wl[..., 0], wr[..., 0]
    au1l = a1l * wl[..., 2]
    au1r = a1r * wr[..., 2]
    a1_star = 0.5 * (a1r + a1l - (au1r - au1l) / s)
    a2_star = 0.5 * ((1.0 - a1r) + (1.0 - a1l) - (-au1r + au1l) / s)
    f = np.stack([
        phi_star[..., 0],
        phi_star[..., 1],
        phi_star[..., 2] + p_i * a1_star,
        phi_star[..., 3] + p_i * phi_star[..., 0],
        phi_star[..., 5],
        phi_star[..., 6] + p_i * a2_star,
        phi_star[..., 7] + p_i * phi_star[..., 4],
    ], axis=-1)
    return TwoPhaseFaceFlux(f_flux=f, alpha_face=a1_star,
                            phi_alpha_face=phi_star[..., 0], p_i=p_i)


def tp_hll_state(vl, vr, phil, phir, s_l, s_r):
    """HLL state of the local conservative system plus the two contact
    speeds and the prolonged carrier density.

    Returns (u_hll, s_m1, s_m2, rho2_bar).
    """
    if np.any(s_r - s_l <= 0.0):
        raise DegenerateFanError("degenerate two-phase fan: S_L >= S_R")
    sl = np.asarray(s_l, float)[..., None]
    sr = np.asarray(s_r, float)[..., None]
    u_hll = (np.asarray(phir, float) - np.asarray(phil, float)
             + sl * np.asarray(vl, float) - sr * np.asarray(vr, float)) / (sl - sr)
    for slot, name in ((1, "phase 1"), (5, "phase 2")):
        if np.any(u_hll[..., slot] <= 0.0):
            raise PositivityError(
                f"non-positive HLL apparent density for {name}")
    s_m1 = u_hll[..., 2] / u_hll[..., 1]
    s_m2 = u_hll[..., 6] / u_hll[..., 5]
    rho2_bar = u_hll[..., 5] / u_hll[..., 4]
    return u_hll, s_m1, s_m2, rho2_bar


def _tp_psi(wl, wr, s_m1, s_m2, rho2_bar, p_i, beta, eos1, eos2,
            m1_star_l, m1_star_r):
    """Jump vector psi across the phase-1 contact wave (8 slots).

    The phase-1 energy component needs the already-reconstructed star
    masses, hence the two extra arguments; pass None on the first call
    and fill the slot afterwards.
    """
    a1l, a1r = wl[..., 0], wr[..., 0]
    m1l = a1l * wl[..., 1]
    m1r = a1r * wr[..., 1]
    d_a1 = beta * (a1r - a1l)
    d_m1 = beta * (m1r - m1l)
    g1 = eos1.gamma
    g2 = eos2.gamma
    psi = np.zeros(np.broadcast(a1l, a1r).shape + (8,))
    psi[..., 0] = d_a1
    psi[..., 1] = d_m1
    psi[..., 2] = d_m1 * s_m1
    if m1_star_l is not None:
        # the velocity terms also carry beta so that beta = 0 degenerates
        # exactly to the single-state HLL solver
        u1l = wl[..., 2]
        u1r = wr[..., 2]
        psi[..., 3] = (d_a1 * (p_i + g1 * eos1.p_inf) / (g1 - 1.0)
                       + d_m1 * 0.5 * s_m1 * s_m1
                       + beta * (m1_star_l * u1l * (u1l - s_m1)
                                 - m1_star_r * u1r * (u1r - s_m1)) / (g1 - 1.0))
    # phase 2: alpha2 jump is minus the phase-1 jump, carrier density
    # prolonged as rho2_bar, single carrier star velocity S_M2
    d_a2 = -d_a1
    psi[..., 4] = d_a2
    psi[..., 5] = d_a2 * rho2_bar
    psi[..., 6] = d_a2 * rho2_bar * s_m2
    psi[..., 7] = d_a2 * (
        rho2_bar * (0.5 * s_m2 * s_m2 - s_m2 * (s_m2 - s_m1) / (g2 - 1.0))
        + (p_i + g2 * eos2.p_inf) / (g2 - 1.0))
    return psi


def rsir_reconstruct(u_hll, wl, wr, s_l, s_m1, s_m2, s_r, rho2_bar, p_i,
                     beta, eos1, eos2):
    """Split the HLL state into two star states using the phase-1 contact
    jump conditions (mass/momentum first, then energy) and the prolonged
    carrier-density closure for phase 2.

    Returns (u_star_l, u_star_r, bad) where ``bad`` flags interfaces whose
    reconstruction left the admissible region (caller falls back to beta=0).
    """
    om_l = (s_m1 - s_l) / (s_r - s_l)
    om_r = (s_r - s_m1) / (s_r - s_l)
    psi = _tp_psi(wl, wr, s_m1, s_m2, rho2_bar, p_i, beta, eos1, eos2,
                  None, None)
    u_star_l = u_hll - om_r[..., None] * psi
    u_star_r = u_hll + om_l[..., None] * psi
    # energy slot of phase 1 depends on the star masses just computed
    psi = _tp_psi(wl, wr, s_m1, s_m2, rho2_bar, p_i, beta, eos1, eos2,
                  u_star_l[..., 1], u_star_r[..., 1])
    u_star_l[..., 3] = u_hll[..., 3] - om_r * psi[..., 3]
    u_star_r[..., 3] = u_hll[..., 3] + om_l * psi[..., 3]
    bad = np.zeros(np.shape(s_m1), dtype=bool)
    for star in (u_star_l, u_star_r):
        bad |= (star[..., 0] < ALPHA_FLOOR) | (star[..., 0] > 1.0 - ALPHA_FLOOR)
        bad |= (star[..., 4] < ALPHA_FLOOR) | (star[..., 4] > 1.0 - ALPHA_FLOOR)
        bad |= (star[..., 1] <= 0.0) | (star[..., 5] <= 0.0)
    return u_star_l, u_star_r, bad


def _tp_flux_from_fan(wl, wr, vl, vr, phil, phir, u_hll, u_star_l, u_star_r,
                      s_l, s_m1, s_m2, s_r, p_i, beta, eos1, eos2,
                      n_fallback=0):
    phi_star_l = phil + np.asarray(s_l)[..., None] * (u_star_l - vl)
    phi_star_r = phir + np.asarray(s_r)[..., None] * (u_star_r - vr)

    a1l, a1r = wl[..., 0], wr[..., 0]
    au1l = a1l * wl[..., 2]
    au1r = a1r * wr[..., 2]
    # HLL-form face volume fraction, sampled in the supersonic branches
    a1_face = (au1r - au1l + s_l * a1l - s_r * a1r) / (s_l - s_r)
    a1_face = np.where(s_l >= 0.0, a1l, np.where(s_r <= 0.0, a1r, a1_face))
    # face value of the alpha1-equation flux, same sampling as the F-flux
    phi_a1 = np.where(s_m1 >= 0.0, phi_star_l[..., 0], phi_star_r[..., 0])
    phi_a1 = np.where(s_l >= 0.0, au1l, phi_a1)
    phi_a1 = np.where(s_r <= 0.0, au1r, phi_a1)

    def f_from_phi(phi_star, phi_a1_side):
        return np.stack([
            phi_star[..., 0],
            phi_star[..., 1],
            phi_star[..., 2] + p_i * a1_face,
            phi_star[..., 3] + p_i * phi_a1_side,
            phi_star[..., 5],
            phi_star[..., 6] + p_i * (1.0 - a1_face),
            phi_star[..., 7] - p_i * phi_a1_side,
        ], axis=-1)

    f_star_l = f_from_phi(phi_star_l, phi_star_l[..., 0])
    f_star_r = f_from_phi(phi_star_r, phi_star_r[..., 0])
    fl = phys_flux(wl, eos1, eos2)
    fr = phys_flux(wr, eos1, eos2)
    s_m1_e = s_m1[..., None]
    flux = np.where(s_m1_e >= 0.0, f_star_l, f_star_r)
    flux = np.where(np.asarray(s_l)[..., None] >= 0.0, fl, flux)
    flux = np.where(np.asarray(s_r)[..., None] <= 0.0, fr, flux)
    return TwoPhaseFan(
        f_flux=flux, alpha_face=a1_face, phi_alpha_face=phi_a1, p_i=p_i,
        s_l=s_l, s_m1=s_m1, s_m2=s_m2, s_r=s_r,
        u_star_l=u_star_l, u_star_r=u_star_r,
        flux_l=phi_star_l, flux_r=phi_star_r, beta=beta,
        n_fallback=n_fallback)


def _tp_fan_common(wl, wr, eos1, eos2):
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    s_l, s_r = tp_wave_bounds(wl, wr, eos2)
    p_i = interfacial_pressure(wl, wr)
    vl = local_state(tp_cons_from_prim(wl, eos1, eos2))
    vr = local_state(tp_cons_from_prim(wr, eos1, eos2))
    phil = local_flux(wl, p_i, eos1, eos2)
    phir = local_flux(wr, p_i, eos1, eos2)
    u_hll, s_m1, s_m2, rho2_bar = tp_hll_state(vl, vr, phil, phir, s_l, s_r)
    return wl, wr, vl, vr, phil, phir, u_hll, s_l, s_m1, s_m2, s_r, rho2_bar, p_i


def tp_hll_flux(wl, wr, eos1, eos2):
    """Pure two-phase HLL flux: both star states equal the HLL state."""
    (wl, wr, vl, vr, phil, phir, u_hll,
     s_l, s_m1, s_m2, s_r, rho2_bar, p_i) = _tp_fan_common(wl, wr, eos1, eos2)
    return _tp_flux_from_fan(wl, wr, vl, vr, phil, phir, u_hll,
                             u_hll.copy(), u_hll.copy(),
                             s_l, s_m1, s_m2, s_r, p_i, 0.0, eos1, eos2)


def rsir_tp_flux(wl, wr, eos1, eos2, beta):
    """Two-phase internal-reconstruction flux with per-interface beta=0
    fallback when a reconstructed star state is inadmissible."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0,1], got {beta}")
    (wl, wr, vl, vr, phil, phir, u_hll,
     s_l, s_m1, s_m2, s_r, rho2_bar, p_i) = _tp_fan_common(wl, wr, eos1, eos2)
    u_star_l, u_star_r, bad = rsir_reconstruct(
        u_hll, wl, wr, s_l, s_m1, s_m2, s_r, rho2_bar, p_i, beta, eos1, eos2)
    n_fallback = int(np.count_nonzero(bad))
    if n_fallback:
        u_star_l = np.where(bad[..., None], u_hll, u_star_l)
        u_star_r = np.where(bad[..., None], u_hll, u_star_r)
    return _tp_flux_from_fan(wl, wr, vl, vr, phil, phir, u_hll,
                             u_star_l, u_star_r, s_l, s_m1, s_m2, s_r,
                             p_i, beta, eos1, eos2, n_fallback)


def mixture_entropy(w, eos1, eos2):
    """Diagnostic mixture entropy alpha1 rho1 s1 + alpha2 rho2 s2."""
    w = np.asarray(w, float)
    a1 = w[..., 0]
    s1 = _eos.entropy(eos1, w[..., 1], w[..., 3])
    s2 = _eos.entropy(eos2, w[..., 4], w[..., 6])
    return a1 * w[..., 1] * s1 + (1.0 - a1) * w[..., 4] * s2
