"""Single-phase Euler flux kernels.

States are numpy arrays with a trailing component axis of size 3:
primitive (rho, u, p) and conserved (rho, rho*u, rho*E).  All flux
functions are vectorized over any number of interfaces, so a batch of
shape (n, 3) evaluates n Riemann fans at once.

Interface solvers: Rusanov, HLL, HLLC, the original Linde two-state
reconstruction, and the internal-reconstruction solver with the
quasi-isentropic contact closure (ideal/SG path and the general convex
EOS path used for NASG).
"""

from dataclasses import dataclass

import numpy as np

from . import eos as _eos
from .eos import EosParams, EosDomainError

__all__ = [
    "DegenerateFanError",
    "PositivityError",
    "WrongClosureError",
    "EulerFan",
    "cons_from_prim",
    "prim_from_cons",
    "physical_flux",
    "davis_wave_speeds",
    "hll_state",
    "contact_speed",
    "rusanov_flux",
    "hll_flux",
    "linde_flux",
    "rsir_flux",
    "rsir_flux_general",
    "hllc_flux",
]


class DegenerateFanError(ValueError):
    """Left and right wave speed estimates collapsed (S_L = S_R)."""


class PositivityError(ValueError):
    """A reconstructed star state left the admissible region."""


class WrongClosureError(TypeError):
    """EOS incompatible with the requested contact closure."""


@dataclass
class EulerFan:
    """Per-interface Riemann fan record.

    s_l, s_m, s_r : wave speeds
    u_star_l, u_star_r : reconstructed star states (conserved)
    beta : reconstruction viscosity parameter in [0, 1]
    flux : sampled interface flux
    """

    s_l: np.ndarray
    s_m: np.ndarray
    s_r: np.ndarray
    u_star_l: np.ndarray
    u_star_r: np.ndarray
    beta: float
    flux: np.ndarray


def cons_from_prim(w, eos):
    """(rho, u, p) -> (rho, rho u, rho E) with E = e + u^2/2."""
    w = np.asarray(w, dtype=float)
    rho, u, p = w[..., 0], w[..., 1], w[..., 2]
    if np.any(rho <= 0.0):
        raise EosDomainError(f"non-positive density (min {np.min(rho)!r})")
    e = _eos.internal_energy(eos, rho, p)
    return np.stack([rho, rho * u, rho * (e + 0.5 * u * u)], axis=-1)


def prim_from_cons(uc, eos):
    """Inverse of :func:`cons_from_prim`."""
    uc = np.asarray(uc, dtype=float)
    rho = uc[..., 0]
    if np.any(rho <= 0.0):
        raise EosDomainError(f"non-positive density (min {np.min(rho)!r})")
    u = uc[..., 1] / rho
    e = uc[..., 2] / rho - 0.5 * u * u
    p = _eos.pressure(eos, rho, e)
    if np.any(p + eos.p_inf <= 0.0):
        raise EosDomainError(
            f"recovered pressure below -p_inf (min p = {np.min(p)!r})"
        )
    return np.stack([rho, u, p], axis=-1)


def physical_flux(w, eos):
    """F(U) = (rho u, rho u^2 + p, (rho E + p) u)."""
    w = np.asarray(w, dtype=float)
    rho, u, p = w[..., 0], w[..., 1], w[..., 2]
    e = _eos.internal_energy(eos, rho, p)
    etot = rho * (e + 0.5 * u * u)
    return np.stack([rho * u, rho * u * u + p, (etot + p) * u], axis=-1)


def davis_wave_speeds(wl, wr, eos):
    """Davis exterior wave-speed estimates (signed form):

        S_L = min(u_L - c_L, u_R - c_R),  S_R = max(u_L + c_L, u_R + c_R)
    """
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    cl = _eos.sound_speed(eos, wl[..., 0], wl[..., 2])
    cr = _eos.sound_speed(eos, wr[..., 0], wr[..., 2])
    s_l = np.minimum(wl[..., 1] - cl, wr[..., 1] - cr)
    s_r = np.maximum(wl[..., 1] + cl, wr[..., 1] + cr)
    return s_l, s_r


def _check_fan(s_l, s_r):
    if np.any(s_r - s_l <= 0.0):
        raise DegenerateFanError("degenerate fan: S_L >= S_R")


def hll_state(ul, ur, fl, fr, s_l, s_r):
    """Single intermediate state from integral consistency:

        U*_HLL = (F_R - F_L + S_L U_L - S_R U_R) / (S_L - S_R)
    """
    _check_fan(s_l, s_r)
    s_l = np.asarray(s_l, float)[..., None]
    s_r = np.asarray(s_r, float)[..., None]
    return (np.asarray(fr, float) - np.asarray(fl, float)
            + s_l * np.asarray(ul, float) - s_r * np.asarray(ur, float)) / (s_l - s_r)


def contact_speed(wl, wr, s_l, s_r):
    """Contact wave speed S_M from the Rankine-Hugoniot conditions across
    the two exterior waves (same estimate as HLLC)."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    rho_l, u_l, p_l = wl[..., 0], wl[..., 1], wl[..., 2]
    rho_r, u_r, p_r = wr[..., 0], wr[..., 1], wr[..., 2]
    ml = rho_l * (s_l - u_l)
    mr = rho_r * (s_r - u_r)
    den = ml - mr
    if np.any(den == 0.0):
        raise DegenerateFanError("vanishing denominator in contact speed")
    return (p_r - p_l + u_l * ml - u_r * mr) / den


def rusanov_flux(wl, wr, eos):
    """Rusanov flux with S = max(|u| + c) over both states."""
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    cl = _eos.sound_speed(eos, wl[..., 0], wl[..., 2])
    cr = _eos.sound_speed(eos, wr[..., 0], wr[..., 2])
    s = np.maximum(np.abs(wl[..., 1]) + cl, np.abs(wr[..., 1]) + cr)[..., None]
    fl = physical_flux(wl, eos)
    fr = physical_flux(wr, eos)
    ul = cons_from_prim(wl, eos)
    ur = cons_from_prim(wr, eos)
    return 0.5 * (fr + fl - s * (ur - ul))


def _sample(fl, fr, f_star_l, f_star_r, s_l, s_m, s_r):
    """Four-branch flux sampling.  At S_M = 0 the left star flux is used."""
    s_l = np.asarray(s_l, float)[..., None]
    s_m = np.asarray(s_m, float)[..., None]
    s_r = np.asarray(s_r, float)[..., None]
    out = np.where(s_m >= 0.0, f_star_l, f_star_r)
    out = np.where(s_l >= 0.0, fl, out)
    out = np.where(s_r <= 0.0, fr, out)
    return out


def _fan_common(wl, wr, eos):
    wl = np.asarray(wl, float)
    wr = np.asarray(wr, float)
    s_l, s_r = davis_wave_speeds(wl, wr, eos)
    _check_fan(s_l, s_r)
    ul = cons_from_prim(wl, eos)
    ur = cons_from_prim(wr, eos)
    fl = physical_flux(wl, eos)
    fr = physical_flux(wr, eos)
    u_hll = hll_state(ul, ur, fl, fr, s_l, s_r)
    s_m = contact_speed(wl, wr, s_l, s_r)
    return wl, wr, ul, ur, fl, fr, u_hll, s_l, s_m, s_r


def _build_fan(ul, ur, fl, fr, u_star_l, u_star_r, s_l, s_m, s_r, beta):
    f_star_l = fl + np.asarray(s_l)[..., None] * (u_star_l - ul)
    f_star_r = fr + np.asarray(s_r)[..., None] * (u_star_r - ur)
    flux = _sample(fl, fr, f_star_l, f_star_r, s_l, s_m, s_r)
    return EulerFan(s_l=s_l, s_m=s_m, s_r=s_r, u_star_l=u_star_l,
                    u_star_r=u_star_r, beta=beta, flux=flux)


def hll_flux(wl, wr, eos):
    """HLL solver written as the beta = 0 member of the reconstruction
    family: both star states equal U*_HLL, fluxes through the per-wave
    Rankine-Hugoniot relations, same sampling as the two-state solvers."""
    wl, wr, ul, ur, fl, fr, u_hll, s_l, s_m, s_r = _fan_common(wl, wr, eos)
    return _build_fan(ul, ur, fl, fr, u_hll.copy(), u_hll.copy(),
                      s_l, s_m, s_r, 0.0)


def _check_beta(beta):
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0,1], got {beta}")


def linde_flux(wl, wr, eos, beta):
    """Original Linde reconstruction: U_R* - U_L* = beta (U_R - U_L)."""
    _check_beta(beta)
    wl, wr, ul, ur, fl, fr, u_hll, s_l, s_m, s_r = _fan_common(wl, wr, eos)
    om_l, om_r = _weights(s_l, s_m, s_r)
    jump = beta * (ur - ul)
    u_star_l = u_hll - om_r[..., None] * jump
    u_star_r = u_hll + om_l[..., None] * jump
    return _build_fan(ul, ur, fl, fr, u_star_l, u_star_r, s_l, s_m, s_r, beta)


def _weights(s_l, s_m, s_r):
    den = s_r - s_l
    return (s_m - s_l) / den, (s_r - s_m) / den


def rsir_flux(wl, wr, eos, beta):
    """Internal reconstruction with the quasi-isentropic contact closure,
    valid for ideal-gas and SG EOS (the energy closure assumes rho*e is a
    function of p only):

        psi = beta [rho_R - rho_L + (p_L - p_R)/cbar^2]
        U_L* = U*_HLL - omega_R psi Lambda,  Lambda = (1, S_M, S_M^2/2)
        U_R* = U*_HLL + omega_L psi Lambda
    """
    _check_beta(beta)
    if eos.b != 0.0:
        raise WrongClosureError(
            "rsir_flux assumes ideal/SG EOS (b = 0); use rsir_flux_general "
            "for NASG"
        )
    wl, wr, ul, ur, fl, fr, u_hll, s_l, s_m, s_r = _fan_common(wl, wr, eos)
    om_l, om_r = _weights(s_l, s_m, s_r)
    cl2 = eos.gamma * (wl[..., 2] + eos.p_inf) / wl[..., 0]
    cr2 = eos.gamma * (wr[..., 2] + eos.p_inf) / wr[..., 0]
    cbar2 = 0.5 * (cl2 + cr2)
    psi = beta * (wr[..., 0] - wl[..., 0] + (wl[..., 2] - wr[..., 2]) / cbar2)
    lam = np.stack([np.ones_like(s_m), s_m, 0.5 * s_m * s_m], axis=-1)
    jump = psi[..., None] * lam
    u_star_l = u_hll - om_r[..., None] * jump
    u_star_r = u_hll + om_l[..., None] * jump
    return _build_fan(ul, ur, fl, fr, u_star_l, u_star_r, s_l, s_m, s_r, beta)


def rsir_flux_general(wl, wr, eos, beta):
    """Internal reconstruction for a general convex EOS (NASG included).

    Star densities follow the same averaged quasi-isentropic density jump
    as :func:`rsir_flux`; star pressures come from the per-side relations
    p_k* = p_k + c_k^2 (rho_k* - rho_k), merged into the single contact
    pressure p* = (p_L*-estimate + p_R*-estimate)/2 so the contact
    condition p_L* = p_R* holds exactly; the energy jump evaluates the EOS
    at the star states.  Reduces exactly to :func:`rsir_flux` for SG.
    """
    _check_beta(beta)
    wl, wr, ul, ur, fl, fr, u_hll, s_l, s_m, s_r = _fan_common(wl, wr, eos)
    om_l, om_r = _weights(s_l, s_m, s_r)
    rho_l, p_l = wl[..., 0], wl[..., 2]
    rho_r, p_r = wr[..., 0], wr[..., 2]
    cl = _eos.sound_speed(eos, rho_l, p_l)
    cr = _eos.sound_speed(eos, rho_r, p_r)
    cbar2 = 0.5 * (cl * cl + cr * cr)
    psi_rho = beta * (rho_r - rho_l + (p_l - p_r) / cbar2)
    rho_star_l = u_hll[..., 0] - om_r * psi_rho
    rho_star_r = u_hll[..., 0] + om_l * psi_rho
    if np.any(rho_star_l <= 0.0) or np.any(rho_star_r <= 0.0):
        raise PositivityError("non-positive reconstructed star density")
    # Contact pressure: average of the two quasi-isentropic estimates.
    p_star = 0.5 * (p_l + cl * cl * (rho_star_l - rho_l)
                    + p_r + cr * cr * (rho_star_r - rho_r))
    if np.any(p_star + eos.p_inf <= 0.0):
        bad = np.argmin(p_star + eos.p_inf)
        raise PositivityError(
            f"star pressure below -p_inf at interface {bad} (p* = {np.min(p_star)!r})"
        )
    try:
        e_star_l = _eos.internal_energy(eos, rho_star_l, p_star)
        e_star_r = _eos.internal_energy(eos, rho_star_r, p_star)
    except EosDomainError as err:
        raise PositivityError(f"inadmissible star state: {err}") from err
    psi_e = (rho_star_r * e_star_r - rho_star_l * e_star_l
             + psi_rho * 0.5 * s_m * s_m)
    jump = np.stack([psi_rho, psi_rho * s_m, psi_e], axis=-1)
    u_star_l = u_hll - om_r[..., None] * jump
    u_star_r = u_hll + om_l[..., None] * jump
    return _build_fan(ul, ur, fl, fr, u_star_l, u_star_r, s_l, s_m, s_r, beta)


def hllc_flux(wl, wr, eos):
    """Standard HLLC star states (comparison baseline)."""
    wl, wr, ul, ur, fl, fr, _, s_l, s_m, s_r = _fan_common(wl, wr, eos)

    def star(w, uc, s):
        rho, u, p = w[..., 0], w[..., 1], w[..., 2]
        fac = rho * (s - u) / (s - s_m)
        energy = uc[..., 2] / rho + (s_m - u) * (s_m + p / (rho * (s - u)))
        return fac[..., None] * np.stack(
            [np.ones_like(s_m), s_m, energy], axis=-1)

    u_star_l = star(wl, ul, s_l)
    u_star_r = star(wr, ur, s_r)
    return _build_fan(ul, ur, fl, fr, u_star_l, u_star_r, s_l, s_m, s_r, 1.0)
