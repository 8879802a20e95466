"""Exact Riemann solution for the Euler equations with ideal-gas or SG
EOS, used as a verification oracle only (never as a flux).

SG support comes from working in the shifted pressure pi = p + p_inf:
in that variable the shock and isentrope relations are those of an ideal
gas with the same gamma.
"""

from dataclasses import dataclass

import numpy as np

from . import eos as _eos

__all__ = ["VacuumError", "ExactSolution", "solve_exact", "sample", "l1_error"]

_MAX_ITER = 100


class VacuumError(ValueError):
    """Initial data generate vacuum; no oracle solution exists."""


@dataclass
class ExactSolution:
    p_star: float
    u_star: float
    rho_star_l: float
    rho_star_r: float
    wave_l: str  # "shock" | "rarefaction"
    wave_r: str
    wl: np.ndarray
    wr: np.ndarray
    eos: _eos.EosParams
    residual: float
    iterations: int


def _side_function(p, w, eos):
    """Pressure function f_K(p) and its derivative for one side."""
    g = eos.gamma
    rho, _, pk = w
    pi_k = pk + eos.p_inf
    pi = p + eos.p_inf
    c = np.sqrt(g * pi_k / rho)
    if pi > pi_k:  # shock
        a = 2.0 / ((g + 1.0) * rho)
        b = (g - 1.0) / (g + 1.0) * pi_k
        q = np.sqrt(a / (pi + b))
        f = (pi - pi_k) * q
        df = q * (1.0 - 0.5 * (pi - pi_k) / (pi + b))
    else:  # rarefaction
        f = 2.0 * c / (g - 1.0) * ((pi / pi_k) ** ((g - 1.0) / (2.0 * g)) - 1.0)
        df = (pi / pi_k) ** (-(g + 1.0) / (2.0 * g)) / (rho * c)
    return f, df


def _pressure_residual(p, wl, wr, eos):
    fl, _ = _side_function(p, wl, eos)
    fr, _ = _side_function(p, wr, eos)
    return fl + fr + (wr[1] - wl[1])


def solve_exact(wl, wr, eos):
    """Exact (p*, u*) by Newton iteration on the pressure function, with a
    two-rarefaction initial guess and bisection fallback."""
    if eos.b != 0.0:
        raise ValueError("exact solver supports ideal/SG EOS only (b = 0)")
    wl = np.asarray(wl, dtype=float)
    wr = np.asarray(wr, dtype=float)
    g = eos.gamma
    rho_l, u_l, p_l = wl
    rho_r, u_r, p_r = wr
    cl = float(_eos.sound_speed(eos, rho_l, p_l))
    cr = float(_eos.sound_speed(eos, rho_r, p_r))
    if u_r - u_l >= 2.0 * (cl + cr) / (g - 1.0):
        raise VacuumError("initial velocity divergence creates vacuum")

    pi_l, pi_r = p_l + eos.p_inf, p_r + eos.p_inf
    # two-rarefaction guess in the shifted pressure
    z = (g - 1.0) / (2.0 * g)
    pi_tr = ((cl + cr - 0.5 * (g - 1.0) * (u_r - u_l))
             / (cl / pi_l**z + cr / pi_r**z)) ** (1.0 / z)
    p = max(pi_tr - eos.p_inf, -eos.p_inf + 1e-12 * max(pi_l, pi_r))

    tol = 1e-12 * max(p_l, p_r, 1.0)
    # bisection bracket, expanded until the residual changes sign
    p_lo = -eos.p_inf + 1e-12 * max(pi_l, pi_r)
    p_hi = max(p_l, p_r)
    while _pressure_residual(p_hi, wl, wr, eos) < 0.0:
        p_hi = 2.0 * p_hi + max(pi_l, pi_r)

    converged = False
    res = np.inf
    for it in range(1, _MAX_ITER + 1):
        fl, dfl = _side_function(p, wl, eos)
        fr, dfr = _side_function(p, wr, eos)
        res = fl + fr + (u_r - u_l)
        if res > 0.0:
            p_hi = min(p_hi, p)
        else:
            p_lo = max(p_lo, p)
        dp = res / (dfl + dfr)
        p_new = p - dp
        if not (p_lo < p_new < p_hi):
            p_new = 0.5 * (p_lo + p_hi)
        if abs(p_new - p) <= tol and abs(res) <= 1e-10 * max(p_l, p_r, 1.0):
            p = p_new
            converged = True
            break
        p = p_new
    if not converged and abs(res) > 1e-10 * max(p_l, p_r, 1.0):
        raise RuntimeError(
            f"exact Riemann iteration failed to converge (residual {res!r})"
        )

    u_star = 0.5 * (u_l + u_r) + 0.5 * (
        _side_function(p, wr, eos)[0] - _side_function(p, wl, eos)[0])

    def star_density(w, side):
        rho, _, pk = w
        pi_k = pk + eos.p_inf
        pi = p + eos.p_inf
        if pi > pi_k:  # shock: Rankine-Hugoniot density
            gr = (g - 1.0) / (g + 1.0)
            return rho * (pi / pi_k + gr) / (gr * pi / pi_k + 1.0), "shock"
        return rho * (pi / pi_k) ** (1.0 / g), "rarefaction"

    rho_star_l, wave_l = star_density(wl, "L")
    rho_star_r, wave_r = star_density(wr, "R")
    return ExactSolution(
        p_star=float(p), u_star=float(u_star),
        rho_star_l=float(rho_star_l), rho_star_r=float(rho_star_r),
        wave_l=wave_l, wave_r=wave_r, wl=wl, wr=wr, eos=eos,
        residual=float(abs(res)), iterations=it,
    )


def sample(sol, xi):
    """Self-similar solution at xi = x/t; vectorized over xi.

    Returns primitive states of shape xi.shape + (3,).
    """
    xi = np.asarray(xi, dtype=float)
    eos = sol.eos
    g = eos.gamma
    out = np.empty(xi.shape + (3,), dtype=float)

    rho_l, u_l, p_l = sol.wl
    rho_r, u_r, p_r = sol.wr
    cl = float(_eos.sound_speed(eos, rho_l, p_l))
    cr = float(_eos.sound_speed(eos, rho_r, p_r))
    c_star_l = float(_eos.sound_speed(eos, sol.rho_star_l, sol.p_star))
    c_star_r = float(_eos.sound_speed(eos, sol.rho_star_r, sol.p_star))
    pi_l, pi_r, pi_s = p_l + eos.p_inf, p_r + eos.p_inf, sol.p_star + eos.p_inf

    # left wave
    if sol.wave_l == "shock":
        s_shock = u_l - cl * np.sqrt((g + 1.0) / (2.0 * g) * pi_s / pi_l
                                     + (g - 1.0) / (2.0 * g))
        head_l = tail_l = s_shock
    else:
        head_l = u_l - cl
        tail_l = sol.u_star - c_star_l
    # right wave
    if sol.wave_r == "shock":
        s_shock = u_r + cr * np.sqrt((g + 1.0) / (2.0 * g) * pi_s / pi_r
                                     + (g - 1.0) / (2.0 * g))
        head_r = tail_r = s_shock
    else:
        head_r = u_r + cr
        tail_r = sol.u_star + c_star_r

    # fill by region
    out[xi <= head_l] = sol.wl
    out[xi >= head_r] = sol.wr
    mid_l = (xi > tail_l) & (xi < sol.u_star)
    mid_r = (xi >= sol.u_star) & (xi < tail_r)
    out[mid_l] = [sol.rho_star_l, sol.u_star, sol.p_star]
    out[mid_r] = [sol.rho_star_r, sol.u_star, sol.p_star]
    if sol.wave_l == "rarefaction":
        fan = (xi > head_l) & (xi <= tail_l)
        x = xi[fan]
        c = (2.0 / (g + 1.0)) * (cl + 0.5 * (g - 1.0) * (u_l - x))
        u = x + c
        pi = pi_l * (c / cl) ** (2.0 * g / (g - 1.0))
        rho = g * pi / (c * c)
        out[fan] = np.stack([rho, u, pi - eos.p_inf], axis=-1)
    if sol.wave_r == "rarefaction":
        fan = (xi >= tail_r) & (xi < head_r)
        x = xi[fan]
        c = (2.0 / (g + 1.0)) * (cr - 0.5 * (g - 1.0) * (u_r - x))
        u = x - c
        pi = pi_r * (c / cr) ** (2.0 * g / (g - 1.0))
        rho = g * pi / (c * c)
        out[fan] = np.stack([rho, u, pi - eos.p_inf], axis=-1)
    return out


def l1_error(numerical, sol, t, centers, x0=0.0, component=None):
    """Discrete L1 distance sum_i |q_i - q_exact((x_i - x0)/t)| dx.

    numerical : cell-averaged field, shape (n,) or (n, 3) primitives
    centers   : cell-center coordinates, shape (n,)
    component : index into the primitive vector when numerical is (n,)
    """
    if t <= 0.0:
        raise ValueError("l1_error requires t > 0")
    centers = np.asarray(centers, dtype=float)
    dx = centers[1] - centers[0]
    exact = sample(sol, (centers - x0) / t)
    numerical = np.asarray(numerical, dtype=float)
    if numerical.ndim == 1:
        exact = exact[:, component]
    return float(np.sum(np.abs(numerical - exact)) * dx)
