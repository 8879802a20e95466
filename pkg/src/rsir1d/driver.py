"""1D finite-volume time integration: uniform mesh, MUSCL-Hancock
reconstruction with Minmod limiter, CFL stepping, boundary conditions,
Godunov update with non-conservative terms, and split relaxation sources.
"""

import time as _time
from dataclasses import dataclass, field

import numpy as np

from . import euler as _euler
from . import twophase as _tp
from . import relaxation as _relax
from .eos import EosDomainError
from .euler import PositivityError, DegenerateFanError

__all__ = [
    "Mesh1D",
    "RunResult",
    "StepError",
    "minmod",
    "apply_boundary",
    "cfl_dt",
    "run",
]

NGHOST = 2


class StepError(RuntimeError):
    """A time step produced an inadmissible state even after dt halving."""


@dataclass(frozen=True)
class Mesh1D:
    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 4:
            raise ValueError("need at least 4 cells (two ghost layers each side)")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def centers(self):
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx


@dataclass
class RunResult:
    mesh: Mesh1D
    snapshots: list          # list of (t, primitive interior field)
    manifest: dict
    final_cons: np.ndarray = None


def minmod(a, b):
    """0 on sign change, otherwise the smaller-magnitude argument."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.where(a * b <= 0.0, 0.0,
                    np.where(np.abs(a) < np.abs(b), a, b))


def apply_boundary(u_int, kind, velocity_slots):
    """Return the interior field extended by two ghost layers per side."""
    n, ncomp = u_int.shape
    ug = np.empty((n + 2 * NGHOST, ncomp))
    ug[NGHOST:-NGHOST] = u_int
    if kind == "transmissive":
        ug[0] = ug[1] = u_int[0]
        ug[-1] = ug[-2] = u_int[-1]
    elif kind == "reflective":
        ug[1] = u_int[0]
        ug[0] = u_int[1]
        ug[-2] = u_int[-1]
        ug[-1] = u_int[-2]
        for s in velocity_slots:
            ug[0:2, s] *= -1.0
            ug[-2:, s] *= -1.0
    elif kind == "periodic":
        ug[0:2] = u_int[-2:]
        ug[-2:] = u_int[0:2]
    else:
        raise ValueError(f"unknown boundary kind {kind!r}")
    return ug


def _max_speed_euler(w, eos):
    from .eos import sound_speed
    c = sound_speed(eos, w[..., 0], w[..., 2])
    return float(np.max(np.abs(w[..., 1]) + c))


def _max_speed_twophase(w, eos2):
    from .eos import sound_speed
    c2 = sound_speed(eos2, w[..., 4], w[..., 6])
    return float(np.max(np.maximum(np.abs(w[..., 2]),
                                   np.abs(w[..., 5]) + c2)))


def cfl_dt(max_speed, dx, cfl):
    if max_speed <= 0.0:
        raise ValueError("zero global wave speed; cannot pick a time step")
    return cfl * dx / max_speed


# ---------------------------------------------------------------------------
# Euler model
# ---------------------------------------------------------------------------

def _euler_flux_fn(solver, eos, beta):
    if solver == "rusanov":
        return lambda wl, wr: _euler.rusanov_flux(wl, wr, eos)
    if solver == "hll":
        return lambda wl, wr: _euler.hll_flux(wl, wr, eos).flux
    if solver == "hllc":
        return lambda wl, wr: _euler.hllc_flux(wl, wr, eos).flux
    if solver == "linde":
        return lambda wl, wr: _euler.linde_flux(wl, wr, eos, beta).flux
    if solver == "rsir":
        if eos.b != 0.0:
            return lambda wl, wr: _euler.rsir_flux_general(wl, wr, eos, beta).flux
        return lambda wl, wr: _euler.rsir_flux(wl, wr, eos, beta).flux
    raise ValueError(f"unknown Euler solver {solver!r}")


def _slopes(w, first_order):
    dw = np.zeros_like(w)
    if not first_order:
        dw[1:-1] = minmod(w[1:-1] - w[:-2], w[2:] - w[1:-1])
    return dw


def _euler_step(u_int, eos, flux_fn, dt, dx, bc, first_order):
    ug = apply_boundary(u_int, bc, velocity_slots=(1,))
    w = _euler.prim_from_cons(ug, eos)
    dw = _slopes(w, first_order)
    wm = w - 0.5 * dw  # left edge of each cell
    wp = w + 0.5 * dw  # right edge
    if not first_order:
        dfl = (_euler.physical_flux(wp, eos)
               - _euler.physical_flux(wm, eos)) * (0.5 * dt / dx)
        um = _euler.cons_from_prim(wm, eos) - dfl
        up = _euler.cons_from_prim(wp, eos) - dfl
        wm = _euler.prim_from_cons(um, eos)
        wp = _euler.prim_from_cons(up, eos)
    # faces j: between cells j+1 and j+2, j = 0..n
    wl = wp[1:-2]
    wr = wm[2:-1]
    f = flux_fn(wl, wr)
    out = u_int - dt / dx * (f[1:] - f[:-1])
    budget = (np.sum(out, axis=0) - np.sum(u_int, axis=0)
              + dt / dx * (f[-1] - f[0]))
    _euler.prim_from_cons(out, eos)  # admissibility check
    return out, budget, {}


# ---------------------------------------------------------------------------
# Two-phase model
# ---------------------------------------------------------------------------

def _tp_flux_fn(solver, eos1, eos2, beta):
    if solver == "rusanov-basic":
        return lambda wl, wr: _tp.rusanov_basic_flux(wl, wr, eos1, eos2)
    if solver == "rusanov-local":
        return lambda wl, wr: _tp.rusanov_local_flux(wl, wr, eos1, eos2)
    if solver == "hll-tp":
        return lambda wl, wr: _tp.tp_hll_flux(wl, wr, eos1, eos2)
    if solver == "rsir-tp":
        return lambda wl, wr: _tp.rsir_tp_flux(wl, wr, eos1, eos2, beta)
    raise ValueError(f"unknown two-phase solver {solver!r}")


_PHI_TO_CONS = [0, 1, 2, 3, 5, 6, 7]  # drop the alpha2 slot


def _tp_step(u_int, eos1, eos2, flux_fn, dt, dx, bc, first_order, clamp_stats):
    ug = apply_boundary(u_int, bc, velocity_slots=(2, 5))
    w = _tp.tp_prim_from_cons(ug, eos1, eos2, clamp_stats)
    dw = _slopes(w, first_order)
    wm = w - 0.5 * dw
    wp = w + 0.5 * dw
    if not first_order:
        # predictor on the locally conservative flux with the cell's own
        # phase-1 pressure as frozen interfacial pressure
        p_cell = w[:, 3]
        dphi = (_tp.local_flux(wp, p_cell, eos1, eos2)
                - _tp.local_flux(wm, p_cell, eos1, eos2))[:, _PHI_TO_CONS]
        dphi *= 0.5 * dt / dx
        um = _tp.tp_cons_from_prim(wm, eos1, eos2) - dphi
        up = _tp.tp_cons_from_prim(wp, eos1, eos2) - dphi
        wm = _tp.tp_prim_from_cons(um, eos1, eos2, clamp_stats)
        wp = _tp.tp_prim_from_cons(up, eos1, eos2, clamp_stats)
    wl = wp[1:-2]
    wr = wm[2:-1]
    rec = flux_fn(wl, wr)
    f = rec.f_flux
    out = u_int - dt / dx * (f[1:] - f[:-1])
    # non-conservative increments, cell-centered interfacial pressure
    p_i_cell = w[NGHOST:-NGHOST, 3]
    h_u = p_i_cell * (rec.alpha_face[1:] - rec.alpha_face[:-1]) / dx
    h_e = p_i_cell * (rec.phi_alpha_face[1:] - rec.phi_alpha_face[:-1]) / dx
    out[:, 2] += dt * h_u
    out[:, 5] -= dt * h_u
    out[:, 3] += dt * h_e
    out[:, 6] -= dt * h_e
    # budgets on the conservative combinations: phase masses, mixture
    # momentum and mixture energy (the H-terms cancel pairwise)
    def total(u):
        return np.array([np.sum(u[:, 1]), np.sum(u[:, 4]),
                         np.sum(u[:, 2] + u[:, 5]),
                         np.sum(u[:, 3] + u[:, 6])])
    fb = np.array([f[:, 1], f[:, 4], f[:, 2] + f[:, 5], f[:, 3] + f[:, 6]])
    budget = total(out) - total(u_int) + dt / dx * (fb[:, -1] - fb[:, 0])
    _tp.tp_prim_from_cons(out, eos1, eos2, clamp_stats)  # admissibility
    extras = {"fallbacks": getattr(rec, "n_fallback", 0)}
    return out, budget, extras


# ---------------------------------------------------------------------------
# Time loop
# ---------------------------------------------------------------------------

def run(case):
    """Integrate a CaseConfig to its end time.

    Returns a RunResult with primitive-field snapshots at the requested
    output times (end time always included) and a manifest recording the
    run parameters, conservation defects and fallback/clamp counters.
    """
    mesh = Mesh1D(case.x_min, case.x_max, case.n_cells)
    dx = mesh.dx
    first_order = case.limiter == "none"
    clamp_stats = {"alpha": 0}
    t_wall = _time.perf_counter()

    if case.model == "euler":
        eos = case.eos1
        w0 = np.where((mesh.centers < case.x_disc)[:, None],
                      np.asarray(case.left, float)[None, :],
                      np.asarray(case.right, float)[None, :])
        u = _euler.cons_from_prim(w0, eos)
        flux_fn = _euler_flux_fn(case.solver, eos, case.beta)

        def one_step(uu, dt):
            return _euler_step(uu, eos, flux_fn, dt, dx, case.boundary,
                               first_order)

        def max_speed(uu):
            return _max_speed_euler(_euler.prim_from_cons(uu, eos), eos)

        def to_prim(uu):
            return _euler.prim_from_cons(uu, eos)

        def budget_defect(budget, uu):
            denom = np.sum(np.abs(uu), axis=0)
            # momentum can sum to ~0 at rest; floor it with the
            # dimensionally matching scale sqrt(mass * energy)
            denom[1] = max(denom[1], np.sqrt(denom[0] * denom[2]))
            return float(np.max(np.abs(budget) / denom))

        apply_sources = None
    else:
        eos1, eos2 = case.eos1, case.eos2
        w0 = np.where((mesh.centers < case.x_disc)[:, None],
                      np.asarray(case.left, float)[None, :],
                      np.asarray(case.right, float)[None, :])
        u = _tp.tp_cons_from_prim(w0, eos1, eos2)
        flux_fn = _tp_flux_fn(case.solver, eos1, eos2, case.beta)

        def one_step(uu, dt):
            return _tp_step(uu, eos1, eos2, flux_fn, dt, dx, case.boundary,
                            first_order, clamp_stats)

        def max_speed(uu):
            return _max_speed_twophase(
                _tp.tp_prim_from_cons(uu, eos1, eos2), eos2)

        def to_prim(uu):
            return _tp.tp_prim_from_cons(uu, eos1, eos2)

        def budget_defect(budget, uu):
            denom = np.array([
                np.sum(np.abs(uu[:, 1])), np.sum(np.abs(uu[:, 4])),
                np.sum(np.abs(uu[:, 2]) + np.abs(uu[:, 5])),
                np.sum(np.abs(uu[:, 3]) + np.abs(uu[:, 6]))])
            denom[2] = max(denom[2],
                           np.sqrt((denom[0] + denom[1]) * denom[3]))
            return float(np.max(np.abs(budget) / denom))

        def apply_sources(uu, dt):
            if case.drag_model == "constant" and case.drag_lambda > 0.0:
                uu = _relax.velocity_relax(uu, case.drag_lambda, dt)
            elif case.drag_model == "clift-gauvin":
                uu = _relax.drag_clift_gauvin(uu, case.drag_radius,
                                              case.drag_mu2, dt)
            if case.pressure_relax:
                uu, _ = _relax.pressure_relax_stiff(uu, eos1, eos2)
            return uu

    out_times = sorted(set(list(case.output_times) + [case.end_time]))
    snapshots = []
    t = 0.0
    step = 0
    max_defect = 0.0
    n_fallback = 0
    n_reject = 0
    if 0.0 in out_times:
        snapshots.append((0.0, to_prim(u)))
        out_times = [x for x in out_times if x > 0.0]

    for t_out in out_times:
        while t < t_out * (1.0 - 1e-14):
            dt = cfl_dt(max_speed(u), dx, case.cfl)
            dt = min(dt, t_out - t)  # land exactly on output times
            for attempt in range(12):
                try:
                    u_new, budget, extras = one_step(u, dt)
                    break
                except (EosDomainError, PositivityError,
                        DegenerateFanError) as err:
                    n_reject += 1
                    dt *= 0.5
                    if attempt == 11:
                        raise StepError(
                            f"step {step} rejected repeatedly at t = {t!r}: "
                            f"{err}") from err
            max_defect = max(max_defect, budget_defect(budget, u_new))
            n_fallback += extras.get("fallbacks", 0)
            if apply_sources is not None:
                u_new = apply_sources(u_new, dt)
            u = u_new
            t += dt
            step += 1
        snapshots.append((t_out, to_prim(u)))

    manifest = {
        "model": case.model,
        "solver": case.solver,
        "beta": case.beta,
        "cfl": case.cfl,
        "n_cells": case.n_cells,
        "limiter": case.limiter,
        "end_time": case.end_time,
        "steps": step,
        "wall_time": _time.perf_counter() - t_wall,
        "max_conservation_defect": max_defect,
        "positivity_fallbacks": n_fallback,
        "alpha_clamps": clamp_stats["alpha"],
        "dt_rejections": n_reject,
    }
    return RunResult(mesh=mesh, snapshots=snapshots, manifest=manifest,
                     final_cons=u)
