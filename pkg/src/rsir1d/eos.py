"""Thermodynamic closures: ideal gas, stiffened gas (SG) and Noble-Abel
stiffened gas (NASG).

A single parameter record covers all three families:

    p(rho, e) = (gamma - 1) rho e / (1 - rho b) - gamma p_inf

b = 0 recovers SG, b = 0 and p_inf = 0 recovers the ideal gas.  All
functions are vectorized over numpy arrays and raise ``EosDomainError``
outside the convexity region instead of clamping.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EosParams",
    "EosDomainError",
    "PRESETS",
    "preset",
    "pressure",
    "internal_energy",
    "sound_speed",
    "entropy",
]


class EosDomainError(ValueError):
    """State outside the admissible (convex) region of the EOS."""


@dataclass(frozen=True)
class EosParams:
    """Constants of the NASG pressure law.

    gamma : ratio of specific heats, > 1
    p_inf : pressure offset [Pa], >= 0 (0 for ideal gas)
    b     : covolume [m^3/kg], >= 0 (0 for ideal gas and SG)
    cv    : reference specific heat [J/(kg K)], only used by the
            diagnostic entropy; never feeds any flux.
    """

    gamma: float
    p_inf: float = 0.0
    b: float = 0.0
    cv: float = 1.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.p_inf < 0.0:
            raise ValueError(f"p_inf must be >= 0, got {self.p_inf}")
        if self.b < 0.0:
            raise ValueError(f"covolume b must be >= 0, got {self.b}")
        if not self.cv > 0.0:
            raise ValueError(f"cv must be > 0, got {self.cv}")


PRESETS = {
    "air-ideal": EosParams(gamma=1.4),
    "water-sg": EosParams(gamma=4.4, p_inf=6.0e8),
    "water-nasg": EosParams(gamma=4.4, p_inf=6.0e8, b=5.0e-5),
}


def preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown EOS preset {name!r}; available: {sorted(PRESETS)}"
        ) from None


def _covolume_factor(eos, rho):
    """1 - rho*b, raising if the covolume saturates."""
    rho = np.asarray(rho, dtype=float)
    fac = 1.0 - rho * eos.b
    if np.any(fac <= 0.0):
        bad = np.asarray(rho)[np.asarray(fac) <= 0.0]
        raise EosDomainError(
            f"covolume saturation: 1 - rho*b <= 0 at rho = {np.max(bad)!r}"
        )
    return fac


def pressure(eos, rho, e):
    """Pressure from density and specific internal energy [Pa]."""
    fac = _covolume_factor(eos, rho)
    return (eos.gamma - 1.0) * np.asarray(rho, float) * np.asarray(e, float) / fac \
        - eos.gamma * eos.p_inf


def internal_energy(eos, rho, p):
    """Specific internal energy from density and pressure [J/kg].

    Exact analytic inverse of :func:`pressure`.
    """
    fac = _covolume_factor(eos, rho)
    return (np.asarray(p, float) + eos.gamma * eos.p_inf) * fac \
        / ((eos.gamma - 1.0) * np.asarray(rho, float))


def sound_speed(eos, rho, p):
    """Speed of sound [m/s]; NASG gets the extra 1/(1 - rho b) factor."""
    fac = _covolume_factor(eos, rho)
    rho = np.asarray(rho, float)
    c2 = eos.gamma * (np.asarray(p, float) + eos.p_inf) / (rho * fac)
    if np.any(c2 <= 0.0):
        raise EosDomainError(
            f"non-positive squared sound speed (min c^2 = {np.min(c2)!r}); "
            "state outside convexity region"
        )
    return np.sqrt(c2)


def entropy(eos, rho, p):
    """Diagnostic specific entropy, SG convention:

        s = cv * ln((p + p_inf) * v**gamma),  v = 1/rho - b

    Defined up to an additive constant; isentropes are its level sets.
    """
    rho = np.asarray(rho, float)
    _covolume_factor(eos, rho)
    v = 1.0 / rho - eos.b
    pi = np.asarray(p, float) + eos.p_inf
    if np.any(pi <= 0.0):
        raise EosDomainError(f"p + p_inf must be positive (min {np.min(pi)!r})")
    return eos.cv * (np.log(pi) + eos.gamma * np.log(v))
