"""Shared generators for randomized admissible states (seeded numpy RNG)."""

import numpy as np
import pytest

from rsir1d import eos as _eos


def random_euler_states(rng, n, eos, mach_max=2.0):
    """Pairs (wl, wr) of admissible primitive states for one EOS."""
    if eos.p_inf > 0.0:
        rho = rng.uniform(800.0, 1300.0, size=(2, n))
        p = 10.0 ** rng.uniform(4.0, 9.0, size=(2, n))
    else:
        rho = 10.0 ** rng.uniform(-1.5, 1.0, size=(2, n))
        p = 10.0 ** rng.uniform(3.0, 6.5, size=(2, n))
    if eos.b > 0.0:
        rho = np.minimum(rho, 0.5 / eos.b)
    c = _eos.sound_speed(eos, rho, p)
    u = rng.uniform(-mach_max, mach_max, size=(2, n)) * c
    wl = np.stack([rho[0], u[0], p[0]], axis=-1)
    wr = np.stack([rho[1], u[1], p[1]], axis=-1)
    return wl, wr


def random_twophase_states(rng, n, eos1, eos2, slip=0.3):
    """Pairs (wl, wr) of admissible two-phase primitive states."""
    out = []
    for _ in range(2):
        a1 = rng.uniform(0.05, 0.95, size=n)
        rho1 = rng.uniform(800.0, 1300.0, size=n)
        p1 = 10.0 ** rng.uniform(4.5, 7.5, size=n)
        rho2 = 10.0 ** rng.uniform(-0.5, 1.5, size=n)
        p2 = 10.0 ** rng.uniform(4.5, 6.5, size=n)
        c2 = _eos.sound_speed(eos2, rho2, p2)
        u2 = rng.uniform(-1.0, 1.0, size=n) * c2
        u1 = u2 + rng.uniform(-slip, slip, size=n) * c2
        out.append(np.stack([a1, rho1, u1, p1, rho2, u2, p2], axis=-1))
    return out[0], out[1]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
