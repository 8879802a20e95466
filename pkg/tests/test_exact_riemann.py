import numpy as np
import pytest

from rsir1d import eos as _eos
from rsir1d import exact_riemann as ex
from conftest import random_euler_states

AIR = _eos.preset("air-ideal")
WATER = _eos.preset("water-sg")
G14 = _eos.EosParams(gamma=1.4)


def test_sod_star_values():
    """Classic nondimensional shock tube; star values from the standard
    tabulation of the iterative solution."""
    sol = ex.solve_exact([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], G14)
    assert sol.p_star == pytest.approx(0.30313, abs=2e-5)
    assert sol.u_star == pytest.approx(0.92745, abs=2e-5)
    assert sol.rho_star_l == pytest.approx(0.42632, abs=2e-5)
    assert sol.rho_star_r == pytest.approx(0.26557, abs=2e-5)
    assert sol.wave_l == "rarefaction" and sol.wave_r == "shock"


def test_two_shock_and_two_rarefaction_structure():
    sol = ex.solve_exact([1.0, 300.0, 1e5], [1.0, -300.0, 1e5], G14)
    assert sol.wave_l == "shock" and sol.wave_r == "shock"
    assert sol.u_star == pytest.approx(0.0, abs=1e-9)
    assert sol.p_star > 1e5
    sol = ex.solve_exact([1.0, -300.0, 1e5], [1.0, 300.0, 1e5], G14)
    assert sol.wave_l == "rarefaction" and sol.wave_r == "rarefaction"
    assert sol.p_star < 1e5


def test_residual_is_tiny(rng):
    wl, wr = random_euler_states(rng, 1, AIR, mach_max=1.0)
    sol = ex.solve_exact(wl[0], wr[0], AIR)
    assert sol.residual <= 1e-10 * max(wl[0, 2], wr[0, 2], 1.0)


def test_random_pairs_satisfy_jump_conditions(rng):
    """p*, u* from the solver satisfy both side relations: u* computed
    from the left wave equals u* computed from the right wave."""
    wl, wr = random_euler_states(rng, 50, AIR, mach_max=1.5)
    for a, b in zip(wl, wr):
        try:
            sol = ex.solve_exact(a, b, AIR)
        except ex.VacuumError:
            continue
        fl, _ = ex._side_function(sol.p_star, a, AIR)
        fr, _ = ex._side_function(sol.p_star, b, AIR)
        u_from_l = a[1] - fl
        u_from_r = b[1] + fr
        assert u_from_l == pytest.approx(u_from_r, abs=1e-6 * (abs(sol.u_star) + 1.0))


def test_sg_reduces_to_shifted_ideal():
    """A SG problem maps onto an ideal-gas problem in pi = p + p_inf with
    identical densities and velocities."""
    pinf = 2.0e5
    sg = _eos.EosParams(gamma=1.4, p_inf=pinf)
    wl = np.array([1.0, 0.0, 3.0e5])
    wr = np.array([0.5, 0.0, 1.0e5])
    sol_sg = ex.solve_exact(wl, wr, sg)
    wl_i = wl.copy(); wl_i[2] += pinf
    wr_i = wr.copy(); wr_i[2] += pinf
    sol_i = ex.solve_exact(wl_i, wr_i, G14)
    assert sol_sg.p_star + pinf == pytest.approx(sol_i.p_star, rel=1e-10)
    assert sol_sg.u_star == pytest.approx(sol_i.u_star, rel=1e-10, abs=1e-10)
    assert sol_sg.rho_star_l == pytest.approx(sol_i.rho_star_l, rel=1e-10)


def test_water_shock_tube_solves():
    sol = ex.solve_exact([1200.0, 0.0, 1e9], [1000.0, 0.0, 1e5], WATER)
    assert 1e5 < sol.p_star < 1e9
    assert sol.u_star > 0.0


def test_vacuum_raises():
    with pytest.raises(ex.VacuumError):
        ex.solve_exact([1.0, -3000.0, 1e5], [1.0, 3000.0, 1e5], G14)


def test_covolume_rejected():
    nasg = _eos.preset("water-nasg")
    with pytest.raises(ValueError):
        ex.solve_exact([1000.0, 0.0, 1e5], [900.0, 0.0, 1e4], nasg)


def test_sample_limits_and_star_region():
    sol = ex.solve_exact([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], G14)
    w = ex.sample(sol, np.array([-10.0, 10.0]))
    assert np.allclose(w[0], [1.0, 0.0, 1.0])
    assert np.allclose(w[1], [0.125, 0.0, 0.1])
    # just left / right of the contact
    eps = 1e-9
    w = ex.sample(sol, np.array([sol.u_star - eps, sol.u_star + eps]))
    assert w[0, 0] == pytest.approx(sol.rho_star_l, rel=1e-9)
    assert w[1, 0] == pytest.approx(sol.rho_star_r, rel=1e-9)
    assert np.allclose(w[:, 2], sol.p_star, rtol=1e-12)


def test_sample_rarefaction_is_continuous():
    sol = ex.solve_exact([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], G14)
    c_l = float(_eos.sound_speed(G14, 1.0, 1.0))
    xi = np.linspace(-c_l - 0.1, sol.u_star - 1e-6, 500)
    w = ex.sample(sol, xi)
    # no jumps anywhere across the fan
    assert np.max(np.abs(np.diff(w[:, 0]))) < 5e-3
    # entropy is constant through the rarefaction
    s = _eos.entropy(G14, w[:, 0], w[:, 2])
    assert np.ptp(s) < 1e-10


def test_l1_error_zero_for_exact_field():
    sol = ex.solve_exact([1.0, 0.0, 1.0], [0.125, 0.0, 0.1], G14)
    x = np.linspace(0.005, 0.995, 100)
    t = 0.2
    w = ex.sample(sol, (x - 0.5) / t)
    assert ex.l1_error(w, sol, t, x, x0=0.5) == 0.0
    assert ex.l1_error(w[:, 0], sol, t, x, x0=0.5, component=0) == 0.0
