import numpy as np
import pytest

from dataclasses import replace

from rsir1d import cases, driver
from rsir1d import eos as _eos


def test_catalog_names_and_validation():
    names = cases.case_names()
    assert "euler-shock-tube" in names
    assert "tp-shock-tube-long" in names
    assert len(names) == 11
    for name in names:
        case = cases.builtin_case(name)
        assert case.validate() is case
        assert case.description


def test_builtin_case_returns_copy():
    a = cases.builtin_case("euler-shock-tube")
    a.cfl = 0.1
    b = cases.builtin_case("euler-shock-tube")
    assert b.cfl == 0.5


def test_unknown_case_raises():
    with pytest.raises(KeyError, match="euler-shock-tube"):
        cases.builtin_case("nope")


CONFIG = """
# a liquid shock tube
name = demo
model = euler
solver = hllc
cfl = 0.4
mesh.x_min = 0.0
mesh.x_max = 2.0
mesh.n_cells = 50
mesh.x_disc = 1.0
time.end = 1e-4
time.outputs = 5e-5
eos1.preset = water-sg
state.left = 1100, 0, 1e8
state.right = 1000, 0, 1e5
"""


def test_parse_config_roundtrip():
    case = cases.parse_config(CONFIG)
    assert case.name == "demo"
    assert case.solver == "hllc"
    assert case.n_cells == 50
    assert case.eos1.p_inf == 6e8
    assert case.left == (1100.0, 0.0, 1e8)
    assert case.output_times == (5e-5,)


def test_parse_config_explicit_eos_fields():
    case = cases.parse_config(
        "model = euler\neos1.gamma = 1.667\neos1.p_inf = 0\n"
        "state.left = 1,0,1e5\nstate.right = 1,0,1e4\ntime.end = 1e-4")
    assert case.eos1.gamma == 1.667


def test_parse_config_preset_with_override():
    case = cases.parse_config(
        "model = euler\neos1.preset = water-sg\neos1.gamma = 4.0\n"
        "state.left = 1000,0,1e6\nstate.right = 1000,0,1e5\ntime.end = 1e-4")
    assert case.eos1.gamma == 4.0
    assert case.eos1.p_inf == 6e8


def test_parse_errors_carry_line_context():
    with pytest.raises(cases.ConfigError, match="line 2"):
        cases.parse_config("model = euler\nbogus.key = 3\n")
    with pytest.raises(cases.ConfigError, match="key = value"):
        cases.parse_config("model euler\n")


def test_validation_rules():
    with pytest.raises(cases.ConfigError, match="beta"):
        cases.parse_config("beta = 1.5")
    with pytest.raises(cases.ConfigError, match="not valid for model"):
        cases.parse_config("model = euler\nsolver = rsir-tp")
    with pytest.raises(cases.ConfigError, match="needs eos2"):
        cases.parse_config(
            "model = two-phase\nsolver = rsir-tp\n"
            "state.left = .5,1000,0,1e5,1,0,1e5\n"
            "state.right = .4,1000,0,1e5,1,0,1e5")
    with pytest.raises(cases.ConfigError, match="entries"):
        cases.parse_config("model = euler\nstate.left = 1, 0")
    with pytest.raises(cases.ConfigError, match="relaxation"):
        cases.parse_config("model = euler\nrelax.pressure = on")


def test_apply_overrides():
    case = cases.builtin_case("euler-shock-tube")
    out = cases.apply_overrides(case, ["mesh.n_cells=400", "beta=0.5"])
    assert out.n_cells == 400 and out.beta == 0.5
    with pytest.raises(cases.ConfigError):
        cases.apply_overrides(case, ["oops"])


def test_emit_csv_euler(tmp_path):
    case = cases.builtin_case("euler-shock-tube")
    res = driver.run(replace(case, n_cells=50, end_time=1e-4))
    path = tmp_path / "out.csv"
    cases.emit_csv(path, case, res.mesh.centers, res.snapshots[-1][1])
    data = np.genfromtxt(path, delimiter=",", names=True)
    assert tuple(data.dtype.names) == cases.EULER_COLUMNS
    assert len(data) == 50
    # round trip at full precision
    assert np.array_equal(data["rho"], res.snapshots[-1][1][:, 0])


def test_emit_csv_twophase(tmp_path):
    case = replace(cases.builtin_case("tp-shock-tube"), n_cells=50,
                   end_time=5e-5)
    res = driver.run(case)
    path = tmp_path / "out.csv"
    w = res.snapshots[-1][1]
    cases.emit_csv(path, case, res.mesh.centers, w)
    data = np.genfromtxt(path, delimiter=",", names=True)
    assert tuple(data.dtype.names) == cases.TP_COLUMNS
    mix = w[:, 0] * w[:, 1] + (1 - w[:, 0]) * w[:, 4]
    assert np.allclose(data["rho_mix"], mix, rtol=1e-15)


def test_emit_plot_script(tmp_path):
    case = cases.builtin_case("euler-shock-tube")
    script = tmp_path / "plot.gp"
    cases.emit_plot_script(script, ["a.csv", "b.csv"], case)
    text = script.read_text()
    assert "plot" in text and "a.csv" in text and "b.csv" in text


def test_compare_solvers_exact_reference():
    case = replace(cases.builtin_case("euler-shock-tube"), n_cells=50)
    label, table = cases.compare_solvers(case, solvers=("rusanov", "hllc"))
    assert label == "exact"
    assert set(table) == {"rusanov", "hllc"}
    # the contact-preserving solver beats plain Rusanov on density
    assert table["hllc"]["rho"] < table["rusanov"]["rho"]


def test_compare_solvers_fine_reference():
    case = replace(cases.builtin_case("water-nasg-shock-tube"), n_cells=50)
    label, table = cases.compare_solvers(case, solvers=("hllc", "rsir"),
                                         n_ref=500)
    assert "fine-mesh" in label
    assert all(v >= 0.0 for errs in table.values() for v in errs.values())
