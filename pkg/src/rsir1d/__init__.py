"""1D compressible finite-volume solvers: single-phase Euler fluxes
(Rusanov, HLL, HLLC, internally reconstructed HLL variants) with
ideal-gas / stiffened-gas / NASG EOS, a dense-dilute two-phase model with
stiff pressure relaxation and drag, an exact Euler Riemann oracle, and a
MUSCL-Hancock driver with a case catalog and CLI.
"""

__version__ = "0.1.0"

from .eos import EosParams, preset, PRESETS
from .driver import Mesh1D, RunResult, run
from .cases import CaseConfig, builtin_case, case_names, parse_config

__all__ = [
    "EosParams", "preset", "PRESETS",
    "Mesh1D", "RunResult", "run",
    "CaseConfig", "builtin_case", "case_names", "parse_config",
    "__version__",
]
