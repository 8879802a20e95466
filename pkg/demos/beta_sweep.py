"""Sweep the reconstruction parameter beta on a slow moving contact.

beta interpolates between plain HLL (beta = 0, maximal contact
diffusion) and the full internal reconstruction (beta = 1, exact
stationary contacts).  The demo advects a density jump at 100 m/s and
measures how much the contact has smeared at each beta.

Run from the repository root:  python3 demos/beta_sweep.py
"""

import numpy as np

from dataclasses import replace

from rsir1d import cases, driver


def contact_width(x, rho, lo, hi):
    """Distance between the 10% and 90% crossing points of the jump."""
    lev = lambda f: x[int(np.argmin(np.abs(rho - (lo + f * (hi - lo)))))]
    return abs(lev(0.9) - lev(0.1))


def main():
    case = cases.builtin_case("euler-contact-transport")
    print(f"case: {case.name}  ({case.n_cells} cells, u = "
          f"{case.left[1]} m/s, t = {case.end_time})\n")
    print(f"{'beta':>6} {'contact width [cells]':>24} {'max |p drift|':>16}")
    for beta in (0.0, 0.25, 0.5, 0.75, 1.0):
        res = driver.run(replace(case, beta=beta))
        w = res.snapshots[-1][1]
        width = contact_width(res.mesh.centers, w[:, 0],
                              case.left[0], case.right[0])
        drift = np.max(np.abs(w[:, 2] - case.left[2])) / case.left[2]
        print(f"{beta:>6.2f} {width / res.mesh.dx:>24.1f} {drift:>16.2e}")
    print("\nThe contact sharpens monotonically with beta while pressure "
          "stays uniform to round-off at every beta.")


if __name__ == "__main__":
    main()
