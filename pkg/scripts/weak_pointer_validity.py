"""Error of the first-order weak pointer against the exact density as p0 grows.

Shows where the shifted-Gaussian picture stops describing the post-selected
meter: the sup-norm density error and the peak offset, side by side with the
expansion parameter p0 * 4 eta * |w| / hbar.

    python3 scripts/weak_pointer_validity.py
"""

import argparse

import numpy as np

from catweak.figures import PHI
from catweak.state import CatState, position_density
from catweak.weak import SpinSelection, weak_value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--x0", type=float, default=1e-4)
    parser.add_argument("--phi", type=float, default=PHI)
    args = parser.parse_args()

    sel = SpinSelection.from_phi(args.phi)
    w = weak_value(sel)
    x = np.linspace(-8, 8, 32001)
    print(f"weak value w = {w:.4f}")
    print(f"{'p0':>9} {'boost':>7} {'I':>10} {'sup_err':>9} {'pred_peak':>10} {'exact_peak':>11}")
    for p0 in np.geomspace(1e-5, 5e-3, 14):
        s = CatState.from_phi(args.phi, args.x0, p0)
        approx = np.abs(np.exp(-(x**2) / 4 + 1j * p0 * x * w)) ** 2
        approx /= np.trapezoid(approx, x)
        exact = position_density(s, x)
        pred = -2 * p0 * w.imag
        print(
            f"{p0:>9.2e} {p0 * 4 * abs(w):>7.3f} {s.inner_product:>10.7f} "
            f"{np.max(np.abs(approx - exact)):>9.2e} {pred:>+10.5f} {x[np.argmax(exact)]:>+11.5f}"
        )


if __name__ == "__main__":
    main()
