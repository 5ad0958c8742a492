"""Dense x0 sweep of the phi = pi/2.02 family: I, first overlap zero, Wigner minimum, weak pointer.

Prints one row per x0 and counts rows where sub-Fourier zeros and a valid
weak-value pointer coexist (expected: none).

    python3 scripts/complementarity_sweep.py --p0 1e-3 --points 40
"""

import argparse
import math

import numpy as np

from catweak.figures import PHI, sweep_rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p0", type=float, nargs="+", default=[1e-3, 0.01])
    parser.add_argument("--x0-min", type=float, default=1e-5)
    parser.add_argument("--x0-max", type=float, default=6.0)
    parser.add_argument("--points", type=int, default=30)
    parser.add_argument("--phi", type=float, default=PHI)
    args = parser.parse_args()

    x0s = tuple(float(v) for v in np.geomspace(args.x0_min, args.x0_max, args.points))
    rows = sweep_rows(x0s, tuple(args.p0), args.phi)
    print(f"{'p0':>8} {'x0':>10} {'I':>12} {'first_zero':>11} {'W_min*pi':>10} {'weak_peak':>10}")
    for r in rows:
        fz = "-" if r["first_zero"] is None else f"{r['first_zero']:.5f}"
        wp = "-" if r["weak_peak"] is None else f"{r['weak_peak']:+.5f}"
        print(f"{r['p0']:>8.3g} {r['x0']:>10.3e} {r['I']:>12.6g} {fz:>11} {r['wigner_min'] * math.pi:>10.3g} {wp:>10}")
    both = sum(r["sub_fourier"] and r["weak_regime"] for r in rows)
    print(f"rows with sub-Fourier zeros and a weak pointer: {both} of {len(rows)}")


if __name__ == "__main__":
    main()
