#!/usr/bin/env python3
"""Trace the first few spherical-inclusion modes over a radius grid.

Writes one CSV (j, epsilon, re_omega, im_omega) per run, the data behind
the resonance-vs-radius picture: real parts climbing toward the atomic
frequency as the inclusion shrinks, imaginary parts collapsing to zero.

    python scripts/run_mode_trace.py --modes 3 --out trace.csv
"""

import argparse
import sys

import numpy as np

from photon_resonance import eigensolver as es
from photon_resonance.nystrom import PhysicalParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--modes", type=int, default=3)
    ap.add_argument("--omega-a", type=float, default=1.0)
    ap.add_argument("--s0", type=float, default=1.0)
    ap.add_argument("--eps-max", type=float, default=0.2)
    ap.add_argument("--eps-min", type=float, default=0.005)
    ap.add_argument("--eps-count", type=int, default=12)
    ap.add_argument("--nodes", type=int, default=48)
    ap.add_argument("--out", default="trace.csv")
    args = ap.parse_args()

    grid = list(np.geomspace(args.eps_max, args.eps_min, args.eps_count))
    params = PhysicalParams(d=3, c=1.0, g=1.0, omega_a=args.omega_a,
                            epsilon=grid[0], s0=args.s0)
    with open(args.out, "w") as fh:
        fh.write("j,epsilon,re_omega,im_omega\n")
        for j in range(1, args.modes + 1):
            tr = es.trace_in_epsilon(params, j, grid, n_radial=args.nodes)
            for e, r in zip(tr.epsilons, tr.results):
                fh.write(f"{j},{e:.17g},{r.omega.real:.17g},{r.omega.imag:.17g}\n")
            print(f"mode {j}: omega({grid[0]:.3g}) = {tr.results[0].omega:.6f} -> "
                  f"omega({grid[-1]:.3g}) = {tr.results[-1].omega:.6f}", file=sys.stderr)
    print(args.out)


if __name__ == "__main__":
    main()
