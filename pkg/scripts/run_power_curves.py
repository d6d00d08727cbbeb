#!/usr/bin/env python3
"""Power curves for all three tests over a grid of shift scales.

Shift scales default to the 0.12-step ladder up to 3. Output is the CSV cell
table; pipe it into any plotting tool. Replicates default to 500 per scale
(the full-size study uses 1,000).
"""

import argparse

import numpy as np

from pairedfda.harness import cell_table, run_power_sweep_multi
from pairedfda.simgen import SimConfig

METHODS = ("sdrt", "fst-int", "fst-suff")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=30)
    parser.add_argument("--grid-size", type=int, default=40, dest="s")
    parser.add_argument("--rho", type=float, default=0.75)
    parser.add_argument("--dist", default="gaussian", choices=["gaussian", "t2"])
    parser.add_argument("--delta", default="linear", choices=["linear", "parabolic"])
    parser.add_argument("--replicates", type=int, default=500)
    parser.add_argument("--seed", type=int, default=20260810)
    parser.add_argument("--xi-step", type=float, default=0.12)
    parser.add_argument("--xi-max", type=float, default=3.0)
    parser.add_argument("--alpha", type=float, default=0.05)
    args = parser.parse_args()

    base = SimConfig(
        n=args.n, S=args.s, rho=args.rho, score_dist=args.dist,
        delta=args.delta, replicates=args.replicates, seed=args.seed,
    )
    xi_values = np.arange(args.xi_step, args.xi_max + 1e-9, args.xi_step)
    sweep = run_power_sweep_multi(base, METHODS, [float(x) for x in xi_values], args.alpha)
    print(cell_table([res for cells in sweep for res in cells]), end="")


if __name__ == "__main__":
    main()
