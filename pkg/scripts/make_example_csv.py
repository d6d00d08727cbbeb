#!/usr/bin/env python3
"""Write a synthetic paired-sample CSV for trying out the `test` command."""

import argparse

from pairedfda.csvio import write_paired_csv
from pairedfda.simgen import SimConfig, generate_dataset, replicate_rng


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", help="output CSV path")
    parser.add_argument("--n", type=int, default=34)
    parser.add_argument("--grid-size", type=int, default=79, dest="s")
    parser.add_argument("--rho", type=float, default=2.0 / 3.0)
    parser.add_argument("--xi", type=float, default=0.0)
    parser.add_argument("--delta", default="linear", choices=["null", "linear", "parabolic"])
    parser.add_argument("--missing-frac", type=float, default=0.05)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    cfg = SimConfig(
        n=args.n, S=args.s, rho=args.rho, delta=args.delta if args.xi > 0 else "null",
        xi=args.xi, missing_frac=args.missing_frac, seed=args.seed,
        preprocess="sc_like" if args.missing_frac > 0 else "face_like",
    )
    write_paired_csv(generate_dataset(replicate_rng(args.seed, 0), cfg), args.out)
    print(f"wrote {args.out}: n={args.n}, {args.s} gridpoints, "
          f"missing_frac={args.missing_frac}, xi={args.xi}")


if __name__ == "__main__":
    main()
