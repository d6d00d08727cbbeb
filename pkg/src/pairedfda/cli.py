"""Command line entry points: analyze a paired CSV, or run simulation grids."""

from __future__ import annotations

import argparse
import itertools
import sys
from concurrent.futures import ProcessPoolExecutor

from .core import difference
from .csvio import read_paired_csv
from .errors import AllZeroScores, ManifestError, PairedFdaError
from .fpca import preprocess_paired
from .harness import Method, apply_method, cell_table, run_cell_multi
from .nulltests import Alternative
from .simgen import SimConfig, _FIELD_PARSERS, parse_manifest_lines


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairedfda",
        description="Sign and signed doubly ranked tests for paired curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="analyze a paired CSV file")
    t.add_argument("--file", required=True, help="CSV in the paired-sample layout")
    t.add_argument(
        "--method",
        default="all",
        choices=["sdrt", "fst-int", "fst-suff", "all"],
        help="which test(s) to run",
    )
    t.add_argument("--pve", type=float, default=0.99, help="variance share kept by FPCA")
    t.add_argument("--bandwidth", type=float, default=None, help="covariance smoother bandwidth")
    t.add_argument(
        "--no-preprocess",
        action="store_true",
        help="skip FPCA smoothing (requires a file with no NA cells)",
    )
    t.add_argument(
        "--alternative",
        default="two-sided",
        choices=["two-sided", "less", "greater"],
    )

    s = sub.add_parser("simulate", help="run a manifest of simulation cells")
    s.add_argument("--manifest", required=True, help="flat key = value grid file")
    s.add_argument("--threads", type=int, default=1, help="worker processes for cells")
    s.add_argument("--out", default=None, help="write the result table here instead of stdout")
    return parser


def cmd_test(args) -> int:
    paired = read_paired_csv(args.file)
    if not args.no_preprocess:
        paired = preprocess_paired(paired, pve=args.pve, bandwidth=args.bandwidth)
    diff = difference(paired)
    methods = list(Method) if args.method == "all" else [Method(args.method)]
    alternative = Alternative(args.alternative)

    print(f"{'method':<10} {'statistic':<9} {'observed':>10} {'null_mean':>10} "
          f"{'p_value':>8} {'dist':>13} {'n_eff':>5} {'n_zero':>6}")
    for method in methods:
        try:
            rep = apply_method(diff, method, alternative)
        except AllZeroScores as exc:
            print(f"{method.value:<10} {'-':<9} {'-':>10} {'-':>10} {'-':>8} "
                  f"{'-':>13} {'-':>5} {'-':>6}  all scores zero ({exc})")
            continue
        print(f"{method.value:<10} {rep.statistic_name:<9} {rep.observed:>10g} "
              f"{rep.null_mean:>10g} {rep.p_value:>8.4f} {rep.method.value:>13} "
              f"{rep.n_effective:>5d} {rep.n_zero_scores:>6d}")
    return 0


def parse_grid_manifest(text: str):
    """Expand a manifest into (configs, methods, alpha).

    Every SimConfig key accepts a comma-separated list; the grid is the
    cartesian product in field order. ``method`` lists test methods and
    ``alpha`` sets the rejection threshold.
    """
    lists = {}
    methods = list(Method)
    alpha = 0.05
    for key, value in parse_manifest_lines(text):
        if key == "method":
            methods = [Method(v.strip()) for v in value.split(",")]
        elif key == "alpha":
            alpha = float(value)
        elif key in _FIELD_PARSERS:
            parser = _FIELD_PARSERS[key]
            lists[key] = [parser(v.strip()) for v in value.split(",")]
        else:
            raise ManifestError(f"unknown manifest key {key!r}")
    if not lists:
        raise ManifestError("manifest defines no simulation fields")
    keys = [k for k in _FIELD_PARSERS if k in lists]
    configs = [
        SimConfig(**dict(zip(keys, combo)))
        for combo in itertools.product(*(lists[k] for k in keys))
    ]
    return configs, methods, alpha


def _run_one(job):
    config, methods, alpha = job
    return run_cell_multi(config, methods, alpha)


def cmd_simulate(args) -> int:
    with open(args.manifest) as handle:
        text = handle.read()
    configs, methods, alpha = parse_grid_manifest(text)
    jobs = [(cfg, methods, alpha) for cfg in configs]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            per_cell = list(pool.map(_run_one, jobs))
    else:
        per_cell = [_run_one(job) for job in jobs]
    table = cell_table([res for cell in per_cell for res in cell])
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(table)
    else:
        sys.stdout.write(table)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "test":
            return cmd_test(args)
        return cmd_simulate(args)
    except PairedFdaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
