"""Replicate runner mapping simulation configs to rejection-rate tables.

Each replicate draws its own (seed, replicate) stream, runs the configured
preprocessing, differences the pair, and applies one or more test methods to
the same difference sample so method comparisons are paired. Aggregation is
a plain rejection count, so results are independent of execution order.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .core import DifferenceSample, difference
from .errors import CellError, PairedFdaError
from .fpca import preprocess_paired
from .nulltests import Alternative, TestReport, sign_test, signed_rank_test
from .ranks import signed_rank_field
from .simgen import PreprocessKind, SimConfig, generate_dataset, replicate_rng
from .summaries import integral_scores, sign_sum_scores, signed_rank_scores

import enum


class Method(enum.Enum):
    SDRT = "sdrt"
    FST_INT = "fst-int"
    FST_SUFF = "fst-suff"


@dataclass(frozen=True)
class CellResult:
    """Rejection count for one (config, method) cell."""

    config: SimConfig
    method: Method
    alpha: float
    rejections: int
    replicates: int

    @property
    def rate(self) -> float:
        return self.rejections / self.replicates

    @property
    def mc_stderr(self) -> float:
        r = self.rate
        return float(np.sqrt(r * (1.0 - r) / self.replicates))


def apply_method(diff: DifferenceSample, method, alternative=Alternative.TWO_SIDED) -> TestReport:
    """Score a difference sample and run the matching null test."""
    method = Method(method)
    if method is Method.SDRT:
        field = signed_rank_field(diff)
        report = signed_rank_test(signed_rank_scores(field), alternative)
        return dataclasses.replace(report, zero_fraction=field.zero_fraction)
    if method is Method.FST_INT:
        return sign_test(integral_scores(diff), alternative)
    return sign_test(sign_sum_scores(diff), alternative)


def _replicate_difference(config: SimConfig, replicate: int) -> DifferenceSample:
    rng = replicate_rng(config.seed, replicate)
    paired = generate_dataset(rng, config)
    if config.preprocess is not PreprocessKind.NONE:
        paired = preprocess_paired(paired)
    return difference(paired)


def run_cell_multi(config: SimConfig, methods, alpha: float) -> list:
    """Run every method on the same replicates; one CellResult per method."""
    if not 0.0 < alpha <= 1.0:
        raise PairedFdaError(f"alpha must be in (0, 1], got {alpha}")
    methods = [Method(m) for m in methods]
    rejections = {m: 0 for m in methods}
    # Strict comparison, except that alpha = 1 means reject unconditionally
    # (discrete nulls can produce p-values of exactly 1).
    always = alpha >= 1.0
    for r in range(config.replicates):
        try:
            diff = _replicate_difference(config, r)
            for m in methods:
                if always or apply_method(diff, m).p_value < alpha:
                    rejections[m] += 1
        except PairedFdaError as exc:
            raise CellError(
                f"replicate {r} of cell seed={config.seed} failed: {exc}",
                replicate=r,
                seed=config.seed,
            ) from exc
    return [
        CellResult(
            config=config,
            method=m,
            alpha=alpha,
            rejections=rejections[m],
            replicates=config.replicates,
        )
        for m in methods
    ]


def run_cell(config: SimConfig, method, alpha: float = 0.05) -> CellResult:
    """Rejection rate of one method over the config's replicates."""
    return run_cell_multi(config, [method], alpha)[0]


def _check_xi_values(xi_values):
    xi_values = [float(x) for x in xi_values]
    if not xi_values:
        raise PairedFdaError("xi_values must be nonempty")
    if any(b < a for a, b in zip(xi_values, xi_values[1:])):
        raise PairedFdaError("xi_values must be nondecreasing")
    return xi_values


def run_power_sweep_multi(base_config: SimConfig, methods, xi_values, alpha: float = 0.05) -> list:
    """One run_cell_multi per shift scale, reusing the replicate streams.

    All shift scales share the same (seed, replicate) streams, so the sweep
    sees the same underlying curves with only the shift varying.
    """
    results = []
    for xi in _check_xi_values(xi_values):
        cfg = dataclasses.replace(base_config, xi=xi)
        results.append(run_cell_multi(cfg, methods, alpha))
    return results


def run_power_sweep(base_config: SimConfig, method, xi_values, alpha: float = 0.05) -> list:
    """Power curve of one method over nondecreasing shift scales."""
    return [cells[0] for cells in run_power_sweep_multi(base_config, [method], xi_values, alpha)]


TABLE_COLUMNS = (
    "method,n,S,rho,dist,delta,xi,alpha,replicates,rejections,rate,stderr,seed"
)


def cell_table(results) -> str:
    """Comma-separated table, one row per CellResult, fixed column order."""
    lines = [TABLE_COLUMNS]
    for res in results:
        c = res.config
        lines.append(
            f"{res.method.value},{c.n},{c.S},{c.rho:g},{c.score_dist.value},"
            f"{c.delta.value},{c.xi:g},{res.alpha:g},{res.replicates},"
            f"{res.rejections},{res.rate:.6f},{res.mc_stderr:.6f},{c.seed}"
        )
    return "\n".join(lines) + "\n"
