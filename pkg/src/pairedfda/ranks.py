"""Per-gridpoint signing and ranking of difference curves across subjects.

At each gridpoint the absolute differences are ranked over subjects with
midranks for ties, and the raw differences are signed. Ties get the mean of
the rank positions they occupy, which keeps every column's rank sum fixed at
n(n+1)/2 regardless of tie structure. sign(0) is exactly 0; no thresholding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DifferenceSample
from .errors import DegenerateSample


@dataclass(frozen=True)
class SignedRankField:
    """Signs and midranks of |d| per gridpoint, both n-by-S.

    Invariants: each column of ``absranks`` sums to n(n+1)/2 and lies in
    [1, n]; ``signs`` is -1/0/+1 with 0 exactly where d is 0.
    """

    signs: np.ndarray
    absranks: np.ndarray

    def __post_init__(self):
        for name in ("signs", "absranks"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.signs.shape != self.absranks.shape:
            raise DegenerateSample("signs and absranks must have equal shape")

    @property
    def n(self) -> int:
        return self.signs.shape[0]

    @property
    def n_points(self) -> int:
        return self.signs.shape[1]

    @property
    def zero_fraction(self) -> float:
        """Fraction of cells with a zero difference."""
        return float(np.mean(self.signs == 0.0))


def midrank(values: np.ndarray) -> np.ndarray:
    """Ranks with ties averaged over the positions they occupy.

    Output sums to n(n+1)/2 and lies in [1, n].
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DegenerateSample("midrank needs a nonempty 1-d vector")
    if not np.all(np.isfinite(v)):
        raise DegenerateSample("midrank requires finite values")
    return _midrank_columns(v[:, None])[:, 0]


def _midrank_columns(mat: np.ndarray) -> np.ndarray:
    """Columnwise midranks of an n-by-S matrix, vectorized over columns.

    The midrank of an element equals (first + last)/2 + 1 where first/last
    are the 0-based sorted positions of its tie run.
    """
    n, s = mat.shape
    order = np.argsort(mat, axis=0, kind="stable")
    svals = np.take_along_axis(mat, order, axis=0)
    idx = np.arange(n, dtype=float)[:, None]

    is_first = np.ones((n, s), dtype=bool)
    is_first[1:] = svals[1:] != svals[:-1]
    run_start = np.maximum.accumulate(np.where(is_first, idx, -np.inf), axis=0)

    is_last = np.ones((n, s), dtype=bool)
    is_last[:-1] = svals[:-1] != svals[1:]
    run_end = np.minimum.accumulate(np.where(is_last, idx, np.inf)[::-1], axis=0)[::-1]

    ranks_sorted = (run_start + run_end) / 2.0 + 1.0
    out = np.empty((n, s), dtype=float)
    np.put_along_axis(out, order, ranks_sorted, axis=0)
    return out


def signed_rank_field(d: DifferenceSample) -> SignedRankField:
    """Sign each difference and midrank its magnitude within each gridpoint."""
    if d.n < 2:
        raise DegenerateSample(f"need at least 2 subjects, got {d.n}")
    return SignedRankField(
        signs=np.sign(d.d) + 0.0,
        absranks=_midrank_columns(np.abs(d.d)),
    )


def sign_curve(d_row: np.ndarray) -> np.ndarray:
    """Elementwise sign of one difference curve."""
    row = np.asarray(d_row, dtype=float)
    if not np.all(np.isfinite(row)):
        raise DegenerateSample("sign_curve requires finite values")
    return np.sign(row) + 0.0
