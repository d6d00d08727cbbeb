"""Data model for paired curves on a shared grid, plus trapezoid quadrature.

Curves are stored as plain n-by-S float matrices. A missing measurement is a
first-class cell state carried by an explicit boolean mask; the backing value
is NaN so that accidental arithmetic on a missing cell poisons the result
instead of silently using a sentinel. Only the FPCA preprocessing consumes
masked samples; every downstream statistic requires complete data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateGrid, DimensionError, PreprocessRequired


@dataclass(frozen=True)
class Grid:
    """Ordered sampling locations s_1 < ... < s_S."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 2:
            raise DegenerateGrid(f"grid needs at least 2 points, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise DegenerateGrid("grid points must be finite")
        if np.any(np.diff(pts) <= 0):
            raise DegenerateGrid("grid points must be strictly increasing")

    @property
    def size(self) -> int:
        return int(self.points.size)

    @staticmethod
    def uniform(n_points: int, lo: float = 0.0, hi: float = 1.0) -> "Grid":
        return Grid(np.linspace(lo, hi, n_points))


@dataclass(frozen=True)
class FunctionalSample:
    """n curves observed on a shared grid; entries may be missing.

    ``values`` is n-by-S float; cells flagged in ``missing`` hold NaN.
    ``subject_ids`` labels the rows.
    """

    grid: Grid
    values: np.ndarray
    subject_ids: tuple = field(default=None)
    missing: np.ndarray = field(default=None)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 2:
            raise DimensionError(f"values must be 2-d, got shape {vals.shape}")
        n, s = vals.shape
        if n < 1:
            raise DimensionError("need at least one subject")
        if s != self.grid.size:
            raise DimensionError(f"{s} columns but grid has {self.grid.size} points")

        if self.missing is None:
            mask = ~np.isfinite(vals)
        else:
            mask = np.array(self.missing, dtype=bool)
            if mask.shape != vals.shape:
                raise DimensionError("missing mask shape must match values")
        if not np.all(np.isfinite(vals[~mask])):
            raise DimensionError("non-finite value in a cell not flagged missing")
        vals[mask] = np.nan
        vals.flags.writeable = False
        mask.flags.writeable = False

        ids = self.subject_ids
        if ids is None:
            ids = tuple(str(i) for i in range(n))
        else:
            ids = tuple(str(x) for x in ids)
            if len(ids) != n:
                raise DimensionError(f"{len(ids)} subject ids for {n} rows")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "missing", mask)
        object.__setattr__(self, "subject_ids", ids)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def has_missing(self) -> bool:
        return bool(self.missing.any())


@dataclass(frozen=True)
class PairedSample:
    """Two samples of the same subjects under conditions 0 and 1."""

    condition0: FunctionalSample
    condition1: FunctionalSample

    def __post_init__(self):
        a, b = self.condition0, self.condition1
        if not np.array_equal(a.grid.points, b.grid.points):
            raise DimensionError("conditions must share one grid")
        if a.n != b.n:
            raise DimensionError(f"condition sizes differ: {a.n} vs {b.n}")
        if a.subject_ids != b.subject_ids:
            raise DimensionError("subject ids must match in order across conditions")

    @property
    def grid(self) -> Grid:
        return self.condition0.grid

    @property
    def n(self) -> int:
        return self.condition0.n

    @property
    def subject_ids(self) -> tuple:
        return self.condition0.subject_ids

    def swapped(self) -> "PairedSample":
        return PairedSample(condition0=self.condition1, condition1=self.condition0)


@dataclass(frozen=True)
class DifferenceSample:
    """Complete n-by-S matrix of condition-1 minus condition-0 curves."""

    grid: Grid
    d: np.ndarray
    subject_ids: tuple = field(default=None)

    def __post_init__(self):
        d = np.array(self.d, dtype=float)
        if d.ndim != 2:
            raise DimensionError(f"d must be 2-d, got shape {d.shape}")
        if d.shape[1] != self.grid.size:
            raise DimensionError(f"{d.shape[1]} columns but grid has {self.grid.size} points")
        if not np.all(np.isfinite(d)):
            raise PreprocessRequired("difference matrix contains non-finite entries")
        d.flags.writeable = False
        ids = self.subject_ids
        if ids is None:
            ids = tuple(str(i) for i in range(d.shape[0]))
        else:
            ids = tuple(str(x) for x in ids)
            if len(ids) != d.shape[0]:
                raise DimensionError(f"{len(ids)} subject ids for {d.shape[0]} rows")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "subject_ids", ids)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    @property
    def n_points(self) -> int:
        return self.d.shape[1]


def difference(paired: PairedSample) -> DifferenceSample:
    """Pointwise condition-1 minus condition-0 curves.

    Both conditions must be fully observed; raises PreprocessRequired naming
    the first offending subject and gridpoint otherwise.
    """
    for cond, sample in ((0, paired.condition0), (1, paired.condition1)):
        if sample.has_missing:
            i, k = np.argwhere(sample.missing)[0]
            raise PreprocessRequired(
                f"missing entry for subject {sample.subject_ids[i]!r} at "
                f"gridpoint s={sample.grid.points[k]:g} (condition {cond}); "
                "run FPCA preprocessing first"
            )
    d = paired.condition1.values - paired.condition0.values
    return DifferenceSample(grid=paired.grid, d=d, subject_ids=paired.subject_ids)


def trapezoid(values: np.ndarray, grid: Grid) -> float:
    """Trapezoidal rule over the grid: sum of (s_{k+1}-s_k)(v_k+v_{k+1})/2."""
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"values must be 1-d, got shape {v.shape}")
    if v.size != grid.size:
        raise DimensionError(f"{v.size} values for {grid.size} grid points")
    if v.size < 2:
        raise DegenerateGrid("need at least 2 points to integrate")
    gaps = np.diff(grid.points)
    return float(np.sum(gaps * (v[:-1] + v[1:])) / 2.0)


def trapezoid_weights(grid: Grid) -> np.ndarray:
    """Quadrature weights w with trapezoid(v, grid) == w @ v."""
    gaps = np.diff(grid.points)
    w = np.zeros(grid.size)
    w[:-1] += gaps / 2.0
    w[1:] += gaps / 2.0
    return w
