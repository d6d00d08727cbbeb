"""Synthetic paired-curve generator for calibration and power studies.

Pairs of latent curves come from a truncated sine expansion with correlated
scores per frequency (Gaussian or heavy-tailed t with 2 degrees of freedom),
observed with stationary AR(1) measurement error, and with an optional shift
added to condition 1 only. Randomness is drawn from counter-based Philox
streams keyed by (seed, replicate), so any replicate can be regenerated in
isolation and results do not depend on scheduling.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, fields

import numpy as np

from .core import FunctionalSample, Grid, PairedSample
from .errors import DegenerateSample, ManifestError


class ScoreDist(enum.Enum):
    GAUSSIAN = "gaussian"
    T2 = "t2"


class DeltaKind(enum.Enum):
    NULL = "null"
    LINEAR = "linear"
    PARABOLIC = "parabolic"


class PreprocessKind(enum.Enum):
    FACE_LIKE = "face_like"
    SC_LIKE = "sc_like"
    NONE = "none"


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell; the grid is uniform on the unit interval."""

    n: int
    S: int
    rho: float
    score_dist: ScoreDist = ScoreDist.GAUSSIAN
    K: int = 1000
    delta: DeltaKind = DeltaKind.NULL
    xi: float = 0.0
    ar_corr: float = 0.5
    ar_var: float = 1.0
    replicates: int = 1
    seed: int = 0
    preprocess: PreprocessKind = PreprocessKind.FACE_LIKE
    missing_frac: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "score_dist", ScoreDist(self.score_dist))
        object.__setattr__(self, "delta", DeltaKind(self.delta))
        object.__setattr__(self, "preprocess", PreprocessKind(self.preprocess))
        if self.n < 1 or self.S < 2 or self.K < 1 or self.replicates < 1:
            raise DegenerateSample("n, S, K, replicates out of range")
        if not abs(self.rho) < 1:
            raise DegenerateSample(f"rho must be in (-1, 1), got {self.rho}")
        if not abs(self.ar_corr) < 1 or not self.ar_var > 0:
            raise DegenerateSample("need |ar_corr| < 1 and ar_var > 0")
        if not self.xi >= 0:
            raise DegenerateSample(f"xi must be nonnegative, got {self.xi}")
        if not 0.0 <= self.missing_frac < 1.0:
            raise DegenerateSample("missing_frac must be in [0, 1)")
        if not 0 <= self.seed < 2**64:
            raise DegenerateSample("seed must be a nonnegative 64-bit integer")
        for f in ("rho", "xi", "ar_corr", "ar_var", "missing_frac"):
            if not math.isfinite(getattr(self, f)):
                raise DegenerateSample(f"{f} must be finite")

    @property
    def grid(self) -> Grid:
        return Grid.uniform(self.S)

    def to_manifest(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, enum.Enum):
                v = v.value
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_manifest(cls, text: str) -> "SimConfig":
        kwargs = {}
        for key, value in parse_manifest_lines(text):
            if key not in _FIELD_PARSERS:
                raise ManifestError(f"unknown manifest key {key!r}")
            kwargs[key] = _FIELD_PARSERS[key](value)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ManifestError(str(exc)) from exc


def parse_manifest_lines(text: str):
    """Yield (key, raw_value) pairs from 'key = value' lines.

    Blank lines and lines starting with '#' are skipped.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ManifestError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        yield key.strip(), value.strip().strip("'\"")


_FIELD_PARSERS = {
    "n": int,
    "S": int,
    "rho": float,
    "score_dist": ScoreDist,
    "K": int,
    "delta": DeltaKind,
    "xi": float,
    "ar_corr": float,
    "ar_var": float,
    "replicates": int,
    "seed": int,
    "preprocess": PreprocessKind,
    "missing_frac": float,
}


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent counter-based stream for one (seed, replicate) pair."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replicate,))
    return np.random.Generator(np.random.Philox(ss))


def _score_array(rng, rho: float, score_dist: ScoreDist, shape) -> np.ndarray:
    """Correlated score pairs of the given leading shape, trailing axis 2."""
    u = rng.standard_normal(shape + (2,))
    z = np.empty_like(u)
    z[..., 0] = u[..., 0]
    z[..., 1] = rho * u[..., 0] + math.sqrt(1.0 - rho * rho) * u[..., 1]
    if ScoreDist(score_dist) is ScoreDist.T2:
        chi = rng.chisquare(2.0, size=shape)
        z /= np.sqrt(chi / 2.0)[..., None]
    return z


def score_pair(rng, rho: float, score_dist) -> tuple:
    """One correlated score pair (unit scale, off-diagonal correlation rho)."""
    if not abs(rho) < 1:
        raise DegenerateSample(f"rho must be in (-1, 1), got {rho}")
    z = _score_array(rng, rho, ScoreDist(score_dist), ())
    return float(z[0]), float(z[1])


@functools.lru_cache(maxsize=8)
def _kl_basis(k_terms: int, n_points: int) -> np.ndarray:
    """Scaled sine basis rows: sqrt(2) [(k-0.5) pi]^-1 sin[(k-0.5) pi s]."""
    s = np.linspace(0.0, 1.0, n_points)
    freq = (np.arange(1, k_terms + 1) - 0.5) * math.pi
    basis = math.sqrt(2.0) / freq[:, None] * np.sin(freq[:, None] * s[None, :])
    basis.flags.writeable = False
    return basis


def kl_pair(rng, config: SimConfig) -> tuple:
    """One latent curve pair on the uniform grid (no noise, no shift)."""
    z = _score_array(rng, config.rho, config.score_dist, (config.K,))
    basis = _kl_basis(config.K, config.S)
    return z[:, 0] @ basis, z[:, 1] @ basis


def _ar1_matrix(rng, n_rows: int, n_cols: int, corr: float, var: float) -> np.ndarray:
    """Rows of a stationary AR(1) series: marginal variance is var everywhere."""
    e = np.empty((n_rows, n_cols))
    e[:, 0] = rng.standard_normal(n_rows) * math.sqrt(var)
    step_sd = math.sqrt(var * (1.0 - corr * corr))
    for k in range(1, n_cols):
        e[:, k] = corr * e[:, k - 1] + rng.standard_normal(n_rows) * step_sd
    return e


def ar1_noise(rng, n_points: int, corr: float, var: float) -> np.ndarray:
    """One stationary AR(1) noise curve."""
    if not abs(corr) < 1:
        raise DegenerateSample(f"corr must be in (-1, 1), got {corr}")
    if not var > 0:
        raise DegenerateSample(f"var must be positive, got {var}")
    return _ar1_matrix(rng, 1, n_points, corr, var)[0]


def delta_curve(kind, xi: float, grid: Grid) -> np.ndarray:
    """Shift applied to condition 1: zero, xi*s, or xi*4s(1-s)."""
    if not xi >= 0:
        raise DegenerateSample(f"xi must be nonnegative, got {xi}")
    s = grid.points
    kind = DeltaKind(kind)
    if kind is DeltaKind.NULL:
        return np.zeros_like(s)
    if kind is DeltaKind.LINEAR:
        return xi * s
    return xi * 4.0 * s * (1.0 - s)


def generate_dataset(rng, config: SimConfig) -> PairedSample:
    """One paired dataset: latent pairs + AR(1) noise + shift on condition 1.

    With missing_frac > 0, that fraction of cells per condition (rounded, and
    chosen uniformly without replacement) is flagged missing.
    """
    n, s = config.n, config.S
    z = _score_array(rng, config.rho, config.score_dist, (n, config.K))
    basis = _kl_basis(config.K, s)
    x0 = z[:, :, 0] @ basis
    x1 = z[:, :, 1] @ basis
    e0 = _ar1_matrix(rng, n, s, config.ar_corr, config.ar_var)
    e1 = _ar1_matrix(rng, n, s, config.ar_corr, config.ar_var)
    grid = config.grid
    shift = delta_curve(config.delta, config.xi, grid)
    y0 = x0 + e0
    y1 = shift[None, :] + x1 + e1

    mask0 = np.zeros((n, s), dtype=bool)
    mask1 = np.zeros((n, s), dtype=bool)
    if config.missing_frac > 0.0:
        n_missing = int(round(config.missing_frac * n * s))
        for mask in (mask0, mask1):
            idx = rng.choice(n * s, size=n_missing, replace=False)
            mask.flat[idx] = True

    ids = tuple(str(i) for i in range(n))
    return PairedSample(
        condition0=FunctionalSample(grid=grid, values=y0, subject_ids=ids, missing=mask0),
        condition1=FunctionalSample(grid=grid, values=y1, subject_ids=ids, missing=mask1),
    )
