"""Functional PCA preprocessing for noisy, possibly incomplete curves.

The pipeline: columnwise means over observed entries, pairwise-complete raw
covariance, local linear smoothing of the off-diagonal covariance surface
(an Epanechnikov kernel; the diagonal is imputed from the smooth and its gap
to the raw diagonal estimates the measurement noise), eigendecomposition in
trapezoid-weighted geometry, and per-subject score estimation by best linear
prediction from whatever entries are observed. One model is fit on both
conditions pooled so the basis is built without using condition labels.

A bandwidth of exactly 0 disables smoothing and uses the raw covariance
as-is (complete data only), with zero estimated noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FunctionalSample, Grid, PairedSample, trapezoid_weights
from .errors import (
    DegenerateSample,
    DimensionError,
    EmptyCurve,
    InsufficientCoverage,
    NumericalError,
)
from .jacobi import jacobi_eigh

DEFAULT_PVE = 0.99
#: Noise floor used in score solves so noiseless inputs stay non-singular.
NOISE_FLOOR = 1e-10


@dataclass(frozen=True)
class FpcaModel:
    """Fitted basis: mean curve, eigenfunctions (rows, K-by-S), eigenvalues.

    Eigenfunctions are orthonormal under the trapezoid inner product of the
    grid; eigenvalues are nonnegative and nonincreasing.
    """

    grid: Grid
    mean_curve: np.ndarray
    eigenfunctions: np.ndarray
    eigenvalues: np.ndarray
    noise_variance: float
    pve: float

    def __post_init__(self):
        mean = np.array(self.mean_curve, dtype=float)
        phi = np.array(self.eigenfunctions, dtype=float)
        lam = np.array(self.eigenvalues, dtype=float)
        s = self.grid.size
        if mean.shape != (s,) or phi.ndim != 2 or phi.shape[1] != s:
            raise DimensionError("mean/eigenfunction shapes do not match grid")
        if lam.shape != (phi.shape[0],):
            raise DimensionError("one eigenvalue per eigenfunction required")
        if np.any(lam < 0) or np.any(np.diff(lam) > 0):
            raise NumericalError("eigenvalues must be nonnegative and nonincreasing")
        if self.noise_variance < 0:
            raise NumericalError("noise variance must be nonnegative")
        gram = (phi * trapezoid_weights(self.grid)) @ phi.T
        if not np.allclose(gram, np.eye(phi.shape[0]), atol=1e-6):
            raise NumericalError("eigenfunctions not orthonormal under trapezoid weights")
        for name, arr in (("mean_curve", mean), ("eigenfunctions", phi), ("eigenvalues", lam)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_components(self) -> int:
        return int(self.eigenvalues.size)


def default_bandwidth(grid: Grid) -> float:
    """Two mean grid spacings; spans five points on a uniform grid."""
    return 2.0 * (grid.points[-1] - grid.points[0]) / (grid.size - 1)


def _sample_moments(sample: FunctionalSample):
    """Per-sample sufficient statistics for the pooled mean and covariance."""
    obs = (~sample.missing).astype(float)
    x = np.where(sample.missing, 0.0, sample.values)
    return x.sum(axis=0), obs.sum(axis=0), x, obs


def _pooled_mean_cov(samples):
    """Mean and pairwise-complete covariance over all samples together.

    Per-sample sums are combined by plain addition, so the result does not
    depend on the order the samples are listed in.
    """
    parts = [_sample_moments(s) for s in samples]
    grid = samples[0].grid
    colsum = parts[0][0]
    colcount = parts[0][1]
    for p in parts[1:]:
        colsum = colsum + p[0]
        colcount = colcount + p[1]
    if np.any(colcount < 2):
        k = int(np.argmax(colcount < 2))
        raise InsufficientCoverage(
            f"gridpoint s={grid.points[k]:g} observed for {int(colcount[k])} "
            "subjects; need at least 2"
        )
    mean = colsum / colcount

    num = None
    cnt = None
    for _, _, x, obs in parts:
        z = np.where(obs > 0, x - mean, 0.0)
        n_part = z.T @ z
        c_part = obs.T @ obs
        num = n_part if num is None else num + n_part
        cnt = c_part if cnt is None else cnt + c_part
    with np.errstate(invalid="ignore", divide="ignore"):
        cov = np.where(cnt >= 2, num / np.maximum(cnt - 1.0, 1.0), np.nan)
    return mean, cov, cnt


def _smooth_covariance(cov: np.ndarray, grid: Grid, bandwidth: float) -> np.ndarray:
    """Local linear fit of the off-diagonal covariance entries on the grid.

    Evaluated at every (a, b) gridpoint pair, including the diagonal. Targets
    whose local design is degenerate fall back to a kernel-weighted mean; a
    target window with no data at all means the bandwidth is too small.
    """
    s = grid.points
    valid = np.isfinite(cov)
    np.fill_diagonal(valid, False)
    c_filled = np.where(valid, cov, 0.0)
    o = valid.astype(float)

    delta = s[None, :] - s[:, None]
    u = delta / bandwidth
    kern = np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)
    a0 = kern
    a1 = kern * u
    a2 = kern * u * u

    p0, p1, p2 = a0 @ o, a1 @ o, a2 @ o
    m00 = p0 @ a0.T
    m10 = p1 @ a0.T
    m20 = p2 @ a0.T
    m11 = p1 @ a1.T
    m01, m02 = m10.T, m20.T

    q0, q1 = a0 @ c_filled, a1 @ c_filled
    r00 = q0 @ a0.T
    r01 = q0 @ a1.T
    r10 = q1 @ a0.T

    if np.any(m00 <= 0.0):
        raise InsufficientCoverage(
            "a covariance smoothing window contains no data; increase the bandwidth"
        )

    # Cramer's rule for the intercept of the 3x3 weighted least squares fit.
    cof0 = m20 * m02 - m11 * m11
    cof1 = m10 * m02 - m11 * m01
    cof2 = m10 * m11 - m20 * m01
    det = m00 * cof0 - m10 * cof1 + m01 * cof2
    det_b = r00 * cof0 - m10 * (r10 * m02 - m11 * r01) + m01 * (r10 * m11 - m20 * r01)

    degenerate = np.abs(det) <= 1e-10 * np.maximum(m00, 1e-300) ** 3
    with np.errstate(invalid="ignore", divide="ignore"):
        est = np.where(degenerate, r00 / m00, det_b / np.where(degenerate, 1.0, det))
    return (est + est.T) / 2.0


def _model_from_mean_cov(grid, mean, cov, pve, bandwidth) -> FpcaModel:
    if not 0.0 < pve <= 1.0:
        raise DegenerateSample(f"pve must be in (0, 1], got {pve}")
    if bandwidth is None:
        bandwidth = default_bandwidth(grid)
    if bandwidth < 0:
        raise DegenerateSample("bandwidth must be nonnegative")

    raw_diag = np.diag(cov).copy()
    if bandwidth == 0.0:
        if not np.all(np.isfinite(cov)):
            raise InsufficientCoverage(
                "pairwise coverage too sparse for an unsmoothed covariance"
            )
        smooth = (cov + cov.T) / 2.0
        noise = 0.0
    else:
        smooth = _smooth_covariance(cov, grid, bandwidth)
        noise = max(0.0, float(np.mean(raw_diag - np.diag(smooth))))

    # Quadrature-weighted symmetrization so Euclidean eigenvectors map to
    # trapezoid-orthonormal eigenfunctions and eigenvalues are on the
    # integral scale.
    w = trapezoid_weights(grid)
    rw = np.sqrt(w)
    sym = rw[:, None] * smooth * rw[None, :]
    sym = (sym + sym.T) / 2.0
    eigvals, eigvecs = jacobi_eigh(sym)
    eigvals = np.maximum(eigvals, 0.0)

    share = np.cumsum(eigvals)
    total = share[-1]
    if total <= 0.0:
        raise NumericalError("smoothed covariance has no positive eigenvalues")
    share = share / total
    k_ret = int(np.searchsorted(share, pve * (1.0 - 1e-12)) + 1)
    n_positive = int(np.sum(eigvals > total * 1e-12))
    k_ret = max(1, min(k_ret, n_positive))

    phi = eigvecs[:, :k_ret].T / rw[None, :]
    return FpcaModel(
        grid=grid,
        mean_curve=mean,
        eigenfunctions=phi,
        eigenvalues=eigvals[:k_ret],
        noise_variance=noise,
        pve=pve,
    )


def fit_fpca(pooled: FunctionalSample, pve: float = DEFAULT_PVE, bandwidth: float = None) -> FpcaModel:
    """Fit an FPCA model to one (typically pooled) sample of curves."""
    if pooled.n < 3:
        raise DegenerateSample(f"need at least 3 curves, got {pooled.n}")
    mean, cov, _ = _pooled_mean_cov([pooled])
    return _model_from_mean_cov(pooled.grid, mean, cov, pve, bandwidth)


def smooth_sample(model: FpcaModel, raw: FunctionalSample) -> FunctionalSample:
    """Reconstruct every curve from its observed entries under the model.

    Scores are the best linear predictions given the observed values, so a
    fully observed noiseless curve inside the retained eigenspace is
    reproduced and missing stretches are imputed from the basis. The output
    has no missing entries.
    """
    if not np.array_equal(model.grid.points, raw.grid.points):
        raise DimensionError("sample grid differs from model grid")
    phi = model.eigenfunctions
    lam = model.eigenvalues
    sigma2 = max(model.noise_variance, NOISE_FLOOR)
    lam_phi = lam[:, None] * phi

    out = np.empty_like(raw.values)
    groups = {}
    for i in range(raw.n):
        groups.setdefault(raw.missing[i].tobytes(), []).append(i)

    for mask_bytes, rows in groups.items():
        mask = np.frombuffer(mask_bytes, dtype=bool)
        obs = ~mask
        if not obs.any():
            raise EmptyCurve(f"subject {raw.subject_ids[rows[0]]!r} has no observed values")
        phi_o = phi[:, obs]
        cov_o = phi_o.T @ (lam[:, None] * phi_o)
        cov_o[np.diag_indices_from(cov_o)] += sigma2
        resid = (raw.values[np.ix_(rows, obs)] - model.mean_curve[obs]).T
        scores = lam_phi[:, obs] @ np.linalg.solve(cov_o, resid)
        out[rows] = model.mean_curve + scores.T @ phi

    return FunctionalSample(grid=raw.grid, values=out, subject_ids=raw.subject_ids)


def preprocess_paired(paired: PairedSample, pve: float = DEFAULT_PVE, bandwidth: float = None) -> PairedSample:
    """Fit one model on both conditions pooled, then smooth each condition.

    Pooling ignores the condition labels, and the pooled statistics are
    combined symmetrically, so swapping the conditions yields exactly
    swapped output curves.
    """
    if 2 * paired.n < 3:
        raise DegenerateSample("need at least 2 subjects to pool")
    mean, cov, _ = _pooled_mean_cov([paired.condition0, paired.condition1])
    model = _model_from_mean_cov(paired.grid, mean, cov, pve, bandwidth)
    return PairedSample(
        condition0=smooth_sample(model, paired.condition0),
        condition1=smooth_sample(model, paired.condition1),
    )
