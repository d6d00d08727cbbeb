"""Cyclic Jacobi eigendecomposition for symmetric matrices.

One sweep visits every off-diagonal pair exactly once, scheduled in
round-robin batches of mutually disjoint pivots so each batch can be applied
with vectorized row and column rotations. Disjoint rotations commute, so a
batch is exactly equivalent to applying its rotations one by one. Iteration
stops when the off-diagonal Frobenius mass drops below ``tol``; failure to
converge within ``max_sweeps`` raises NumericalError.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DimensionError, NumericalError

OFFDIAG_TOL = 1e-12
MAX_SWEEPS = 100


@functools.lru_cache(maxsize=16)
def _round_robin_rounds(n: int):
    """All-pairs tournament schedule: rounds of disjoint (p, q) index arrays.

    For odd n a bye slot is added and its pairs dropped, so each round is a
    partial matching and a full cycle of rounds visits every pair once.
    """
    m = n if n % 2 == 0 else n + 1
    fixed, rest = 0, list(range(1, m))
    rounds = []
    for _ in range(m - 1):
        lineup = [fixed] + rest
        pairs = [
            (min(lineup[i], lineup[m - 1 - i]), max(lineup[i], lineup[m - 1 - i]))
            for i in range(m // 2)
            if lineup[i] < n and lineup[m - 1 - i] < n
        ]
        p = np.array([i for i, _ in pairs])
        q = np.array([j for _, j in pairs])
        p.flags.writeable = False
        q.flags.writeable = False
        rounds.append((p, q))
        rest = rest[-1:] + rest[:-1]
    return tuple(rounds)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(a: np.ndarray, tol: float = OFFDIAG_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues (descending) and eigenvectors of a symmetric matrix.

    Returns (eigenvalues, eigenvectors) with eigenvectors in columns,
    orthonormal, satisfying a @ v[:, k] = eigenvalues[k] * v[:, k].
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-10, rtol=1e-10):
        raise DimensionError("matrix must be symmetric")
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy(), np.ones((1, 1))

    work = np.array((a + a.T) / 2.0)
    vecs = np.eye(n)
    rounds = _round_robin_rounds(n)

    converged = False
    for _ in range(max_sweeps):
        if _offdiag_norm(work) < tol:
            converged = True
            break
        for p, q in rounds:
            _rotate_batch(work, vecs, p, q)
    else:
        converged = _offdiag_norm(work) < tol
    if not converged:
        raise NumericalError(
            f"Jacobi sweep limit {max_sweeps} reached with off-diagonal mass "
            f"{_offdiag_norm(work):.3e} above {tol:.1e}"
        )

    eigvals = np.diag(work).copy()
    order = np.argsort(eigvals)[::-1]
    return eigvals[order], vecs[:, order]


def _rotate_batch(a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray):
    """Annihilate a[p, q] for disjoint pivot pairs, in place."""
    apq = a[p, q]
    active = apq != 0.0
    if not np.all(active):
        if not np.any(active):
            return
        p, q, apq = p[active], q[active], apq[active]

    # Classic stable rotation: t = sign(tau) / (|tau| + sqrt(1 + tau^2)).
    # tau*tau may overflow for near-zero pivots and the unselected where-branch
    # can hit 0 in its denominator; both limits resolve to t -> 0 as wanted.
    diag = np.einsum("ii->i", a)
    with np.errstate(over="ignore", divide="ignore"):
        tau = (diag[q] - diag[p]) / (2.0 * apq)
        t = np.where(
            tau >= 0.0,
            1.0 / (tau + np.sqrt(1.0 + tau * tau)),
            -1.0 / (-tau + np.sqrt(1.0 + tau * tau)),
        )
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    cc, ss = c[:, None], s[:, None]
    rows_p, rows_q = a[p, :], a[q, :]
    a[p, :] = cc * rows_p - ss * rows_q
    a[q, :] = ss * rows_p + cc * rows_q
    cols_p, cols_q = a[:, p], a[:, q]
    a[:, p] = cols_p * c - cols_q * s
    a[:, q] = cols_p * s + cols_q * c
    # Pivots are zero by construction; store that exactly.
    a[p, q] = 0.0
    a[q, p] = 0.0

    vp, vq = v[:, p], v[:, q]
    v[:, p] = vp * c - vq * s
    v[:, q] = vp * s + vq * c
