"""Per-subject scalar scores that collapse a difference curve to one number.

Three families: sums of per-gridpoint signs (optionally reweighted per sign
category), trapezoid integrals of the raw differences, and averages of signed
midranks. Each returns a SubjectScores vector that the null tests consume.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import DifferenceSample, trapezoid_weights
from .errors import DimensionError
from .ranks import SignedRankField

#: Weights (for sign -1, 0, +1) that reduce weighted scores to plain sign sums.
SUPPORT_WEIGHTS = (-1.0, 0.0, 1.0)


class StatisticKind(enum.Enum):
    SIGN_SUM = "sign_sum"
    SIGN_WEIGHTED = "sign_weighted"
    INTEGRAL = "integral"
    SIGNED_RANK = "signed_rank"
    SIGNED_RANK_WEIGHTED = "signed_rank_weighted"


@dataclass(frozen=True)
class SubjectScores:
    """One finite score per subject, tagged with how it was built."""

    scores: np.ndarray
    statistic_kind: StatisticKind
    weights: tuple = None

    def __post_init__(self):
        s = np.array(self.scores, dtype=float)
        if s.ndim != 1 or not np.all(np.isfinite(s)):
            raise DimensionError("scores must be a finite 1-d vector")
        s.flags.writeable = False
        object.__setattr__(self, "scores", s)
        if self.weights is not None:
            w = tuple(float(x) for x in self.weights)
            if len(w) != 3:
                raise DimensionError("weights must have length 3")
            object.__setattr__(self, "weights", w)
        elif self.statistic_kind in (
            StatisticKind.SIGN_WEIGHTED,
            StatisticKind.SIGNED_RANK_WEIGHTED,
        ):
            raise DimensionError(f"{self.statistic_kind} requires weights")

    @property
    def n(self) -> int:
        return int(self.scores.size)


def _weight_by_sign(signs: np.ndarray, w: tuple) -> np.ndarray:
    """Map each sign in {-1, 0, +1} to its weight."""
    return np.where(signs < 0, w[0], np.where(signs > 0, w[2], w[1]))


def sign_sum_scores(d: DifferenceSample) -> SubjectScores:
    """Sum of per-gridpoint signs for each subject."""
    return SubjectScores(
        scores=np.sign(d.d).sum(axis=1),
        statistic_kind=StatisticKind.SIGN_SUM,
    )


def weighted_sign_scores(d: DifferenceSample, w) -> SubjectScores:
    """Weighted count of sign categories per subject.

    ``w`` gives the weight of a -1, 0 and +1 sign in that order. With the
    support weights (-1, 0, 1) this equals sign_sum_scores.
    """
    w = tuple(float(x) for x in w)
    if len(w) != 3 or not all(np.isfinite(w)):
        raise DimensionError("w must be 3 finite weights")
    signs = np.sign(d.d)
    return SubjectScores(
        scores=_weight_by_sign(signs, w).sum(axis=1),
        statistic_kind=StatisticKind.SIGN_WEIGHTED,
        weights=w,
    )


def integral_scores(d: DifferenceSample) -> SubjectScores:
    """Trapezoid integral of each difference curve over the grid."""
    w = trapezoid_weights(d.grid)
    return SubjectScores(scores=d.d @ w, statistic_kind=StatisticKind.INTEGRAL)


def signed_rank_scores(field: SignedRankField, w=None) -> SubjectScores:
    """Average of weighted signed midranks over the grid, per subject.

    With the default support weights (-1, 0, 1) the score is the mean of
    sign times midrank, which handles zero differences as zero terms. Scores
    always lie in [-n, n].
    """
    if w is None:
        weights = SUPPORT_WEIGHTS
        kind = StatisticKind.SIGNED_RANK
    else:
        weights = tuple(float(x) for x in w)
        if len(weights) != 3 or not all(np.isfinite(weights)):
            raise DimensionError("w must be 3 finite weights")
        kind = StatisticKind.SIGNED_RANK_WEIGHTED
    terms = _weight_by_sign(field.signs, weights) * field.absranks
    return SubjectScores(
        scores=terms.mean(axis=1),
        statistic_kind=kind,
        weights=weights,
    )
