"""Univariate null inference on subject scores.

Two tests: an exact Binomial sign test on the count of positive scores, and
the Wilcoxon signed rank test on the scores, reported as W+ (sum of ranks of
positive scores, null mean n(n+1)/4). The exact W+ distribution comes from
the generating-function recursion poly <- poly * (1 + x^r) / 2 for r = 1..n;
ties among |scores| force a normal approximation (tie-corrected variance,
0.5 continuity correction, and a fourth-cumulant Edgeworth term) because the
exact midrank distribution is data-dependent. Zero scores are dropped before
either test. Two-sided p-values double the smaller tail, capped at 1.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import AllZeroScores, SizeError
from .ranks import midrank
from .summaries import SubjectScores

WILCOXON_EXACT_MAX_N = 200


class Alternative(enum.Enum):
    TWO_SIDED = "two-sided"
    LESS = "less"
    GREATER = "greater"


class PValueMethod(enum.Enum):
    EXACT = "exact"
    NORMAL_APPROX = "normal_approx"


@dataclass(frozen=True)
class TestReport:
    """Outcome of one univariate null test.

    ``observed`` is U+ (positive-score count) for the sign test and W+ for
    the signed rank test; ``observed - null_mean`` recovers the centered
    statistic. ``zero_fraction`` optionally records the fraction of zero
    entries in the underlying gridded sign field; it never alters inference.
    """

    statistic_name: str
    observed: float
    null_mean: float
    p_value: float
    method: PValueMethod
    n_effective: int
    n_zero_scores: int
    alternative: Alternative
    zero_fraction: float = None

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value {self.p_value} outside [0, 1]")
        if self.n_effective < 1:
            raise ValueError("n_effective must be at least 1")

    @property
    def observed_centered(self) -> float:
        return self.observed - self.null_mean


@dataclass(frozen=True)
class WilcoxonNull:
    """Exact null pmf of W+ on the support 0 .. n(n+1)/2."""

    n: int
    pmf: np.ndarray

    def __post_init__(self):
        if self.pmf.size != self.n * (self.n + 1) // 2 + 1:
            raise SizeError(f"pmf length {self.pmf.size} wrong for n={self.n}")
        if abs(float(self.pmf.sum()) - 1.0) > 1e-12:
            raise SizeError("pmf does not sum to 1")

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.pmf.size)

    def mean(self) -> float:
        return float(self.support @ self.pmf)

    def variance(self) -> float:
        m = self.mean()
        return float((self.support.astype(float) ** 2) @ self.pmf - m * m)


def _log_binom_pmf(n: int) -> np.ndarray:
    """log P(X = k) for X ~ Binomial(n, 1/2), k = 0..n."""
    lfact = np.array([math.lgamma(j + 1) for j in range(n + 1)])
    return lfact[n] - lfact - lfact[::-1] - n * math.log(2.0)


def _binom_tails(k: int, n: int) -> tuple:
    """(P(X <= k), P(X >= k)) for X ~ Binomial(n, 1/2), summed in log space.

    The upper tail is evaluated as the lower tail at n - k, so negating the
    data (k -> n - k) swaps the two tails bit-for-bit.
    """
    logp = _log_binom_pmf(n)

    def lower_tail(j: int) -> float:
        return min(float(np.exp(logp[: j + 1]).sum()), 1.0)

    return lower_tail(k), lower_tail(n - k)


def binom_two_sided_p(k: int, n: int) -> float:
    """Two-sided exact p for k successes out of n fair coin flips."""
    if not 0 <= k <= n:
        raise SizeError(f"need 0 <= k <= n, got k={k}, n={n}")
    lower, upper = _binom_tails(k, n)
    return min(1.0, 2.0 * min(lower, upper))


def sign_test(scores: SubjectScores, alternative=Alternative.TWO_SIDED) -> TestReport:
    """Exact Binomial sign test on the count of positive scores.

    Zero scores are excluded; with all scores zero there is nothing to test
    and AllZeroScores is raised.
    """
    alternative = Alternative(alternative)
    s = scores.scores
    n_zero = int(np.sum(s == 0.0))
    n_eff = s.size - n_zero
    if n_eff == 0:
        raise AllZeroScores("every subject score is zero")
    u = int(np.sum(s > 0.0))
    lower, upper = _binom_tails(u, n_eff)
    if alternative is Alternative.LESS:
        p = lower
    elif alternative is Alternative.GREATER:
        p = upper
    else:
        p = min(1.0, 2.0 * min(lower, upper))
    return TestReport(
        statistic_name="U+",
        observed=float(u),
        null_mean=n_eff / 2.0,
        p_value=p,
        method=PValueMethod.EXACT,
        n_effective=n_eff,
        n_zero_scores=n_zero,
        alternative=alternative,
    )


def wilcoxon_null(n: int) -> WilcoxonNull:
    """Exact pmf of W+ under independent fair signs on ranks 1..n."""
    if not 1 <= n <= 1000:
        raise SizeError(f"n must be in [1, 1000], got {n}")
    m = n * (n + 1) // 2
    pmf = np.zeros(m + 1)
    pmf[0] = 1.0
    for r in range(1, n + 1):
        pmf[r:] = pmf[r:] + pmf[: m + 1 - r]
        pmf *= 0.5
    pmf /= pmf.sum()
    pmf.flags.writeable = False
    return WilcoxonNull(n=n, pmf=pmf)


@functools.lru_cache(maxsize=64)
def _cached_wilcoxon_tails(n: int) -> tuple:
    """(cdf, sf) arrays of the exact W+ null, cached per n."""
    pmf = wilcoxon_null(n).pmf
    cdf = np.cumsum(pmf)
    sf = np.cumsum(pmf[::-1])[::-1]
    cdf.flags.writeable = False
    sf.flags.writeable = False
    return cdf, sf


def _norm_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _norm_cdf(z: float) -> float:
    # Mirrored form of _norm_sf so that _norm_cdf(-z) == _norm_sf(z) exactly.
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _edge_sf(z: float, g24: float) -> float:
    """Upper tail with a fourth-cumulant Edgeworth term (null is symmetric)."""
    phi = math.exp(-z * z / 2.0) / math.sqrt(2.0 * math.pi)
    return min(1.0, max(0.0, _norm_sf(z) + phi * g24 * (z * z * z - 3.0 * z)))


def _edge_cdf(z: float, g24: float) -> float:
    phi = math.exp(-z * z / 2.0) / math.sqrt(2.0 * math.pi)
    return min(1.0, max(0.0, _norm_cdf(z) - phi * g24 * (z * z * z - 3.0 * z)))


def signed_rank_test(scores: SubjectScores, alternative=Alternative.TWO_SIDED) -> TestReport:
    """Wilcoxon signed rank test on subject scores, reported as W+.

    Zero scores are dropped. With no ties among the absolute scores and at
    most 200 effective subjects the p-value uses the exact null; otherwise a
    normal approximation with tie-corrected variance, 0.5 continuity
    correction, and an Edgeworth kurtosis term.
    """
    alternative = Alternative(alternative)
    s = scores.scores
    n_zero = int(np.sum(s == 0.0))
    keep = s != 0.0
    n_eff = int(np.sum(keep))
    if n_eff == 0:
        raise AllZeroScores("every subject score is zero")
    s = s[keep]
    ranks = midrank(np.abs(s))
    w_plus = float(ranks[s > 0.0].sum())
    null_mean = n_eff * (n_eff + 1) / 4.0

    has_ties = np.unique(np.abs(s)).size < n_eff
    if not has_ties and n_eff <= WILCOXON_EXACT_MAX_N:
        cdf, sf = _cached_wilcoxon_tails(n_eff)
        w_int = int(round(w_plus))
        lower, upper = float(cdf[w_int]), float(sf[w_int])
        method = PValueMethod.EXACT
    else:
        # Conditional on the observed midranks r, W+ = sum r_i * Bernoulli(1/2),
        # so sum(r^2)/4 is exactly the tie-corrected variance
        # n(n+1)(2n+1)/24 - sum(t^3 - t)/48 and -sum(r^4)/8 the fourth cumulant.
        var = float(ranks @ ranks) / 4.0
        kappa4 = -float((ranks**2) @ (ranks**2)) / 8.0
        g24 = kappa4 / (var * var) / 24.0
        sd = math.sqrt(var)
        lower = _edge_cdf((w_plus + 0.5 - null_mean) / sd, g24)
        upper = _edge_sf((w_plus - 0.5 - null_mean) / sd, g24)
        method = PValueMethod.NORMAL_APPROX

    if alternative is Alternative.LESS:
        p = min(1.0, lower)
    elif alternative is Alternative.GREATER:
        p = min(1.0, upper)
    else:
        p = min(1.0, 2.0 * min(lower, upper))
    return TestReport(
        statistic_name="W+",
        observed=w_plus,
        null_mean=null_mean,
        p_value=p,
        method=method,
        n_effective=n_eff,
        n_zero_scores=n_zero,
        alternative=alternative,
    )
