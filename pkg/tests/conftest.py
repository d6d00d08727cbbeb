"""Shared brute-force oracles, kept independent of the library code paths."""

import numpy as np
import pytest


def midrank_oracle(values):
    """Rank by sorting (value, index) pairs and average tied positions."""
    values = list(map(float, values))
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and values[order[j]] == values[order[i]]:
            j += 1
        mean_pos = (i + 1 + j) / 2.0
        for k in range(i, j):
            ranks[order[k]] = mean_pos
        i = j
    return np.array(ranks)


def signed_rank_field_oracle(d):
    """Column-by-column signs and midranks via the sorting oracle."""
    d = np.asarray(d, dtype=float)
    n, s = d.shape
    signs = np.zeros((n, s))
    ranks = np.zeros((n, s))
    for k in range(s):
        col = d[:, k]
        ranks[:, k] = midrank_oracle(np.abs(col))
        for i in range(n):
            signs[i, k] = 0.0 if col[i] == 0 else (1.0 if col[i] > 0 else -1.0)
    return signs, ranks


def sdrt_scores_oracle(d, w=(-1.0, 0.0, 1.0)):
    """Plain double loop: average of weight(sign) * midrank per subject."""
    d = np.asarray(d, dtype=float)
    n, s = d.shape
    signs, ranks = signed_rank_field_oracle(d)
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for k in range(s):
            if signs[i, k] < 0:
                acc += w[0] * ranks[i, k]
            elif signs[i, k] > 0:
                acc += w[2] * ranks[i, k]
            else:
                acc += w[1] * ranks[i, k]
        out[i] = acc / s
    return out


def romberg_quad(f, a, b, levels=12):
    """Richardson-extrapolated trapezoid rule on [a, b]."""
    table = []
    for lev in range(levels):
        m = 2**lev
        x = np.linspace(a, b, m + 1)
        h = (b - a) / m
        t = h * (f(x[0]) / 2 + f(x[1:-1]).sum() + f(x[-1]) / 2)
        row = [t]
        for j, prev in enumerate(table[-1] if table else []):
            row.append(row[j] + (row[j] - prev) / (4 ** (j + 1) - 1))
        table.append(row)
    return table[-1][-1]


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
