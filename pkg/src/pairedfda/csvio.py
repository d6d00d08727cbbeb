"""Paired-sample CSV format.

Header: ``subject,condition,s_<loc>,...`` where each ``s_`` suffix is the
decimal sampling location. One row per (subject, condition) with condition
0 or 1; cells are decimal literals or ``NA`` for a missing measurement.
Subjects keep their order of first appearance. Written files round-trip to
an identical sample, including missing-cell placement.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .core import FunctionalSample, Grid, PairedSample
from .errors import SchemaError

MISSING_TOKEN = "NA"


def write_paired_csv(paired: PairedSample, path) -> None:
    with open(path, "w", newline="") as handle:
        _write(paired, handle)


def paired_csv_text(paired: PairedSample) -> str:
    buf = io.StringIO()
    _write(paired, buf)
    return buf.getvalue()


def _write(paired: PairedSample, handle) -> None:
    writer = csv.writer(handle)
    writer.writerow(
        ["subject", "condition"] + [f"s_{float(p)!r}" for p in paired.grid.points]
    )
    for i, sid in enumerate(paired.subject_ids):
        for cond, sample in ((0, paired.condition0), (1, paired.condition1)):
            cells = [
                MISSING_TOKEN if sample.missing[i, k] else repr(float(sample.values[i, k]))
                for k in range(paired.grid.size)
            ]
            writer.writerow([sid, cond] + cells)


def read_paired_csv(path) -> PairedSample:
    with open(path, "r", newline="") as handle:
        return _read(handle)


def paired_from_csv_text(text: str) -> PairedSample:
    return _read(io.StringIO(text))


def _read(handle) -> PairedSample:
    rows = list(csv.reader(handle))
    if not rows:
        raise SchemaError("empty file")
    header = rows[0]
    if len(header) < 4 or header[0] != "subject" or header[1] != "condition":
        raise SchemaError("header must start with 'subject,condition' and have 2+ gridpoints")
    points = []
    for col, name in enumerate(header[2:], start=3):
        if not name.startswith("s_"):
            raise SchemaError(f"header column {col}: expected 's_<location>', got {name!r}")
        try:
            points.append(float(name[2:]))
        except ValueError as exc:
            raise SchemaError(f"header column {col}: bad sampling location {name!r}") from exc
    grid = Grid(np.array(points))
    n_cols = grid.size

    seen = {}
    order = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != n_cols + 2:
            raise SchemaError(f"row {lineno}: expected {n_cols + 2} fields, got {len(row)}")
        sid, cond_token = row[0], row[1]
        if cond_token not in ("0", "1"):
            raise SchemaError(f"row {lineno}: condition must be 0 or 1, got {cond_token!r}")
        cond = int(cond_token)
        values = np.empty(n_cols)
        mask = np.zeros(n_cols, dtype=bool)
        for k, token in enumerate(row[2:]):
            if token == MISSING_TOKEN:
                mask[k] = True
                values[k] = np.nan
            else:
                try:
                    values[k] = float(token)
                except ValueError as exc:
                    raise SchemaError(
                        f"row {lineno}, column {k + 3}: bad value {token!r}"
                    ) from exc
        if sid not in seen:
            seen[sid] = {}
            order.append(sid)
        if cond in seen[sid]:
            raise SchemaError(f"row {lineno}: duplicate condition {cond} for subject {sid!r}")
        seen[sid][cond] = (values, mask)

    for sid in order:
        missing_conds = {0, 1} - set(seen[sid])
        if missing_conds:
            raise SchemaError(f"subject {sid!r}: no row for condition {sorted(missing_conds)[0]}")

    def build(cond):
        vals = np.vstack([seen[sid][cond][0] for sid in order])
        mask = np.vstack([seen[sid][cond][1] for sid in order])
        return FunctionalSample(grid=grid, values=vals, subject_ids=tuple(order), missing=mask)

    return PairedSample(condition0=build(0), condition1=build(1))
