"""Time-series container, CSV ingestion, and descriptive statistics.

A :class:`TimeSeries` is an immutable, equally spaced sequence of finite
real observations.  Sample indices are implicit integers ``0..N-1``;
calendar timestamps, when attached, are informational only and play no
role in any computation.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .errors import EmptySeries, MissingColumn, ParseError


@dataclass(frozen=True)
class TimeSeries:
    """Ordered finite real observations with an identifying label.

    Invariants enforced at construction:

    * ``values`` is 1-d, length >= 1, every entry finite
    * ``timestamps``, if given, is strictly increasing and aligned with
      ``values``
    """

    values: np.ndarray
    label: str = ""
    timestamps: tuple | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError(f"series values must be 1-d, got shape {values.shape}")
        if values.size == 0:
            raise EmptySeries("series has no observations")
        if not np.all(np.isfinite(values)):
            raise ValueError("series values must be finite (no NaN or infinity)")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        if self.timestamps is not None:
            stamps = tuple(self.timestamps)
            if len(stamps) != values.size:
                raise ValueError(
                    f"{len(stamps)} timestamps for {values.size} observations"
                )
            if any(a >= b for a, b in zip(stamps, stamps[1:])):
                raise ValueError("timestamps must be strictly increasing")
            object.__setattr__(self, "timestamps", stamps)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def prefix(self, k: int) -> "TimeSeries":
        """First ``k`` observations as a new series."""
        if not 1 <= k <= self.n:
            raise ValueError(f"prefix length {k} outside [1, {self.n}]")
        stamps = self.timestamps[:k] if self.timestamps is not None else None
        return TimeSeries(self.values[:k], label=self.label, timestamps=stamps)


@dataclass(frozen=True)
class SummaryStats:
    """Descriptive statistics of one series.

    ``std_dev`` uses the sample (N-1) estimator.  ``skewness`` and
    ``kurtosis`` are the bias-adjusted sample estimators; ``kurtosis`` is
    the EXCESS convention (normal = 0).  Both are ``None`` when undefined
    (zero variance, or too few observations for the adjustment).
    """

    n: int
    mean: float
    median: float
    min: float
    max: float
    std_dev: float
    skewness: float | None
    kurtosis: float | None


def from_csv(
    data: bytes | str | IO,
    column: str | int,
    date_column: str | None = None,
    label: str | None = None,
) -> TimeSeries:
    """Parse one numeric column of a UTF-8 CSV (header row required).

    ``column`` selects by header name or zero-based index.  Rows whose
    target cell is not a finite real number raise :class:`ParseError`
    carrying the 1-based file line number; nothing is skipped silently.
    ``date_column`` optionally attaches a timestamp column (informational).
    """
    if isinstance(data, bytes):
        text = io.StringIO(data.decode("utf-8"))
    elif isinstance(data, str):
        text = io.StringIO(data)
    else:
        raw = data.read()
        text = io.StringIO(raw.decode("utf-8") if isinstance(raw, bytes) else raw)

    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptySeries("CSV has no header row") from None
    header = [h.strip() for h in header]

    col_idx = _resolve_column(header, column)
    date_idx = _resolve_column(header, date_column) if date_column is not None else None

    values: list[float] = []
    stamps: list[str] = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue  # blank line, common as a trailing artifact
        if col_idx >= len(row):
            raise ParseError(f"row {line_no} has no cell in column {column!r}", row=line_no)
        cell = row[col_idx].strip()
        try:
            value = float(cell)
        except ValueError:
            raise ParseError(
                f"row {line_no}: cannot parse {cell!r} as a real number", row=line_no
            ) from None
        if not np.isfinite(value):
            raise ParseError(f"row {line_no}: non-finite value {cell!r}", row=line_no)
        values.append(value)
        if date_idx is not None:
            stamps.append(row[date_idx].strip() if date_idx < len(row) else "")

    if not values:
        raise EmptySeries("CSV contains no data rows")

    return TimeSeries(
        np.asarray(values),
        label=label if label is not None else str(column),
        timestamps=tuple(stamps) if date_idx is not None else None,
    )


def _resolve_column(header: Sequence[str], column: str | int) -> int:
    if isinstance(column, int):
        if not 0 <= column < len(header):
            raise MissingColumn(f"column index {column} out of range (header has {len(header)})")
        return column
    try:
        return header.index(column)
    except ValueError:
        raise MissingColumn(f"column {column!r} not in header {list(header)}") from None


def summary(ts: TimeSeries) -> SummaryStats:
    """Two-pass moment computation over one series.

    Skewness and excess kurtosis follow the bias-adjusted sample
    estimators used by common statistical software; they need N >= 3
    (resp. N >= 4) and positive variance, otherwise ``None``.
    """
    x = ts.values
    n = x.size
    mean = float(np.mean(x))
    d = x - mean
    m2 = float(np.sum(d * d))
    std = float(np.sqrt(m2 / (n - 1))) if n >= 2 else 0.0

    skew: float | None = None
    kurt: float | None = None
    if std > 0.0:
        z = d / std
        if n >= 3:
            skew = float(n / ((n - 1) * (n - 2)) * np.sum(z**3))
        if n >= 4:
            s4 = float(np.sum(z**4))
            kurt = float(
                n * (n + 1) / ((n - 1) * (n - 2) * (n - 3)) * s4
                - 3 * (n - 1) ** 2 / ((n - 2) * (n - 3))
            )

    return SummaryStats(
        n=n,
        mean=mean,
        median=float(np.median(x)),
        min=float(np.min(x)),
        max=float(np.max(x)),
        std_dev=std,
        skewness=skew,
        kurtosis=kurt,
    )
