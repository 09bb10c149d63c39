"""Download and normalize the public policy-uncertainty index files.

Each dataset is fetched from its publisher URL (or an override, which
may be a ``file://`` URL for offline work), normalized to a simple
``date,<value columns>`` CSV, and written next to a JSON manifest that
records the source URL, SHA-256 of the raw payload, and row count.

The publisher occasionally revises these files, so downstream numbers
can drift between vintages; the manifest flags a row count that differs
from the vintage this package's reference statistics were computed on.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import socket
import urllib.error
import urllib.request
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import InvalidParam, NetworkError, UnrecognizedFormat

_XLSX_MAGIC = b"PK\x03\x04"


@dataclass(frozen=True)
class _Dataset:
    url: str
    monthly: bool
    value_names: tuple[str, ...]
    reference_rows: int


DATASETS: dict[str, _Dataset] = {
    "us-daily": _Dataset(
        url="https://www.policyuncertainty.com/media/All_Daily_Policy_Data.csv",
        monthly=False,
        value_names=("epu",),
        reference_rows=12368,
    ),
    "us-monthly": _Dataset(
        url="https://www.policyuncertainty.com/media/US_Policy_Uncertainty_Data.xlsx",
        monthly=True,
        value_names=("epu", "news_epu"),
        reference_rows=407,
    ),
    "cn-monthly": _Dataset(
        url="https://www.policyuncertainty.com/media/China_Policy_Uncertainty_Data.xlsx",
        monthly=True,
        value_names=("epu",),
        reference_rows=286,
    ),
}


@dataclass(frozen=True)
class FetchResult:
    dataset: str
    csv_path: Path
    manifest_path: Path
    sha256: str
    rows: int
    source_url: str
    vintage_matches: bool


def fetch_dataset(
    name: str,
    url: str | None = None,
    out_dir: str | Path = ".",
    timeout: float = 30.0,
) -> FetchResult:
    if name not in DATASETS:
        raise InvalidParam(
            f"unknown dataset {name!r}; choose from {', '.join(sorted(DATASETS))}"
        )
    spec = DATASETS[name]
    source_url = url or spec.url
    raw = _download(source_url, timeout)
    header, rows = _parse_table(raw)
    out_rows = _normalize_rows(header, rows, spec)
    if not out_rows:
        raise UnrecognizedFormat(f"no data rows recognized in {source_url}")

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    with open(csv_path, "w", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("date",) + spec.value_names)
        writer.writerows(out_rows)

    manifest = {
        "dataset": name,
        "source_url": source_url,
        "sha256": hashlib.sha256(raw).hexdigest(),
        "content_bytes": len(raw),
        "rows": len(out_rows),
        "reference_rows": spec.reference_rows,
        "vintage_matches": len(out_rows) == spec.reference_rows,
        "retrieved_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    manifest_path = out_dir / f"{name}.manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return FetchResult(
        dataset=name,
        csv_path=csv_path,
        manifest_path=manifest_path,
        sha256=manifest["sha256"],
        rows=len(out_rows),
        source_url=source_url,
        vintage_matches=manifest["vintage_matches"],
    )


def _download(url: str, timeout: float) -> bytes:
    request = urllib.request.Request(url, headers={"User-Agent": "tsnet/0.1"})
    try:
        with urllib.request.urlopen(request, timeout=timeout) as resp:
            return resp.read()
    except (urllib.error.URLError, socket.timeout, OSError, ValueError) as exc:
        raise NetworkError(f"could not retrieve {url}: {exc}") from exc


def _parse_table(raw: bytes) -> tuple[list[str], list[list[str]]]:
    """Return (header, rows) from CSV bytes or an xlsx workbook."""
    if raw.startswith(_XLSX_MAGIC):
        return _parse_xlsx(raw)
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError:
        text = raw.decode("latin-1")
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise UnrecognizedFormat("file has no data rows")
    return rows[0], rows[1:]


def _parse_xlsx(raw: bytes) -> tuple[list[str], list[list[str]]]:
    try:
        from openpyxl import load_workbook
    except ImportError as exc:
        raise UnrecognizedFormat(
            "source is an xlsx workbook and openpyxl is not installed; "
            "pass --url pointing at a CSV export instead"
        ) from exc
    wb = load_workbook(io.BytesIO(raw), read_only=True, data_only=True)
    ws = wb[wb.sheetnames[0]]
    rows = [
        ["" if c is None else str(c) for c in row]
        for row in ws.iter_rows(values_only=True)
    ]
    wb.close()
    rows = [r for r in rows if any(c.strip() for c in r)]
    if len(rows) < 2:
        raise UnrecognizedFormat("workbook has no data rows")
    return rows[0], rows[1:]


def _find_column(header: list[str], token: str) -> int | None:
    for i, name in enumerate(header):
        if token in name.strip().lower():
            return i
    return None


def _int_or_none(cell: str) -> int | None:
    try:
        return int(float(cell))
    except (TypeError, ValueError):
        return None


def _normalize_rows(
    header: list[str], rows: list[list[str]], spec: _Dataset
) -> list[tuple]:
    year_col = _find_column(header, "year")
    month_col = _find_column(header, "month")
    day_col = None if spec.monthly else _find_column(header, "day")
    if year_col is None or month_col is None or (not spec.monthly and day_col is None):
        raise UnrecognizedFormat(
            f"could not locate date columns in header {header!r}"
        )
    date_cols = {year_col, month_col} | ({day_col} if day_col is not None else set())
    value_cols = [i for i in range(len(header)) if i not in date_cols]
    # keep only columns that are numeric in the first parseable row
    probe = next(
        (r for r in rows if _int_or_none(r[year_col]) is not None), None
    )
    if probe is not None:
        value_cols = [
            i
            for i in value_cols
            if i < len(probe) and _float_or_none(probe[i]) is not None
        ]
    if len(value_cols) < len(spec.value_names):
        raise UnrecognizedFormat(
            f"expected {len(spec.value_names)} value columns, found {len(value_cols)}"
        )
    value_cols = value_cols[: len(spec.value_names)]

    out = []
    for row in rows:
        year = _int_or_none(row[year_col]) if year_col < len(row) else None
        month = _int_or_none(row[month_col]) if month_col < len(row) else None
        if year is None or month is None:  # footnote or blank row
            continue
        if spec.monthly:
            date = f"{year:04d}-{month:02d}"
        else:
            day = _int_or_none(row[day_col]) if day_col < len(row) else None
            if day is None:
                continue
            date = f"{year:04d}-{month:02d}-{day:02d}"
        values = []
        for col in value_cols:
            v = _float_or_none(row[col]) if col < len(row) else None
            if v is None:
                break
            values.append(repr(v))
        if len(values) != len(value_cols):
            continue
        out.append((date, *values))
    out.sort(key=lambda r: r[0])
    return out


def _float_or_none(cell: str) -> float | None:
    try:
        value = float(cell)
    except (TypeError, ValueError):
        return None
    return value if value == value else None  # drop NaN cells
