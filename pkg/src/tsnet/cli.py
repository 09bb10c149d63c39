"""Command line interface.

    tsnet analyze  --input series.csv --column epu [--report out.json]
    tsnet gen      --kind fgn --n 16384 --hurst 0.8 --seed 42 --out s.csv
    tsnet fetch    us-daily --out-dir data/
    tsnet plotdata --input series.csv --column epu --out-dir plots/

Exit codes: 0 success, 1 runtime error (bad input file, network failure,
unusable data), 2 usage error.  Stage-level degeneracies during analyze
are recorded inside the report rather than aborting the run.

The environment variable TSNET_THREADS (default 1) sets how many worker
threads the all-pairs path computation may use; results are identical
for every setting.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .errors import EmptySeries, InvalidParam, TsnetError
from ._fit import log_spaced_ints
from .fetch import DATASETS, fetch_dataset
from .generators import KINDS, GeneratorSpec, generate
from .dfa import dfa_fluctuation
from .netstats import degree_distribution, small_world_curve
from .report import build_report, canonical_json
from .series import TimeSeries, from_csv
from .visibility import build_fast


def _scale_grid(text: str) -> list[int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected MIN:MAX:COUNT, got {text!r}"
        )
    try:
        lo, hi, count = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected integers in MIN:MAX:COUNT, got {text!r}"
        ) from None
    if lo < 2 or hi < lo or count < 1:
        raise argparse.ArgumentTypeError(f"bad scale grid {text!r}")
    return [int(s) for s in log_spaced_ints(lo, hi, count)]


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from None


def _load_series(path: str, column: str) -> TimeSeries:
    with open(path, "rb") as fh:
        data = fh.read()
    header_line = data.split(b"\n", 1)[0].decode("utf-8-sig", errors="replace")
    header = next(csv.reader(io.StringIO(header_line)), [])
    date_col = next(
        (name for name in header if name.strip().lower() == "date"), None
    )
    col: str | int = int(column) if column.lstrip("-").isdigit() else column
    return from_csv(data, column=col, date_column=date_col, label=Path(path).name)


def _truncate_to_date(ts: TimeSeries, date_end: str) -> TimeSeries:
    if ts.timestamps is None:
        raise InvalidParam("--date-end requires a date column in the input")
    keep = 0
    for stamp in ts.timestamps:
        if stamp[: len(date_end)] <= date_end:
            keep += 1
        else:
            break
    if keep == 0:
        raise EmptySeries(f"no rows on or before {date_end}")
    return ts.prefix(keep)


def _cmd_analyze(args) -> int:
    ts = _load_series(args.input, args.column)
    if args.date_end:
        ts = _truncate_to_date(ts, args.date_end)
    tail_range = (args.tail_kmin, None) if args.tail_kmin is not None else None
    report = build_report(
        ts,
        dfa_order=args.dfa_order,
        dfa_scales=args.dfa_scales,
        tail_k_range=tail_range,
        small_world=args.small_world,
        prefix_sizes=args.prefix_sizes,
        source={"path": args.input, "column": args.column},
    )
    text = canonical_json(report)
    if args.report:
        Path(args.report).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gen(args) -> int:
    params = {}
    for key in ("value", "slope", "intercept", "period", "amplitude", "hurst"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    ts = generate(GeneratorSpec(kind=args.kind, n=args.n, seed=args.seed, params=params))
    lines = ["index,value\n"]
    lines.extend(f"{i},{float(v)!r}\n" for i, v in enumerate(ts.values))
    text = "".join(lines)
    if args.out:
        Path(args.out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_fetch(args) -> int:
    result = fetch_dataset(
        args.dataset, url=args.url, out_dir=args.out_dir, timeout=args.timeout
    )
    print(f"wrote {result.csv_path} ({result.rows} rows)")
    print(f"manifest {result.manifest_path} sha256={result.sha256[:16]}...")
    if not result.vintage_matches:
        print(
            f"warning: row count {result.rows} differs from the reference "
            f"vintage ({DATASETS[args.dataset].reference_rows}); "
            "published statistics may not reproduce exactly",
            file=sys.stderr,
        )
    return 0


def _cmd_plotdata(args) -> int:
    ts = _load_series(args.input, args.column)
    if args.date_end:
        ts = _truncate_to_date(ts, args.date_end)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)

    def skip(name: str, exc: TsnetError) -> None:
        print(f"tsnet: skipping {name}: {exc}", file=sys.stderr)

    try:
        result = dfa_fluctuation(ts, scales=args.dfa_scales, order=args.dfa_order)
        rows = "".join(
            f"{int(n)},{float(f)!r}\n"
            for n, f in zip(result.scales, result.fluctuations)
        )
        (outdir / "dfa_fluctuations.csv").write_text("n,F\n" + rows, newline="\n")
    except TsnetError as exc:
        skip("dfa_fluctuations.csv", exc)

    graph = None
    try:
        graph = build_fast(ts)
        dist = degree_distribution(graph)
        rows = "".join(
            f"{int(k)},{float(p)!r}\n" for k, p in zip(dist.support, dist.pdf)
        )
        (outdir / "degree_pdf.csv").write_text("k,p\n" + rows, newline="\n")
    except TsnetError as exc:
        skip("degree_pdf.csv", exc)

    if args.small_world and graph is not None:
        try:
            curve = small_world_curve(ts, sizes=args.prefix_sizes)
            rows = "".join(
                f"{int(n)},{float(length)!r}\n"
                for n, length in zip(curve.sizes, curve.lengths)
            )
            (outdir / "smallworld_curve.csv").write_text("N,L\n" + rows, newline="\n")
        except TsnetError as exc:
            skip("smallworld_curve.csv", exc)
    return 0


def _add_series_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="input CSV path")
    parser.add_argument(
        "--column",
        default="value",
        help="value column name or zero-based index (default: value)",
    )
    parser.add_argument(
        "--date-end",
        default=None,
        metavar="YYYY-MM[-DD]",
        help="keep only rows dated on or before this (prefix match allowed)",
    )
    parser.add_argument(
        "--dfa-order", type=int, default=2, help="detrending polynomial order"
    )
    parser.add_argument(
        "--dfa-scales",
        type=_scale_grid,
        default=None,
        metavar="MIN:MAX:COUNT",
        help="log-spaced DFA scale grid (default: 8 to n/4, 20 scales)",
    )
    parser.add_argument(
        "--prefix-sizes",
        type=_int_list,
        default=None,
        metavar="N1,N2,...",
        help="growing-window sizes for the small-world curve",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsnet",
        description="Visibility-graph and scaling analysis of univariate time series.",
        epilog="TSNET_THREADS controls path-length worker threads (output is "
        "identical for any value).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis report as canonical JSON")
    _add_series_args(p)
    p.add_argument("--report", default=None, help="write JSON here instead of stdout")
    p.add_argument(
        "--small-world",
        action="store_true",
        help="include the growing-window L(N) section (slow on long series)",
    )
    p.add_argument(
        "--tail-kmin",
        type=int,
        default=None,
        help="lower degree bound for the tail fit (default: ceil of mean degree)",
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("gen", help="write a synthetic series as index,value CSV")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--value", type=float, default=None, help="constant level")
    p.add_argument("--slope", type=float, default=None, help="linear slope")
    p.add_argument("--intercept", type=float, default=None, help="linear intercept")
    p.add_argument("--period", type=float, default=None, help="sawtooth/periodic period")
    p.add_argument("--amplitude", type=float, default=None, help="periodic amplitude")
    p.add_argument("--hurst", type=float, default=None, help="fgn Hurst exponent")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("fetch", help="download and normalize a public dataset")
    p.add_argument("dataset", choices=sorted(DATASETS))
    p.add_argument("--url", default=None, help="override the source URL (file:// ok)")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--timeout", type=float, default=30.0)
    p.set_defaults(func=_cmd_fetch)

    p = sub.add_parser("plotdata", help="write plot-ready CSV curves")
    _add_series_args(p)
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument(
        "--small-world",
        action="store_true",
        help="also write the growing-window curve (slow on long series)",
    )
    p.set_defaults(func=_cmd_plotdata)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TsnetError as exc:
        print(f"tsnet: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"tsnet: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
