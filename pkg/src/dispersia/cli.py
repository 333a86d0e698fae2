"""Command-line front end: ``dispersia {compute,rank,timeline,kappa}``.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 insufficient
categories, 5 coder id-set mismatch, 6 degenerate agreement.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__, ingest, measures, reliability
from .errors import DispersiaError, ParseError
from .report import (
    DEFAULT_PRECISION,
    Format,
    render_dispersion,
    render_kappa,
    render_rank_table,
    render_timeline,
)

EXIT_OK = 0
EXIT_PARSE = 2


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Flags accepted both before and after the subcommand name."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--format", choices=[f.value for f in Format], default=default(Format.MARKDOWN.value), help="output format"
    )
    parser.add_argument(
        "--precision", type=int, default=default(DEFAULT_PRECISION), help="decimals shown (display only)"
    )
    parser.add_argument(
        "--all-measures", action="store_true", default=default(False), help="add HHI, Gini and Shannon evenness"
    )
    parser.add_argument(
        "--strict-categories",
        action="store_true",
        default=default(False),
        help="reject categories missing from --taxonomy",
    )
    parser.add_argument(
        "--taxonomy", metavar="PATH", default=default(None), help="allowed category labels, one per line"
    )
    parser.add_argument(
        "--half-width",
        type=float,
        default=default(measures.DEFAULT_BALANCED_HALF_WIDTH),
        help="half-width of the 'balanced' band around 0.5",
    )


def _input_flags(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--counts", metavar="PATH", help="category,count CSV or JSON counts file ('-' for stdin)")
    src.add_argument("--records", metavar="PATH", help="id,year,category[,title] records CSV")
    parser.add_argument("--counts-format", choices=[f.value for f in ingest.CountsFormat], help="override detection")
    parser.add_argument("--from", dest="year_from", type=int, metavar="YEAR", help="first year (records only)")
    parser.add_argument("--to", dest="year_to", type=int, metavar="YEAR", help="last year (records only)")
    parser.add_argument(
        "--no-prune", action="store_true", help="keep zero-count categories in N (sensitivity analysis)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispersia", description="Brookes' measure of categorical dispersion and related statistics."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="N, Σf, M and Δ for one distribution")
    _input_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("rank", parents=[common], help="ranked table with f×r components")
    _input_flags(p)
    p.set_defaults(func=cmd_rank_table)

    p = sub.add_parser("timeline", parents=[common], help="Δ per year window")
    p.add_argument("--records", metavar="PATH", required=True, help="id,year,category[,title] records CSV")
    p.add_argument("--start", type=int, help="first year (default: earliest record)")
    p.add_argument("--end", type=int, help="last year (default: latest record)")
    p.add_argument("--step", type=int, help="years per window (default: one window over the whole range)")
    p.add_argument("--cumulative", action="store_true", help="windows grow from --start instead of tumbling")
    p.add_argument("--no-prune", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_timeline)

    p = sub.add_parser("kappa", parents=[common], help="Cohen's kappa between two coders")
    p.add_argument("coder_a", help="id,category CSV of the first coder")
    p.add_argument("coder_b", help="id,category CSV of the second coder")
    p.add_argument("--names", nargs=2, metavar=("A", "B"), help="coder names (default: file stems)")
    p.set_defaults(func=cmd_kappa)
    return parser


def _taxonomy(args):
    if not args.strict_categories:
        return None
    if not args.taxonomy:
        raise ParseError("--strict-categories needs --taxonomy PATH")
    return ingest.parse_taxonomy(_read_bytes(args.taxonomy))


def load_distribution(args) -> measures.Distribution:
    """The distribution selected by --counts or --records (with optional --from/--to)."""
    taxonomy = _taxonomy(args)
    if args.counts:
        if args.year_from is not None or args.year_to is not None:
            raise ParseError("--from/--to apply to --records input only")
        fmt = args.counts_format
        if fmt is None:
            fmt = "json" if args.counts.lower().endswith(".json") else "csv"
        d = ingest.parse_counts(_read_bytes(args.counts), fmt)
    else:
        corpus = ingest.parse_records(_read_bytes(args.records))
        year_range = None
        if args.year_from is not None or args.year_to is not None:
            lo, hi = corpus.years
            year_range = (
                args.year_from if args.year_from is not None else lo,
                args.year_to if args.year_to is not None else hi,
            )
        d = ingest.aggregate(corpus, year_range)
    if taxonomy is not None:
        ingest.check_taxonomy(d.labels, taxonomy)
    return d


def cmd_compute(args):
    d = load_distribution(args)
    report = measures.brookes_delta(
        d, prune=not args.no_prune, with_comparatives=args.all_measures, half_width=args.half_width
    )
    shown = measures.prune_and_validate(d, prune=not args.no_prune)
    return render_dispersion(report, shown, args.format, args.precision)


def cmd_rank_table(args):
    d = measures.prune_and_validate(load_distribution(args), prune=not args.no_prune)
    return render_rank_table(measures.rank_by_frequency(d), args.format, args.precision)


def cmd_timeline(args):
    corpus = ingest.parse_records(_read_bytes(args.records))
    taxonomy = _taxonomy(args)
    if taxonomy is not None:
        ingest.check_taxonomy({r.category for r in corpus.records}, taxonomy)
    lo, hi = corpus.years
    start = args.start if args.start is not None else lo
    end = args.end if args.end is not None else hi
    step = args.step if args.step is not None else end - start + 1
    try:
        spec = ingest.WindowSpec(
            start, end, step, ingest.WindowMode.CUMULATIVE if args.cumulative else ingest.WindowMode.TUMBLING
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rows = ingest.timeline(
        corpus, spec, prune=not args.no_prune, with_comparatives=args.all_measures, half_width=args.half_width
    )
    return render_timeline(rows, args.format, args.precision)


def cmd_kappa(args):
    names = args.names or (Path(args.coder_a).stem, Path(args.coder_b).stem)
    a = reliability.parse_coder_csv(_read_bytes(args.coder_a), names[0])
    b = reliability.parse_coder_csv(_read_bytes(args.coder_b), names[1])
    matrix = reliability.build_confusion(a, b)
    report = reliability.cohen_kappa(matrix)
    return render_kappa(report, matrix, reliability.disagreements(a, b), a, b, args.format, args.precision)


def _styled(text: str, stream) -> str:
    if os.environ.get("DISPERSIA_NO_COLOR") or os.environ.get("NO_COLOR") or not stream.isatty():
        return text
    return f"\033[1;31m{text}\033[0m"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 0:
        parser.error("--precision must be >= 0")
    if not 0 <= args.half_width < 0.5:
        parser.error("--half-width must lie in [0, 0.5)")
    try:
        rendered = args.func(args)
    except DispersiaError as exc:
        print(f"{_styled('error:', sys.stderr)} {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(rendered.body)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
