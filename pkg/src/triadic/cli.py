"""Command-line entry point: ``triadic <subcommand> [options]``.

Exit status: 0 on success, 1 on usage errors, 2 on data errors. Data goes to
stdout (or ``--out``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
from datetime import datetime, timezone

from . import __version__, kernels, oracle
from .corpus import (
    Corpus,
    CorpusError,
    FilterConfig,
    WindowSpec,
    apply_filters,
    parse_corpus,
)
from .experiments import (
    PlantedClosure,
    SynthConfig,
    generate_synthetic,
    run_timeseries,
    timeseries_header,
)
from .projection import format_edge_list, project_one_mode
from .corpus import serialize_corpus
from .static_metrics import fraction_decimal, fraction_text, ncc, occ
from .temporal_metrics import (
    closure_by_shared_count,
    involvement_ratio,
    overlap_ratios,
    tcc,
    window_sweep,
)

log = logging.getLogger("triadic")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("lengths must be positive integers")
    return values


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _sizes(text: str):
    if ":" not in text:
        return int(text)
    out = {}
    for part in text.split(","):
        k, w = part.split(":")
        out[int(k)] = float(w)
    return out


# -- argument groups --------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="corpus file, or '-' for stdin")
    p.add_argument("--format", choices=("jsonl", "tsv"), help="input layout (default: by extension)")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
    g = p.add_argument_group("filters")
    g.add_argument("--from-year", type=int)
    g.add_argument("--to-year", type=int)
    cap = g.add_mutually_exclusive_group()
    cap.add_argument("--max-authors", type=int)
    cap.add_argument("--percentile", type=float)
    g.add_argument("--keep-single-authored", action="store_true")
    g.add_argument(
        "--percentile-before-single-drop",
        action="store_true",
        help="compute the percentile cap before removing single-authored papers",
    )


def _add_window(p: argparse.ArgumentParser, window: bool = True) -> None:
    p.add_argument("--target-year", type=int, required=True)
    if window:
        p.add_argument("--window", type=int, default=5, help="preceding years (default 5)")
    _add_modes(p)


def _add_modes(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eligibility", choices=("strict", "literal"), default="strict")
    p.add_argument("--dual-activity", type=_on_off, default=True, metavar="on|off")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="triadic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"triadic {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse, filter and report what was dropped")
    _add_input(p)
    p = sub.add_parser("stats", help="corpus size and authors-per-paper histogram")
    _add_input(p)

    for name in ("ncc", "occ"):
        p = sub.add_parser(name, help=f"static {name.upper()} over the (filtered) corpus")
        _add_input(p)
        p.add_argument("--csv", action="store_true", help="CSV row instead of JSON")
        p.add_argument("--oracle", action="store_true", help="brute-force count (small inputs)")
        if name == "ncc":
            p.add_argument("--edges", help="also write the projection as a TSV edge list")

    p = sub.add_parser("tcc", help="over-time closure for one target year")
    _add_input(p)
    _add_window(p)
    p.add_argument("--details", help="write one pair observation per line (JSONL)")
    p.add_argument("--oracle", action="store_true", help="brute-force count (small inputs)")

    p = sub.add_parser("sweep", help="TCC for several preceding-window lengths")
    _add_input(p)
    _add_window(p, window=False)
    p.add_argument("--lengths", type=_int_list, default=[1, 2, 3, 4, 5])

    p = sub.add_parser("involvement", help="share of closures with a shared coauthor on board")
    _add_input(p)
    _add_window(p)

    p = sub.add_parser("shared-curve", help="closure ratio by number of shared collaborators")
    _add_input(p)
    _add_window(p)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("overlap", help="authors active in both target year and preceding window")
    _add_input(p)
    p.add_argument("--target-year", type=int, required=True)
    p.add_argument("--window", type=int, default=5)

    p = sub.add_parser("timeseries", help="per-year NCC, OCC, TCC sweep, overlap, involvement")
    _add_input(p)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--sweep", type=_int_list, default=[1, 2, 3, 4, 5])
    p.add_argument("--json", action="store_true", help="JSON lines instead of CSV")
    _add_modes(p)

    p = sub.add_parser("synth", help="write a seeded synthetic corpus (JSONL) plus sidecar log")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--years", type=int, default=15)
    p.add_argument("--start-year", type=int, default=1995)
    p.add_argument("--papers-per-year", type=int, default=100)
    p.add_argument("--authors-per-paper", type=_sizes, default=3, help="N or 'k:w,k:w'")
    p.add_argument("--initial-pool", type=int, default=200)
    p.add_argument("--pool-growth", type=int, default=100)
    p.add_argument("--repeat-prob", type=float, default=0.0)
    p.add_argument("--closure-prob", type=float, default=0.0)
    p.add_argument("--closure-lookback", type=int, default=5)
    return parser


# -- helpers ----------------------------------------------------------------------


def _read_input(args) -> tuple[Corpus, str]:
    if args.input == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
    fmt = args.format or ("tsv" if args.input.endswith((".tsv", ".txt")) else "jsonl")
    return parse_corpus(data, fmt), hashlib.sha256(data).hexdigest()


def _filter_config(args) -> FilterConfig:
    return FilterConfig(
        min_year=args.from_year,
        max_year=args.to_year,
        max_authors=args.max_authors,
        percentile=args.percentile,
        drop_single_authored=not args.keep_single_authored,
        percentile_before_single_drop=args.percentile_before_single_drop,
    )


def _effective_config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("verbose",)}
    cfg["backend"] = kernels.backend_name()
    return cfg


def _emit(args, text: str, digest: str | None) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        manifest = {
            "tool": "triadic",
            "version": __version__,
            "config": _effective_config(args),
            "input_sha256": digest,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, default=str)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _json_line(obj) -> str:
    return json.dumps(obj) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(value) -> str:
    dec = fraction_decimal(value)
    return "" if dec is None else repr(dec)


# -- subcommands ------------------------------------------------------------------


def _cmd_validate(args, corpus, digest):
    filtered = apply_filters(corpus, _filter_config(args))
    report = {
        "papers_read": len(corpus),
        "duplicate_author_warnings": corpus.duplicate_authors,
        "filter": filtered.filter_report.to_dict(),
        "authors_per_paper_read": {str(k): v for k, v in corpus.authors_per_paper().items()},
        "authors_per_paper_kept": {str(k): v for k, v in filtered.authors_per_paper().items()},
    }
    _emit(args, json.dumps(report, indent=2) + "\n", digest)


def _cmd_stats(args, corpus, digest):
    filtered = apply_filters(corpus, _filter_config(args))
    _emit(args, json.dumps(filtered.stats(), indent=2) + "\n", digest)


def _cmd_static(args, corpus, digest):
    if args.command == "ncc":
        if args.oracle:
            report = oracle.brute_ncc(corpus)
        else:
            graph = project_one_mode(corpus)
            report = ncc(graph)
            if args.edges:
                with open(args.edges, "w", encoding="utf-8") as fh:
                    fh.write(format_edge_list(graph))
    else:
        report = oracle.brute_occ(corpus) if args.oracle else occ(corpus)
    d = report.to_dict()
    if args.csv:
        text = _csv_text(list(d), [[("" if v is None else v) for v in d.values()]])
    else:
        text = _json_line(d)
    _emit(args, text, digest)


def _window(args) -> WindowSpec:
    return WindowSpec(args.target_year, args.window)


def _cmd_tcc(args, corpus, digest):
    if args.oracle:
        report = oracle.brute_tcc(corpus, _window(args), args.dual_activity, args.eligibility)
    else:
        report = tcc(corpus, _window(args), args.dual_activity, args.eligibility)
    for w in report.warnings:
        log.warning(w)
    if args.details:
        with open(args.details, "w", encoding="utf-8") as fh:
            for obs in report.observations:
                fh.write(_json_line(obs.to_dict()))
    _emit(args, _json_line(report.to_dict()), digest)


def _cmd_sweep(args, corpus, digest):
    reports = window_sweep(corpus, args.target_year, args.lengths, args.dual_activity, args.eligibility)
    _emit(args, "".join(_json_line(r.to_dict()) for r in reports), digest)


def _cmd_involvement(args, corpus, digest):
    report = tcc(corpus, _window(args), args.dual_activity, args.eligibility)
    ratio = involvement_ratio(report)
    out = {
        "metric": "involvement",
        "window": report.window.to_dict(),
        "numerator": report.involved_pairs,
        "denominator": report.closed_pairs,
        "ratio": fraction_text(ratio),
        "decimal": fraction_decimal(ratio),
        "defined": ratio is not None,
    }
    _emit(args, _json_line(out), digest)


def _cmd_shared_curve(args, corpus, digest):
    report = tcc(corpus, _window(args), args.dual_activity, args.eligibility)
    buckets = closure_by_shared_count(report)
    if args.csv:
        rows = [[n, e, c, fraction_text(r), repr(float(r))] for n, (e, c, r) in buckets.items()]
        text = _csv_text(["n_shared", "eligible", "closed", "ratio", "decimal"], rows)
    else:
        text = "".join(
            _json_line(
                {"n_shared": n, "eligible": e, "closed": c, "ratio": fraction_text(r), "decimal": float(r)}
            )
            for n, (e, c, r) in buckets.items()
        )
    _emit(args, text, digest)


def _cmd_overlap(args, corpus, digest):
    t, p = overlap_ratios(corpus, _window(args))
    out = {
        "window": _window(args).to_dict(),
        "ratio_target": fraction_text(t),
        "ratio_preceding": fraction_text(p),
        "decimal_target": fraction_decimal(t),
        "decimal_preceding": fraction_decimal(p),
    }
    _emit(args, _json_line(out), digest)


def _cmd_timeseries(args, corpus, digest):
    rows = run_timeseries(
        corpus,
        args.start,
        args.end,
        args.window,
        args.sweep,
        require_dual_activity=args.dual_activity,
        eligibility=args.eligibility,
        threads=args.threads,
    )
    for row in rows:
        if row.partial_window:
            log.warning("year %d: window only partly covered by corpus", row.year)
    if args.json:
        text = "".join(_json_line(r.to_dict()) for r in rows)
    else:
        text = _csv_text(
            timeseries_header(args.sweep),
            [[r.year, *(_fmt(v) for v in r.ratios())] for r in rows],
        )
    _emit(args, text, digest)


def _cmd_synth(args):
    cfg = SynthConfig(
        years=args.years,
        papers_per_year=args.papers_per_year,
        authors_per_paper=args.authors_per_paper,
        author_pool_growth=args.pool_growth,
        repeat_collab_prob=args.repeat_prob,
        closure_prob=args.closure_prob,
        seed=args.seed,
        start_year=args.start_year,
        initial_pool=args.initial_pool,
        closure_lookback=args.closure_lookback,
    )
    planted: list[PlantedClosure] = []
    corpus = generate_synthetic(cfg, planted)
    data = serialize_corpus(corpus, "jsonl")
    with open(args.out, "wb") as fh:
        fh.write(data)
    sidecar = {
        "tool": "triadic",
        "version": __version__,
        "config": cfg.to_dict(),
        "output_sha256": hashlib.sha256(data).hexdigest(),
        "papers": len(corpus),
        "planted_closures": [p.to_dict() for p in planted],
    }
    with open(args.out + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=1)
        fh.write("\n")
    log.info("wrote %d papers, %d planted closures", len(corpus), len(planted))


COMMANDS = {
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "ncc": _cmd_static,
    "occ": _cmd_static,
    "tcc": _cmd_tcc,
    "sweep": _cmd_sweep,
    "involvement": _cmd_involvement,
    "shared-curve": _cmd_shared_curve,
    "overlap": _cmd_overlap,
    "timeseries": _cmd_timeseries,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "synth":
            _cmd_synth(args)
            return 0
        corpus, digest = _read_input(args)
        if args.command not in ("validate", "stats"):
            corpus = apply_filters(corpus, _filter_config(args))
        COMMANDS[args.command](args, corpus, digest)
    except (CorpusError, OSError) as exc:
        print(f"triadic: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(dispatch())
