"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 input load/validation error,
4 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Sequence

from aucreduce import __version__
from aucreduce.data import DatasetError, LoadOptions, format_dataset, load_dataset, summarize
from aucreduce.plot import curve_svg
from aucreduce.psychometrics import (
    DEFAULT_CR_THRESHOLD,
    LoadingError,
    construct_reliability,
    load_loadings,
    reliability_comparison,
    variance_extracted,
)
from aucreduce.reduction import (
    SCHEMA_VERSION,
    STRATEGIES,
    cumulative_auc_curve,
    curve_table_text,
    item_auc_table,
    item_table_text,
    reduction_report,
    select_reduced_scale,
)
from aucreduce.synth import GeneratorSpec, generate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LOAD = 3
EXIT_COMPUTE = 4


class LoadFailure(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split("-"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW-HIGH, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _label_column(text: str) -> int | str:
    try:
        return int(text)
    except ValueError:
        return text


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", type=Path, help="delimited dataset file")
    p.add_argument("--delimiter", default=None, help="field delimiter (default: ',' or tab for .tsv)")
    p.add_argument("--tab", action="store_true", help="shorthand for --delimiter '\\t'")
    header = p.add_mutually_exclusive_group()
    header.add_argument("--header", dest="header", action="store_const", const=True, default="auto")
    header.add_argument("--no-header", dest="header", action="store_const", const=False)
    p.add_argument(
        "--label-column", type=_label_column, default=0, help="0-based index or header name"
    )
    p.add_argument("--missing", choices=("reject", "drop-row"), default="reject")
    p.add_argument(
        "--response-range", type=_range, default=None, metavar="LOW-HIGH",
        help="declared inclusive response range, e.g. 0-3",
    )


def _add_format_arg(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "table"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aucreduce", description="Reduce rating-scale items by AUC of running totals."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", type=Path, default=None, help="write main output here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("summarize", parents=[common], help="describe a dataset")
    _add_input_args(p)

    p = sub.add_parser("rank", parents=[common], help="per-item AUC table")
    _add_input_args(p)
    _add_format_arg(p, default="table")
    p.add_argument("--descending", action="store_true", help="best item first")

    p = sub.add_parser("curve", parents=[common], help="AUC of running totals in ranked order")
    _add_input_args(p)
    _add_format_arg(p)
    p.add_argument("--plot", type=Path, default=None, help="SVG output path")

    p = sub.add_parser("reduce", parents=[common], help="select the reduced scale")
    _add_input_args(p)
    _add_format_arg(p)
    p.add_argument("--strategy", choices=STRATEGIES, default="ranked-prefix")
    p.add_argument("--plot", type=Path, default=None, help="SVG output path")

    p = sub.add_parser("reliability", parents=[common], help="CR/VE from factor loadings")
    p.add_argument("full", type=Path, help="loadings file (csv/tsv/json)")
    p.add_argument("reduced", type=Path, nargs="?", default=None, help="reduced-scale loadings")
    p.add_argument("--threshold", type=float, default=DEFAULT_CR_THRESHOLD)

    p = sub.add_parser("synth", parents=[common], help="generate a planted-signal dataset")
    p.add_argument("--respondents", type=int, default=500)
    p.add_argument("--items", type=int, default=12)
    p.add_argument("--signal-items", type=_int_list, default=())
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--strength", type=float, default=0.8)
    p.add_argument("--prevalence", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(args: argparse.Namespace):
    delimiter = args.delimiter
    if args.tab:
        delimiter = "\t"
    if delimiter is None:
        delimiter = "\t" if args.input.suffix.lower() == ".tsv" else ","
    opts = LoadOptions(
        delimiter=delimiter,
        header=args.header,
        label_column=args.label_column,
        missing=args.missing,
        response_range=args.response_range,
    )
    try:
        return load_dataset(args.input, opts)
    except DatasetError as exc:
        raise LoadFailure(f"{args.input}: {exc}") from exc


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _cmd_summarize(args) -> str:
    doc = {"schema_version": SCHEMA_VERSION, **summarize(_load(args)).to_dict()}
    return _json(doc)


def _cmd_rank(args) -> str:
    table = item_auc_table(_load(args))
    if args.format == "table":
        return item_table_text(table, descending=args.descending)
    entries = table.entries if args.descending else tuple(reversed(table.entries))
    return _json(
        {
            "schema_version": SCHEMA_VERSION,
            "order": "descending" if args.descending else "ascending",
            "items": [{"item": i, "auc": a} for i, a in entries],
            "total_scale_auc": table.total_scale_auc,
        }
    )


def _cmd_curve(args) -> str:
    dataset = _load(args)
    table = item_auc_table(dataset)
    curve = cumulative_auc_curve(dataset, table.ordering)
    if args.plot is not None:
        args.plot.write_text(curve_svg(curve), encoding="utf-8")
    if args.format == "table":
        return curve_table_text(curve)
    return _json(
        {
            "schema_version": SCHEMA_VERSION,
            "curve": [{"item": s.item_id, "k": s.k, "auc": s.auc} for s in curve.steps],
            "total_scale_auc": table.total_scale_auc,
        }
    )


def _cmd_reduce(args) -> str:
    scale = select_reduced_scale(_load(args), args.strategy)
    if args.plot is not None:
        args.plot.write_text(curve_svg(scale.curve), encoding="utf-8")
    if args.format == "table":
        return curve_table_text(scale.curve) + (
            f"# selected: {' '.join(scale.selected_item_ids)}\n"
            f"# reduced_auc: {scale.reduced_auc!r}\n"
            f"# full_auc: {scale.full_auc!r}\n"
            f"# reduction_ratio: {scale.reduction_ratio!r}\n"
        )
    return _json(reduction_report(scale))


def _cmd_reliability(args) -> str:
    try:
        full = load_loadings(args.full)
        reduced = load_loadings(args.reduced) if args.reduced is not None else None
    except LoadingError as exc:
        raise LoadFailure(str(exc)) from exc
    if reduced is None:
        return _json(
            {
                "schema_version": SCHEMA_VERSION,
                "cr": construct_reliability(full),
                "ve": variance_extracted(full),
                "n_items": len(full),
                "cr_threshold": args.threshold,
                "acceptable": construct_reliability(full) >= args.threshold,
            }
        )
    try:
        comparison = reliability_comparison(full, reduced, args.threshold)
    except LoadingError as exc:
        raise LoadFailure(str(exc)) from exc
    return _json({"schema_version": SCHEMA_VERSION, **comparison.to_dict()})


def _cmd_synth(args) -> str:
    try:
        spec = GeneratorSpec(
            respondents=args.respondents,
            items=args.items,
            signal_items=args.signal_items,
            levels=args.levels,
            signal_strength=args.strength,
            prevalence=args.prevalence,
            seed=args.seed,
        )
    except ValueError as exc:
        raise LoadFailure(f"invalid generator spec: {exc}") from exc
    text = format_dataset(generate(spec))
    if args.output is not None:
        sidecar = args.output.with_suffix(".spec.json")
        sidecar.write_text(_json({"schema_version": SCHEMA_VERSION, **spec.to_dict()}), encoding="utf-8")
    return text


COMMANDS = {
    "summarize": _cmd_summarize,
    "rank": _cmd_rank,
    "curve": _cmd_curve,
    "reduce": _cmd_reduce,
    "reliability": _cmd_reliability,
    "synth": _cmd_synth,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = _warn_to_stderr
            text = COMMANDS[args.command](args)
    except LoadFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _warn_to_stderr(message, category, filename, lineno, file=None, line=None) -> None:
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
