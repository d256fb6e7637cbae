"""Command-line front end.

    vgclust direct FILE {distances|weights} METHOD [PRECISION] [options]

The leading ``direct`` may also be written ``-direct``.  Exit codes: 0 on
success, 1 for bad arguments, 2 for unreadable or malformed input, 3 when
the tie enumeration budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import List, Optional

from .dendro import cophenetic_matrix, details, deviation_measures
from .export import render_svg, to_newick, to_text_details, ultrametric_to_txt
from .linkage import Method
from .numeric import format_fixed
from .pair_group import EnumerationBudgetExceeded, TiePolicy, enumerate_tie_dendrograms, pair_group_cluster
from .proximity_io import Measure, ProximityFormatError, apply_precision, infer_precision, load_proximity
from .variable_group import variable_group_cluster

FORMATS = ("txt", "newick", "ultrametric", "svg")
SUFFIXES = {"txt": ".txt", "newick": ".nwk", "ultrametric": ".ultrametric.txt", "svg": ".svg"}
MODES = ("direct", "pair-group", "enumerate-ties")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _precision(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("precision must be a non-negative integer")
    return value


def _formats(text: str) -> List[str]:
    chosen = [f.strip().lower() for f in text.split(",") if f.strip()]
    bad = [f for f in chosen if f not in FORMATS]
    if bad or not chosen:
        raise argparse.ArgumentTypeError(f"formats must be a subset of {','.join(FORMATS)}")
    return [f for f in FORMATS if f in chosen]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vgclust", description="Variable-group agglomerative hierarchical clustering.")
    p.add_argument("command", choices=["direct"], help="run a direct calculation")
    p.add_argument("file", type=Path, help="proximity data, matrix-like or list-like")
    p.add_argument("measure", help="distances or weights (any case)")
    p.add_argument("method", help="clustering method, e.g. Complete_Linkage")
    p.add_argument("precision", nargs="?", type=_precision, help="decimal places; inferred if omitted")
    p.add_argument("--out-dir", type=Path, help="where output files go (default: next to the input)")
    p.add_argument("--formats", type=_formats, default=list(FORMATS),
                   help="comma-separated subset of txt,newick,ultrametric,svg")
    p.add_argument("--mode", choices=MODES, default="direct")
    p.add_argument("--tie-policy", default="first", help="first, last or random:SEED (pair-group mode)")
    p.add_argument("--max-enum", type=int, default=10_000, help="state budget for enumerate-ties")
    p.add_argument("--json-report", type=Path, help="also write the report as JSON")
    return p


def _fmt(x: float) -> str:
    return "undefined" if math.isnan(x) else f"{x:.6f}"


def _leaf_names(tree, node) -> str:
    return ",".join(tree.labels[i] for i in node.leaves())


def _write_outputs(tree, formats, out_dir: Path, stem: str) -> List[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        path = out_dir / f"{stem}-{tree.method.slug}{SUFFIXES[fmt]}"
        if fmt == "txt":
            body = to_text_details(details(tree), tree.precision)
        elif fmt == "newick":
            body = to_newick(tree)
        elif fmt == "ultrametric":
            body = ultrametric_to_txt(cophenetic_matrix(tree))
        else:
            body = render_svg(tree)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(body)
        written.append(path)
    return written


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    out = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "-direct":
        argv[0] = "direct"
    try:
        args = build_parser().parse_args(argv)
        measure = Measure.parse(args.measure)
        method = Method.parse(args.method)
        policy = TiePolicy.parse(args.tie_policy)
        if args.max_enum < 1:
            raise UsageError("--max-enum must be positive")
    except (UsageError, ValueError) as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 1

    try:
        data = load_proximity(args.file, measure)
    except OSError as exc:
        print(f"error: io: {exc.strerror or exc}: {args.file}", file=sys.stderr)
        return 2
    except ProximityFormatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    precision = args.precision if args.precision is not None else infer_precision(data)
    data = apply_precision(data, precision)

    report = {
        "input": str(args.file),
        "method": method.value,
        "measure": measure.value,
        "precision": precision,
        "items": data.n,
        "mode": args.mode,
    }

    if args.mode == "enumerate-ties":
        try:
            trees = enumerate_tie_dendrograms(data, method, args.max_enum)
        except EnumerationBudgetExceeded as exc:
            print(f"error: EnumerationBudgetExceeded: {exc}", file=sys.stderr)
            return 3
        report["distinct_dendrograms"] = len(trees)
        report["newick"] = [to_newick(t).strip() for t in trees]
        print(f"{len(trees)} distinct dendrograms", file=out)
        for text in report["newick"]:
            print(text, file=out)
        _dump_json(args.json_report, report)
        return 0

    if args.mode == "pair-group":
        tree = pair_group_cluster(data, method, policy)
        reversals = []
    else:
        tree, reversals = variable_group_cluster(data, method)

    dev = deviation_measures(data, cophenetic_matrix(tree))
    report.update({
        "tied_iterations": tree.tied_iterations,
        "bands": tree.band_count,
        "reversals": [
            {"leaves": [tree.labels[i] for i in ev.node.leaves()],
             "band_lower": ev.node.band_lower, "band_upper": ev.band_upper, "d_next": ev.d_next}
            for ev in reversals
        ],
        "cophenetic_correlation_coefficient": None if math.isnan(dev.ccc) else dev.ccc,
        "normalized_mean_squared_error": None if math.isnan(dev.nmse) else dev.nmse,
        "normalized_mean_absolute_error": None if math.isnan(dev.nmae) else dev.nmae,
    })

    out_dir = args.out_dir if args.out_dir is not None else args.file.parent
    try:
        written = _write_outputs(tree, args.formats, out_dir, args.file.stem)
    except OSError as exc:
        print(f"error: io: {exc.strerror or exc}: {out_dir}", file=sys.stderr)
        return 2
    report["files"] = [str(p) for p in written]

    print(f"method: {method.value}", file=out)
    print(f"measure: {measure.value}", file=out)
    print(f"precision: {precision}", file=out)
    print(f"items: {data.n}", file=out)
    print(f"tied iterations: {tree.tied_iterations}", file=out)
    print(f"bands: {tree.band_count}", file=out)
    print(f"reversals: {len(reversals)}", file=out)
    for ev in reversals:
        print(
            f"  reversal: {{{_leaf_names(tree, ev.node)}}} band upper "
            f"{format_fixed(ev.band_upper, precision)} beyond next {format_fixed(ev.d_next, precision)}",
            file=out,
        )
    print(f"cophenetic correlation coefficient: {_fmt(dev.ccc)}", file=out)
    print(f"normalized mean squared error: {_fmt(dev.nmse)}", file=out)
    print(f"normalized mean absolute error: {_fmt(dev.nmae)}", file=out)
    for p in written:
        print(f"wrote: {p}", file=out)
    _dump_json(args.json_report, report)
    return 0


def _dump_json(path: Optional[Path], report: dict) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
