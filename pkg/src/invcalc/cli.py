"""Command-line front end: compute, verify, enumerate.

Exit codes: 0 success, 1 verification mismatch, 2 input or work-bound error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import forms, invariants, report
from .groupspec import (
    CenterTooLarge,
    GroupSpec,
    SpecError,
    enumerate_subgroups,
    make_spec,
    relation_subgroup,
    spec_for_subgroup,
)
from .rootdata import SimpleFactor


class DocumentError(Exception):
    pass


def _factor_from_doc(obj, where: str) -> SimpleFactor:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    ftype = obj.get("type")
    if ftype not in ("B", "C", "D"):
        raise DocumentError(f"{where}.type: expected one of B, C, D")
    rank = obj.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise DocumentError(f"{where}.rank: expected an integer")
    if ftype == "D" and rank < 3:
        raise DocumentError(f"{where}.rank: rank must be >= 3 for type D")
    if ftype in ("B", "C") and rank < 1:
        raise DocumentError(f"{where}.rank: rank must be >= 1 for type {ftype}")
    return SimpleFactor(ftype, rank)


def _entry_to_residues(factor: SimpleFactor, entry, where: str) -> list[int]:
    if factor.ftype in ("B", "C"):
        if not isinstance(entry, int) or isinstance(entry, bool) or entry not in (0, 1):
            raise DocumentError(f"{where}: expected 0 or 1")
        return [entry]
    if factor.n % 2:
        if not isinstance(entry, int) or isinstance(entry, bool) or not 0 <= entry <= 3:
            raise DocumentError(f"{where}: expected an integer in 0..3")
        return [entry]
    if (
        not isinstance(entry, list)
        or len(entry) != 2
        or any(not isinstance(x, int) or isinstance(x, bool) or x not in (0, 1) for x in entry)
    ):
        raise DocumentError(f"{where}: expected a pair of 0/1 values")
    return list(entry)


def parse_spec_document(obj) -> tuple[GroupSpec, dict]:
    if not isinstance(obj, dict):
        raise DocumentError("document: expected a JSON object")
    raw_factors = obj.get("factors")
    if not isinstance(raw_factors, list) or not raw_factors:
        raise DocumentError("factors: expected a non-empty list")
    factors = [
        _factor_from_doc(fo, f"factors[{i}]") for i, fo in enumerate(raw_factors)
    ]
    if len({f.ftype for f in factors}) > 1:
        raise DocumentError("factors: all factors must share one Dynkin type")
    raw_rels = obj.get("mu_relations", [])
    if not isinstance(raw_rels, list):
        raise DocumentError("mu_relations: expected a list")
    generators = []
    for k, gen in enumerate(raw_rels):
        if not isinstance(gen, list) or len(gen) != len(factors):
            raise DocumentError(
                f"mu_relations[{k}]: expected one entry per factor ({len(factors)})"
            )
        flat: list[int] = []
        for i, entry in enumerate(gen):
            flat.extend(_entry_to_residues(factors[i], entry, f"mu_relations[{k}][{i}]"))
        generators.append(tuple(flat))
    try:
        spec = make_spec(factors, generators)
    except SpecError as exc:
        raise DocumentError(str(exc)) from exc
    echo = {
        "factors": [{"type": f.ftype, "rank": f.n} for f in factors],
        "mu_relations": raw_rels,
    }
    return spec, echo


def _load_document(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc


def cmd_compute(args) -> int:
    spec, echo = parse_spec_document(_load_document(args.path))
    rep = report.build_report(spec, input_echo=echo)
    if args.format == "json":
        sys.stdout.write(report.to_json(rep))
    else:
        sys.stdout.write(report.to_markdown(rep))
    return 0


def cmd_verify(args) -> int:
    spec, echo = parse_spec_document(_load_document(args.path))
    try:
        rep = report.build_report(spec, input_echo=echo, oracle_height=args.height)
    except forms.WorkBoundExceeded as exc:
        raise DocumentError(str(exc)) from exc
    sys.stdout.write(report.to_json(rep))
    checks = rep["verification"]
    if checks["mismatches"]:
        return 1
    return 0


def _enumerate_row(task) -> dict:
    ftype, ranks, gens = task
    spec = make_spec([SimpleFactor(ftype, n) for n in ranks], gens)
    ind = invariants.indecomposable_invariants(spec)
    red = invariants.reductive_invariants(spec)
    data = invariants.reductive_rank_data(spec)
    checks = invariants.cross_checks(spec)
    return {
        "generators": [report.relation_to_doc(spec, g) for g in spec.r_generators],
        "relation_order": relation_subgroup(spec).order,
        "indecomposable": list(ind.invariant_factors),
        "reductive": list(red.invariant_factors),
        "formula_rank": data.rank,
        "verdict": "ok" if not checks["mismatches"] else "MISMATCH",
    }


def _emit_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["generators", "relation_order", "indecomposable", "reductive", "formula_rank", "verdict"]
        )
        for row in rows:
            writer.writerow(
                [
                    json.dumps(row["generators"]),
                    row["relation_order"],
                    json.dumps(row["indecomposable"]),
                    json.dumps(row["reductive"]),
                    row["formula_rank"],
                    row["verdict"],
                ]
            )
        return buf.getvalue()
    lines = [
        "| generators | relation order | indecomposable | reductive | formula rank | verdict |",
        "| --- | --- | --- | --- | --- | --- |",
    ]
    for row in rows:
        lines.append(
            "| {} | {} | {} | {} | {} | {} |".format(
                json.dumps(row["generators"]),
                row["relation_order"],
                report.group_string(row["indecomposable"]),
                report.group_string(row["reductive"]),
                row["formula_rank"],
                row["verdict"],
            )
        )
    return "\n".join(lines) + "\n"


def cmd_enumerate(args) -> int:
    try:
        ranks = tuple(int(x) for x in args.ranks.split(","))
    except ValueError as exc:
        raise DocumentError("--ranks: expected comma-separated integers") from exc
    try:
        factors = [SimpleFactor(args.type, n) for n in ranks]
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    subs = enumerate_subgroups(factors)
    tasks = [
        (args.type, ranks, spec_for_subgroup(factors, sub).r_generators)
        for sub in subs
    ]
    workers = int(os.environ.get("INVCALC_WORKERS", "1"))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_enumerate_row, tasks))
    else:
        rows = [_enumerate_row(t) for t in tasks]
    text = _emit_rows(rows, args.emit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from . import plots

        title = f"type {args.type}, ranks {args.ranks}"
        plots.rank_distribution_figure(rows, title, args.plot)
    if any(row["verdict"] != "ok" for row in rows):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invcalc",
        description="Degree-3 invariant groups of split semisimple groups of types B, C, D",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute the full report for one spec")
    p_compute.add_argument("path", help="JSON spec document")
    p_compute.add_argument("--format", choices=("json", "md"), default="json")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run all cross-checks for one spec")
    p_verify.add_argument("path", help="JSON spec document")
    p_verify.add_argument("--height", type=int, default=2, help="oracle height (default 2)")
    p_verify.set_defaults(func=cmd_verify)

    p_enum = sub.add_parser(
        "enumerate", help="tabulate every central subgroup for a factor list"
    )
    p_enum.add_argument("--type", required=True, choices=("B", "C", "D"))
    p_enum.add_argument("--ranks", required=True, help="comma-separated factor ranks")
    p_enum.add_argument("--emit", choices=("csv", "md", "json"), default="csv")
    p_enum.add_argument("--out", help="write the table to this file")
    p_enum.add_argument("--plot", help="render a rank-distribution figure to this file")
    p_enum.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, SpecError, CenterTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
