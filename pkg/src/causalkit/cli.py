"""Command-line interface.

Subcommands::

    dsep        d-separation query on a graph file
    backdoor    enumerate admissible back-door adjustment sets
    effect      estimate P(outcome | do(treatment=value)) from a model or CSV
    simulate    draw observational data from a model (seeded, reproducible)
    check       full verification report: criterion + oracle + estimators
    export-dot  emit the graph in Graphviz DOT syntax

Exit codes: 0 success, 1 domain error (cycle, unknown node, positivity),
2 usage or file-format error.  All output is deterministic for fixed
inputs and seeds; ``--format json`` switches machine-readable output on
where it applies.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import IO, Sequence

from .data import Smoothing, empirical_joint, read_csv, table_to_csv
from .errors import CausalError, InputFormatError, InvalidQueryError
from .graph import Dag, parse_dag
from .identify import (
    EffectQuery,
    adjustment_estimate,
    choose_adjustment_set,
    verify,
)
from .model_io import model_from_json, schema_from_json
from .scm import SAMPLER_ALGORITHM, Scm

PROG = "causalkit"


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _fmt_set(names: Sequence[str]) -> str:
    return "{" + ", ".join(sorted(names)) + "}"


def _split_nodes(raw: str | None) -> tuple[str, ...]:
    if not raw:
        return ()
    return tuple(raw.split(","))


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_dag(args: argparse.Namespace) -> Dag:
    if getattr(args, "graph", None):
        return parse_dag(_read_text(args.graph))
    return model_from_json(_read_text(args.model)).dag


def _parse_do(raw: str) -> tuple[str, str]:
    var, sep, value = raw.partition("=")
    if not sep or not var or not value:
        raise InputFormatError(f"--do expects VAR=STATE, got {raw!r}")
    return var, value


def _estimate_lines(outcome: str, states: Sequence[str], probs) -> list[str]:
    return [f"P({outcome}={s}) = {_fmt(p)}" for s, p in zip(states, probs)]


# -- subcommand handlers ------------------------------------------------


def _cmd_dsep(args: argparse.Namespace, out: IO[str]) -> None:
    dag = parse_dag(_read_text(args.graph))
    xs, ys, given = _split_nodes(args.x), _split_nodes(args.y), _split_nodes(args.given)
    separated = dag.d_separated(xs, ys, given)
    if args.format == "json":
        doc = {
            "x": list(xs),
            "y": list(ys),
            "given": sorted(given),
            "d_separated": separated,
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        print(f"d-separated: {'true' if separated else 'false'}", file=out)


def _cmd_backdoor(args: argparse.Namespace, out: IO[str]) -> None:
    dag = parse_dag(_read_text(args.graph))
    sets = dag.enumerate_backdoor_sets(
        args.x, args.y, max_size=args.max_size, minimal_only=args.minimal_only
    )
    if args.format == "json":
        doc = {
            "x": args.x,
            "y": args.y,
            "max_size": args.max_size,
            "minimal_only": args.minimal_only,
            "admissible_sets": [list(s) for s in sets],
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        for s in sets:
            print(_fmt_set(s), file=out)


def _cmd_effect(args: argparse.Namespace, out: IO[str]) -> None:
    treatment, value = _parse_do(args.do)
    if args.auto and args.adjust:
        raise InputFormatError("--auto and --adjust are mutually exclusive")

    model: Scm | None = None
    if args.model:
        model = model_from_json(_read_text(args.model))
        schema = [model.variables[n] for n in model.scope_order]
        source = model.joint()
    else:
        schema_text = _read_text(args.schema)
        schema = schema_from_json(schema_text)
        table = read_csv(Path(args.data).read_bytes(), schema)
        source = empirical_joint(table, schema, Smoothing(args.alpha))
        if args.auto:
            try:
                model = model_from_json(schema_text)
            except InputFormatError:
                raise InvalidQueryError(
                    "--auto needs graph structure: pass a full model file as --schema"
                ) from None

    if args.auto:
        adjustment = choose_adjustment_set(model.dag, treatment, args.target)
    else:
        adjustment = _split_nodes(args.adjust)

    query = EffectQuery(
        treatment=treatment,
        treatment_value=value,
        outcome=args.target,
        adjustment=adjustment,
    )
    estimate = adjustment_estimate(source, query)
    states = source.variable(args.target).states

    if args.format == "json":
        doc = {
            "treatment": treatment,
            "treatment_value": value,
            "outcome": args.target,
            "adjustment": list(query.adjustment),
            "auto_selected": bool(args.auto),
            "outcome_states": list(states),
            "estimate": [float(p) for p in estimate],
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        if args.auto:
            print(f"adjustment set: {_fmt_set(query.adjustment)}", file=out)
        for line in _estimate_lines(args.target, states, estimate):
            print(line, file=out)


def _cmd_simulate(args: argparse.Namespace, out: IO[str], err: IO[str]) -> None:
    model = model_from_json(_read_text(args.model))
    table = model.sample(args.rows, args.seed)
    text = table_to_csv(table)
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    print(
        f"sampler: {SAMPLER_ALGORITHM} seed={args.seed} rows={args.rows}",
        file=err,
    )


def _cmd_check(args: argparse.Namespace, out: IO[str]) -> None:
    model = model_from_json(_read_text(args.model))
    adjustment = _split_nodes(args.adjust)
    treat_states = model.variable(args.x).states
    values = [args.value] if args.value is not None else list(treat_states)
    reports = [
        verify(model, EffectQuery(args.x, v, args.y, adjustment)) for v in values
    ]

    if args.format == "json":
        docs = [r.to_dict() for r in reports]
        print(json.dumps(docs[0] if args.value is not None else docs, indent=2), file=out)
        return

    blocks = []
    for r in reports:
        lines = [
            r.query.describe(),
            f"criterion holds: {'true' if r.criterion_holds else 'false'}",
            "oracle   : " + "  ".join(_estimate_lines(args.y, r.outcome_states, r.oracle)),
            "adjusted : " + "  ".join(_estimate_lines(args.y, r.outcome_states, r.adjusted)),
            "naive    : " + "  ".join(_estimate_lines(args.y, r.outcome_states, r.naive)),
            f"max |adjusted - oracle| = {_fmt(r.max_abs_gap_adjusted)}",
            f"max |naive - oracle| = {_fmt(r.max_abs_gap_naive)}",
        ]
        blocks.append("\n".join(lines))
    print("\n\n".join(blocks), file=out)


def _cmd_export_dot(args: argparse.Namespace, out: IO[str]) -> None:
    out.write(_load_dag(args).to_dot())


# -- parser ------------------------------------------------------------


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Causal diagrams, interventions, and back-door adjustment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dsep", help="d-separation query on a graph file")
    p.add_argument("--graph", required=True, help="edge-list graph file")
    p.add_argument("--x", required=True, help="first node set (comma-separated)")
    p.add_argument("--y", required=True, help="second node set (comma-separated)")
    p.add_argument("--given", default="", help="conditioning set (comma-separated)")
    _add_format(p)

    p = sub.add_parser("backdoor", help="enumerate admissible adjustment sets")
    p.add_argument("--graph", required=True)
    p.add_argument("--x", required=True, help="treatment node")
    p.add_argument("--y", required=True, help="outcome node")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--minimal-only", action="store_true")
    _add_format(p)

    p = sub.add_parser("effect", help="estimate an interventional distribution")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="model JSON file (exact joint)")
    src.add_argument("--data", help="observational CSV file")
    p.add_argument("--schema", help="schema/model JSON file (required with --data)")
    p.add_argument("--do", required=True, metavar="VAR=STATE")
    p.add_argument("--target", required=True, help="outcome node")
    p.add_argument("--adjust", default="", help="adjustment set (comma-separated)")
    p.add_argument("--auto", action="store_true",
                   help="pick the first minimal admissible adjustment set")
    p.add_argument("--alpha", type=float, default=0.0,
                   help="additive smoothing per joint cell (data mode)")
    _add_format(p)

    p = sub.add_parser("simulate", help="draw observational data from a model")
    p.add_argument("--model", required=True)
    p.add_argument("-n", "--rows", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", default="-", help="CSV path, or - for stdout")

    p = sub.add_parser("check", help="verification report against the oracle")
    p.add_argument("--model", required=True)
    p.add_argument("--x", required=True, help="treatment node")
    p.add_argument("--y", required=True, help="outcome node")
    p.add_argument("--adjust", default="", help="adjustment set (comma-separated)")
    p.add_argument("--value", default=None,
                   help="treatment state (default: one report per state)")
    _add_format(p)

    p = sub.add_parser("export-dot", help="emit the graph in DOT syntax")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--model")

    return parser


def run(
    argv: Sequence[str] | None = None,
    stdout: IO[str] | None = None,
    stderr: IO[str] | None = None,
) -> int:
    """Execute one invocation; returns the exit code instead of exiting."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    if args.command == "effect" and args.data and not args.schema:
        print("error: --data requires --schema", file=err)
        return 2

    try:
        if args.command == "dsep":
            _cmd_dsep(args, out)
        elif args.command == "backdoor":
            _cmd_backdoor(args, out)
        elif args.command == "effect":
            _cmd_effect(args, out)
        elif args.command == "simulate":
            _cmd_simulate(args, out, err)
        elif args.command == "check":
            _cmd_check(args, out)
        else:
            _cmd_export_dot(args, out)
    except InputFormatError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except CausalError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
