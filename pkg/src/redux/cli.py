"""Command-line front end over the documented JSON file formats."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .builders import BuildError, build_structure
from .orders import find_consistent_weight, parse_order
from .polynomials import format_polynomial, parse_polynomial, poly_to_doc
from .reduction import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    MarkedSet,
    confluence_test,
    family_equations,
    marked_basis_test,
    reduce_polynomial,
    useful_pairs,
)
from .structures import ReductionStructure
from .terms import parse_term
from .verdict import BUDGET_EXCEEDED, FAIL, Verdict

EXIT_PASS, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _default_budget() -> int:
    env = os.environ.get("REDUX_BUDGET")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SystemExit("REDUX_BUDGET must be an integer")
    return DEFAULT_BUDGET


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_rs(path: str) -> ReductionStructure:
    return ReductionStructure.from_doc(_load_json(path))


def _load_ms(path: str) -> MarkedSet:
    doc = _load_json(path)
    structure = doc.get("structure")
    if isinstance(structure, str):
        ref = Path(structure)
        if not ref.is_absolute():
            ref = Path(path).parent / ref
        rs = _load_rs(str(ref))
        return MarkedSet.from_doc(doc, rs)
    return MarkedSet.from_doc(doc)


def _verdict_exit(verdict: Verdict) -> int:
    if verdict.status == FAIL:
        return EXIT_FAIL
    if verdict.status == BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_PASS


def _emit(report: dict, pretty: bool, lines: list[str] | None = None) -> None:
    if pretty and lines is not None:
        print("\n".join(lines))
    else:
        sys.stdout.write(canonical_json(report))


def cmd_validate(args) -> int:
    rs = _load_rs(args.structure)
    mode = "bounded" if args.bound is not None else "exact"
    verdict = rs.validate(mode, args.bound)
    report = {"command": "validate", "verdict": verdict.to_doc()}
    _emit(report, args.pretty, [f"validate: {verdict.status}"
                                + (f" witness={verdict.witness}" if verdict.witness else "")])
    return _verdict_exit(verdict)


def cmd_classify(args) -> int:
    rs = _load_rs(args.structure)
    verdict = rs.validate("exact")
    if not verdict.ok:
        _emit({"command": "classify", "verdict": verdict.to_doc()}, args.pretty,
              [f"invalid structure: {verdict.witness}"])
        return EXIT_FAIL
    order = parse_order(args.order) if args.order else None
    report = rs.classify(order)
    doc = {"command": "classify", "report": report.to_doc(rs.variables)}
    lines = [f"{k}: {v}" for k, v in doc["report"].items()]
    _emit(doc, args.pretty, lines)
    return EXIT_PASS


def cmd_build(args) -> int:
    if args.vars:
        variables = tuple(v.strip() for v in args.vars.split(","))
    else:
        names = set()
        for chunk in args.ideal.split(","):
            for factor in chunk.replace(" ", "").split("*"):
                name = factor.partition("^")[0]
                if name and not name[0].isdigit() and name != "1":
                    names.add(name)
        variables = tuple(sorted(names))
    if not variables:
        raise BuildError("no variables found; pass --vars")
    generators = [parse_term(tok, variables) for tok in args.ideal.split(",")]
    order = parse_order(args.order) if args.order else None
    border_order = None
    if args.border_order:
        border_order = (
            "degree-then-input"
            if args.border_order == "degree-then-input"
            else parse_order(args.border_order)
        )
    rs = build_structure(
        args.kind,
        generators,
        variables,
        order=order,
        border_order=border_order,
        tail_cap=args.tail_cap,
        auto_complete=not args.no_completion,
    )
    doc = rs.to_doc()
    if args.output:
        Path(args.output).write_text(canonical_json(doc), encoding="utf-8")
        report = {"command": "build", "kind": args.kind, "output": args.output,
                  "heads": [e["head"] for e in doc["entries"]]}
    else:
        report = {"command": "build", "kind": args.kind, "structure": doc}
    _emit(report, args.pretty,
          ["built " + args.kind + ": heads " + ", ".join(e["head"] for e in doc["entries"])])
    return EXIT_PASS


def cmd_reduce(args) -> int:
    ms = _load_ms(args.marked_set)
    g = parse_polynomial(args.poly, ms.variables)
    outcome = reduce_polynomial(
        ms, g, strategy=args.strategy, seed=args.seed, budget=args.budget
    )
    report = {
        "command": "reduce",
        "strategy": args.strategy,
        "seed": args.seed,
        "budget": args.budget,
        "status": outcome.status,
        "steps": len(outcome.trace.steps),
        "remainder": poly_to_doc(outcome.remainder, ms.variables),
        "remainder_str": format_polynomial(outcome.remainder, ms.variables),
    }
    if args.trace:
        report["trace"] = [s.to_doc(ms) for s in outcome.trace.steps]
    _emit(report, args.pretty,
          [f"{outcome.status} in {len(outcome.trace.steps)} steps: "
           f"{report['remainder_str']}"])
    return EXIT_PASS if outcome.reduced else EXIT_BUDGET


def cmd_pairs(args) -> int:
    ms = _load_ms(args.marked_set)
    report = useful_pairs(ms, args.method)
    doc = {"command": "pairs", "method": args.method,
           "report": report.to_doc(ms.variables)}
    lines = [
        f"({d['pair'][0]},{d['pair'][1]}) lcm={d['lcm']}: {d['status']}"
        + (f" ({d.get('reason')})" if d.get("reason") else "")
        for d in doc["report"]["pairs"]
    ]
    _emit(doc, args.pretty, lines)
    return EXIT_PASS


def cmd_basis(args) -> int:
    ms = _load_ms(args.marked_set)
    verdict = marked_basis_test(ms, args.method, bound=args.bound, budget=args.budget)
    _emit({"command": "basis", "verdict": verdict.to_doc()}, args.pretty,
          [f"basis: {verdict.status} ({verdict.method})"
           + (f" witness={verdict.witness}" if verdict.witness else "")])
    return _verdict_exit(verdict)


def cmd_confluence(args) -> int:
    ms = _load_ms(args.marked_set)
    verdict = confluence_test(ms, args.method, bound=args.bound, budget=args.budget)
    _emit({"command": "confluence", "verdict": verdict.to_doc()}, args.pretty,
          [f"confluence: {verdict.status} ({verdict.method})"
           + (f" witness={verdict.witness}" if verdict.witness else "")])
    return _verdict_exit(verdict)


def cmd_weights(args) -> int:
    rs = _load_rs(args.structure)
    result = find_consistent_weight(rs)
    if result.consistent:
        report = {"command": "weights", "consistent": True,
                  "weight": list(result.weight)}
        _emit(report, args.pretty, [f"consistent: weight {list(result.weight)}"])
        return EXIT_PASS
    identity = result.cycle_identity(rs.variables)
    report = {
        "command": "weights",
        "consistent": False,
        "cycle": {
            "identity": identity,
            "heads": [[_fmt(rs, t), m] for t, m in result.cycle_heads],
            "tails": [[_fmt(rs, t), m] for t, m in result.cycle_tails],
            "slack": _fmt(rs, result.slack),
        },
    }
    _emit(report, args.pretty, [f"not consistent with a term order: {identity}"])
    return EXIT_FAIL


def _fmt(rs: ReductionStructure, t) -> str:
    from .terms import format_term

    return format_term(t, rs.variables)


def cmd_family(args) -> int:
    rs = _load_rs(args.structure)
    fam = family_equations(rs, args.bound, budget=args.budget)
    doc = {"command": "family", **fam.to_doc()}
    _emit(doc, args.pretty, [f"{len(fam.equations)} equations"] + doc["equations"])
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redux",
        description="exact polynomial reduction structures: build, validate, rewrite, decide",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true", help="human readable output")

    p = sub.add_parser("validate", help="check an RS document")
    p.add_argument("structure")
    p.add_argument("--bound", type=int, default=None, help="bounded coverage degree")
    p.add_argument("--exact", action="store_true", help="exact coverage (default)")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("classify", help="classification flags of an RS")
    p.add_argument("structure")
    p.add_argument("--order", default=None)
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("build", help="construct a specialized RS")
    p.add_argument("kind", choices=[
        "groebner", "groebner-reduced", "staggered", "janet", "janet-like",
        "pommaret", "pommaret-free", "border",
    ])
    p.add_argument("--ideal", required=True, help="comma separated term list")
    p.add_argument("--vars", default=None, help="comma separated variable names")
    p.add_argument("--order", default=None)
    p.add_argument("--border-order", default=None)
    p.add_argument("--tail-cap", type=int, default=None)
    p.add_argument("--no-completion", action="store_true")
    p.add_argument("-o", "--output", default=None)
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("reduce", help="reduce a polynomial by a marked set")
    p.add_argument("marked_set")
    p.add_argument("--poly", required=True)
    p.add_argument("--strategy", default="first-match",
                   choices=["first-match", "max-phi", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.add_argument("--trace", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("pairs", help="S-pair pruning report")
    p.add_argument("marked_set")
    p.add_argument("--method", default="cone-filter", choices=["cone-filter", "buchberger"])
    common(p)
    p.set_defaults(fn=cmd_pairs)

    p = sub.add_parser("basis", help="marked-basis decision")
    p.add_argument("marked_set")
    p.add_argument("--method", default="auto",
                   choices=["auto", "spoly", "stable", "degree-bound"])
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--budget", type=int, default=_default_budget())
    common(p)
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("confluence", help="confluence decision")
    p.add_argument("marked_set")
    p.add_argument("--method", default="auto",
                   choices=["auto", "disjoint", "spoly", "degree-bound"])
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--budget", type=int, default=_default_budget())
    common(p)
    p.set_defaults(fn=cmd_confluence)

    p = sub.add_parser("weights", help="term-order consistency test")
    p.add_argument("structure")
    common(p)
    p.set_defaults(fn=cmd_weights)

    p = sub.add_parser("family", help="marked-basis family equations")
    p.add_argument("structure")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--budget", type=int, default=_default_budget())
    common(p)
    p.set_defaults(fn=cmd_family)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (BuildError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
