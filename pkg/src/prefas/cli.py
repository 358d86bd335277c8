"""Command-line front end: solve, transform, check.

Exit codes follow solver conventions: 0 when something was found (an
answer set for ``--semantics as``, a preferred answer set otherwise, zero
violations for ``check``), 1 when nothing was, 2 on errors.  ``--json``
emits a machine-readable document carrying the same information as the
text output plus witnesses.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from .base import Bounds, answer_sets
from .direct import preferred_answer_sets_d
from .fragments import preferred_answer_sets_g
from .gno import preferred_answer_sets_gno
from .syntax import Literal, PrefasError, format_program, parse_program
from .transform import format_transformed, transform
from .verify import PROPERTIES, GenParams, check_program, fuzz

PROPERTY_CHOICES = (
    "principle1",
    "hierarchy",
    "strat-eq",
    "monotonicity",
    "transform-eq",
    "all",
)


def _set_str(literals: Iterable[Literal]) -> str:
    return "{" + ", ".join(sorted(map(str, literals))) + "}"


def _sorted_sets(families: Iterable[frozenset[Literal]]) -> list[frozenset[Literal]]:
    return sorted(families, key=_set_str)


def _solve_document(path: str, semantics: str, bounds: Bounds) -> dict:
    program = parse_program(open(path, encoding="utf-8").read(), allow_reserved=True)
    asets = _sorted_sets(a.literals for a in answer_sets(program, bounds))
    doc = {
        "program_path": path,
        "semantics": semantics,
        "answer_sets": [sorted(map(str, s)) for s in asets],
        "preferred": [],
        "witnesses": [],
    }
    if semantics == "as":
        return doc
    if semantics == "d":
        witnessed = [(a.literals, {"generating": sorted(a.generating)})
                     for a in preferred_answer_sets_d(program, bounds)]
    elif semantics == "gno":
        witnessed = [(a.literals, {"generating": sorted(a.generating)})
                     for a in preferred_answer_sets_gno(program, bounds)]
    elif semantics == "g":
        witnessed = [
            (
                a.literals,
                {
                    "generating": sorted(a.generating),
                    "fragments": sorted(sorted(f) for f in e.members),
                },
            )
            for a, e in preferred_answer_sets_g(program, bounds)
        ]
    else:
        raise PrefasError(f"unknown semantics {semantics!r}")
    witnessed.sort(key=lambda pair: _set_str(pair[0]))
    doc["preferred"] = [sorted(map(str, s)) for s, _ in witnessed]
    doc["witnesses"] = [
        {"literals": sorted(map(str, s)), **w} for s, w in witnessed
    ]
    return doc


def _print_solve_text(doc: dict, witness: bool) -> None:
    print("answer sets:")
    for s in doc["answer_sets"]:
        print("{" + ", ".join(s) + "}")
    if doc["semantics"] == "as":
        return
    print(f"preferred answer sets ({doc['semantics']}):")
    for s, w in zip(doc["preferred"], doc["witnesses"]):
        print("{" + ", ".join(s) + "}")
        if witness:
            print("  generating: {" + ", ".join(w["generating"]) + "}")
            if "fragments" in w:
                groups = ", ".join("{" + ", ".join(f) + "}" for f in w["fragments"])
                print("  fragments: " + groups)


def _cmd_solve(args: argparse.Namespace) -> int:
    doc = _solve_document(args.file, args.semantics, Bounds.from_env())
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        _print_solve_text(doc, args.witness)
    found = doc["answer_sets"] if args.semantics == "as" else doc["preferred"]
    return 0 if found else 1


def _cmd_transform(args: argparse.Namespace) -> int:
    program = parse_program(open(args.file, encoding="utf-8").read())
    text = format_transformed(transform(program))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _selected_properties(name: str) -> tuple[str, ...]:
    if name == "all":
        return PROPERTIES
    return (name.replace("-", "_"),)


def _cmd_check(args: argparse.Namespace) -> int:
    properties = _selected_properties(args.property)
    bounds = Bounds.from_env()
    if args.random:
        report = fuzz(GenParams(seed=args.seed), args.count, properties, bounds)
        doc = report.to_dict()
        text = str(report)
        ok = report.ok
    else:
        if not args.file:
            raise PrefasError("check needs a program file or --random")
        program = parse_program(open(args.file, encoding="utf-8").read())
        violations = check_program(program, properties, bounds)
        doc = {
            "program_path": args.file,
            "properties": list(properties),
            "violations": [
                {"kind": v.kind, "witness": v.witness, "program": format_program(v.program)}
                for v in violations
            ],
        }
        lines = [f"check {args.file}: {', '.join(properties)}"]
        if violations:
            lines.append(f"  VIOLATIONS: {len(violations)}")
            lines.extend(f"    {v}" for v in violations)
        else:
            lines.append("  no violations")
        text = "\n".join(lines)
        ok = not violations
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefas",
        description="Answer sets and preferred answer sets of logic programs "
        "with preferences on rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="print answer sets and preferred answer sets")
    solve.add_argument("file", help="program file (.lpp)")
    solve.add_argument(
        "--semantics",
        choices=("as", "d", "g", "gno"),
        default="as",
        help="plain answer sets, or one of the preference semantics",
    )
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument(
        "--witness", action="store_true", help="print generating sets / fragment sets"
    )
    solve.set_defaults(run=_cmd_solve)

    trans = sub.add_parser(
        "transform", help="rewrite to a plain program with the same gno-preferred sets"
    )
    trans.add_argument("file", help="program file (.lpp)")
    trans.add_argument("--out", help="write the result here instead of stdout")
    trans.set_defaults(run=_cmd_transform)

    check = sub.add_parser("check", help="run property checks on a file or random programs")
    check.add_argument("file", nargs="?", help="program file (.lpp)")
    check.add_argument("--random", action="store_true", help="check generated programs")
    check.add_argument("--property", choices=PROPERTY_CHOICES, default="all")
    check.add_argument("--seed", type=int, default=0, help="base seed for --random")
    check.add_argument("--count", type=int, default=100, help="programs to generate")
    check.add_argument("--json", action="store_true", help="machine-readable output")
    check.set_defaults(run=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (PrefasError, OSError) as err:
        print(f"prefas: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
