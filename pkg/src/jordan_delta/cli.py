"""Command-line entry point: ``jordan-delta {list,build,check,solve,pencil,report}``.

Exit codes: 0 success, 1 usage error, 2 bad parameter, 3 identity check
failed, 4 report mismatch against the expectation table.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import zoo
from .derivations import PARITY_FILTERS, classify_solution, delta_derivations, parse_delta, pencil_exceptional
from .exactnum import QQ, FieldError, field_descriptor
from .identities import DEFAULT_SEED, check_identities
from .report import emit_report, mismatches, run_report, thread_count
from .serialize import SchemaError, algebra_to_json, dumps, load_algebra

EXIT_OK, EXIT_USAGE, EXIT_PARAM, EXIT_IDENTITY, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _field(text: str):
    if text in ("Q", "q", "QQ"):
        return QQ
    return field_descriptor(text)


def load_target(target: str, field=QQ):
    """A zoo name, or a path to a JSON algebra document."""
    p = Path(target)
    if target.endswith(".json") or p.is_file():
        A = load_algebra(p)
        return A if field == QQ or A.field == field else A.change_field(field)
    return zoo.build(target, field)


def _table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return dumps(rows)
    cols = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r[c] for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(str(r[c]) for c in cols) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_list(args) -> int:
    rows = [{"name": e.name, "dim": e.dim, "unital": e.unital, "super": e.superalgebra, "note": e.note}
            for e in zoo.catalog() + zoo.semisimple_catalog()]
    sys.stdout.write(_table(rows, args.format))
    return EXIT_OK


def cmd_build(args) -> int:
    A = load_target(args.target, args.field)
    text = dumps(algebra_to_json(A))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    A = load_target(args.target, args.field)
    reports = check_identities(A, full=True if args.full_sweep else None, seed=args.seed,
                               random_elements=args.random_elements)
    docs = [r.to_json() for r in reports]
    if args.format == "json":
        sys.stdout.write(dumps({"algebra": A.name, "field": A.field.to_json(), "checks": docs}))
    else:
        rows = [{"check": d["check"], "passed": d["passed"], "failures": d["failures"], "checked": d["checked"],
                 "mode": d["mode"]} for d in docs]
        sys.stdout.write(_table(rows, args.format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_IDENTITY


def cmd_solve(args) -> int:
    A = load_target(args.target, args.field)
    space = delta_derivations(A, args.delta, args.parity)
    doc = space.to_json()
    doc["classification"] = classify_solution(space, A).to_json()
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        row = {"algebra": doc["algebra"], "delta": doc["delta"], "dim": doc["dim"],
               "even": doc["parity_split"][0], "odd": doc["parity_split"][1],
               "classification": doc["classification"]["kind"]}
        sys.stdout.write(_table([row], args.format))
    return EXIT_OK


def cmd_pencil(args) -> int:
    A = load_target(args.target, args.field)
    E = pencil_exceptional(A)
    doc = {"algebra": A.name, **E.to_json()}
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        rows = [{"delta": x["delta"], "nullity": x["nullity"]} for x in doc["exceptionals"]]
        sys.stdout.write(_table(rows or [{"delta": "-", "nullity": "-"}], args.format))
    return EXIT_OK


def cmd_report(args) -> int:
    threads = args.threads or thread_count()
    rows = run_report(args.field, threads=threads)
    sys.stdout.write(emit_report(rows, args.format))
    return EXIT_MISMATCH if mismatches(rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jordan-delta", description="delta-derivations of Jordan (super)algebras")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True

    def common(p, fmt_default="json"):
        p.add_argument("--field", default="Q", help="Q (default) or an odd prime field such as gf5")
        p.add_argument("--format", choices=("json", "csv", "md"), default=fmt_default)

    p = sub.add_parser("list", help="catalog entries")
    common(p, "md")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("build", help="dump the JSON algebra document")
    p.add_argument("target")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="supercommutativity and Jordan identity")
    p.add_argument("target")
    p.add_argument("--full-sweep", action="store_true", help="sweep every basis quadruple regardless of size")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--random-elements", type=int, default=0, metavar="N",
                   help="also evaluate the identity on N random elements")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="space of delta-derivations")
    p.add_argument("target")
    p.add_argument("--delta", required=True, help="exact rational such as 1/2")
    p.add_argument("--parity", choices=PARITY_FILTERS, default="all")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("pencil", help="all delta where the solution space jumps")
    p.add_argument("target")
    common(p)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("report", help="catalog table against the expectation data")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default from JORDAN_DELTA_THREADS)")
    common(p, "md")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        args.field = _field(args.field)
        if getattr(args, "delta", None) is not None:
            args.delta = parse_delta(args.delta)
        return args.func(args)
    except (zoo.ZooParameterError, FieldError, SchemaError, ValueError, OSError) as exc:
        print(f"jordan-delta: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
