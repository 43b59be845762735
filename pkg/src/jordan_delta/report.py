"""Catalog-wide reproduction table: identity checks, solution spaces and pencils
compared against the expectation table shipped in ``data/expectations.json``."""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import zoo
from .derivations import classify_solution, delta_derivations, pencil_exceptional
from .exactnum import QQ, CharacteristicError, FieldDescriptor, field_from_json
from .identities import check_identities
from .serialize import dumps

THREADS_ENV = "JORDAN_DELTA_THREADS"
COLUMNS = ("algebra", "check", "delta", "dim", "classification", "expected", "match", "tag")


@dataclass
class ReportRow:
    algebra: str
    check: str
    delta: str
    dim: str
    classification: str
    expected: str
    match: str          # "yes" | "no" | "n/a"
    tag: str

    @property
    def mismatch(self) -> bool:
        return self.match == "no"


def expectations() -> dict:
    return zoo.load_fixture("expectations.json")


def thread_count(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _match(ok: bool) -> str:
    return "yes" if ok else "no"


def _expected_row(rows: list[dict], delta: str, F: FieldDescriptor) -> tuple[dict | None, str]:
    """Expectation for ``delta``; over GF(p) a value congruent to 0, 1/2 or 1 inherits that row."""
    by_delta = {r["delta"]: r for r in rows}
    if F.p:
        for canon in ("1/2", "0", "1"):
            if canon != delta and canon in by_delta and F(Fraction(canon)) == F(Fraction(delta)):
                return by_delta[canon], f" (= {canon} mod {F.p})"
    return by_delta.get(delta), ""


def _algebra_rows(name: str, field_doc: dict, exp: dict) -> list[ReportRow]:
    F = field_from_json(field_doc)
    A = zoo.build(name, F)
    out = []
    solve_rows = [r for r in exp["solve"] if r["algebra"] == name]
    if "(+)" not in name:
        reports = check_identities(A)
        ok = all(r.passed for r in reports)
        out.append(ReportRow(name, "identities", "", "", "pass" if ok else "fail", "pass", _match(ok),
                             "identities:supercommutative-and-jordan"))
        deltas = exp["deltas"]
    else:
        deltas = [r["delta"] for r in solve_rows]
    for d in deltas:
        space = delta_derivations(A, Fraction(d))
        cls = str(classify_solution(space, A))
        row, note = _expected_row(solve_rows, d, F)
        if row is None:
            out.append(ReportRow(name, "solve", d, str(space.dim), cls, "-", "n/a", ""))
            continue
        if row["classification"] == "*" and F.p:
            # derivation-algebra fixtures are characteristic-zero values
            out.append(ReportRow(name, "solve", d, str(space.dim), cls, "-", "n/a", row["tag"]))
            continue
        want_cls = row["classification"]
        ok = space.dim == row["dim"] and (want_cls == "*" or want_cls == cls)
        expected = f"dim {row['dim']}" + ("" if want_cls == "*" else f", {want_cls}") + note
        out.append(ReportRow(name, "solve", d, str(space.dim), cls, expected, _match(ok), row["tag"]))
    for prow in (r for r in exp["pencil"] if r["algebra"] == name):
        if F.p:
            out.append(ReportRow(name, "pencil", "", "", "skipped over GF(p)", "-", "n/a", prow["tag"]))
            continue
        E = pencil_exceptional(A)
        allowed = {Fraction(x) for x in prow["allowed"]}
        ok = (set(E.exceptionals) <= allowed and E.exceptionals.get(Fraction(1, 2)) == prow["half_nullity"]
              and E.nonrational_factor_degrees == prow["nonrational_degrees"])
        got = ", ".join(f"{_ftext(d)}:{k}" for d, k in sorted(E.exceptionals.items()))
        if E.nonrational_factor_degrees:
            got += f"; irrational factor degrees {E.nonrational_factor_degrees}"
        expected = "subset of {" + ", ".join(prow["allowed"]) + "}, 1/2:" + str(prow["half_nullity"])
        out.append(ReportRow(name, "pencil", "", str(E.generic_nullity), got, expected, _match(ok), prow["tag"]))
    return out


def _ftext(d: Fraction) -> str:
    return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"


def report_targets() -> list[str]:
    return [e.name for e in zoo.catalog()] + [e.name for e in zoo.semisimple_catalog()]


def run_report(field: FieldDescriptor = QQ, threads: int | None = None,
               targets: list[str] | None = None) -> list[ReportRow]:
    """Rows in fixed catalog order; the work fans out per algebra when ``threads > 1``."""
    exp = expectations()
    names = targets or report_targets()
    threads = thread_count() if threads is None else threads
    if field.characteristic == 3:
        # the identity checks and the delta = 1/3 probe both need p > 3
        raise CharacteristicError("the report needs characteristic 0 or p > 3")
    fdoc = field.to_json()
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_algebra_rows, names, [fdoc] * len(names), [exp] * len(names)))
    else:
        parts = [_algebra_rows(n, fdoc, exp) for n in names]
    return [row for part in parts for row in part]


def emit_report(rows: list[ReportRow], fmt: str = "md") -> str:
    if fmt == "json":
        mism = sum(r.mismatch for r in rows)
        return dumps({"rows": [asdict(r) for r in rows], "mismatches": mism})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([getattr(r, c) for c in COLUMNS])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        for r in rows:
            cells = [str(getattr(r, c)).replace("|", "\\|") for c in COLUMNS]
            lines.append("| " + " | ".join(cells) + " |")
        mism = sum(r.mismatch for r in rows)
        lines.append("")
        lines.append(f"{len(rows)} rows, {mism} mismatches")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def mismatches(rows: list[ReportRow]) -> list[ReportRow]:
    return [r for r in rows if r.mismatch]


def rows_to_json(rows: list[ReportRow]) -> str:
    return json.dumps([asdict(r) for r in rows], sort_keys=True)
