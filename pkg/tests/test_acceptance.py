"""End-to-end acceptance criteria, exact arithmetic throughout.

Each test prints one ``criterion N: PASS|FAIL`` line; the lines are repeated
in the terminal summary.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from functools import lru_cache

from jordan_delta import zoo
from jordan_delta.derivations import (build_delta_system, classify_solution, delta_derivations, map_residual,
                                      multiplication_map, pencil_exceptional, verify_map)
from jordan_delta.exactnum import QQ, CharacteristicError, PrimeField, field_descriptor
from jordan_delta.identities import check_super_jordan_envelope, check_supercommutativity
from jordan_delta.linalg import SparseMatrix, nullspace_exact, oracle_nullspace, span_equal

HALF = Fraction(1, 2)
EXCLUDED = [Fraction(-1), Fraction(2), Fraction(1, 3), Fraction(5)]
CATALOG = [e.name for e in zoo.catalog()]
UNITAL = {e.name: e.unital for e in zoo.catalog()}

# dimension of the derivation algebra (delta = 1), computed with oracle_nullspace and frozen
DERIVATION_DIMS = {
    "F1": 0, "J(V,f)?d=2": 1, "J(V,f)?d=3": 3, "H3(F)": 3, "H3(H)": 21, "H4(F)": 6, "H3(O)": 52,
    "M(1,1)+": 3, "M(1,2)+": 4, "Q(2)+": 3, "osp(1,1)": 3, "osp(2,1)": 4, "P(2)": 4,
    "J(V,f)super?d0=2&d1=2": 4, "JGamma?n=2": 4, "JGamma?n=3": 8, "K3": 3,
    "Dt?t=1": 3, "Dt?t=-1": 3, "Dt?t=1/2": 3, "Dt?t=2": 3, "K10": 6,
}

SUMS = {
    "H3(F) (+) F1": [(0, 6), (6, 7)],
    "J(V,f)?d=3 (+) J(V,f)?d=2": [(0, 4), (4, 7)],
    "F1 (+) F1 (+) H3(F)": [(0, 1), (1, 2), (2, 8)],
    "K3 (+) Dt?t=1": [(0, 3), (3, 7)],
}

PROBE = ["K3", "Dt?t=1", "J(V,f)?d=3", "H3(F)", "Q(2)+"]

RESULTS: dict[int, str] = {}


def _record(n: int, failures: list, detail: str):
    ok = not failures
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    if failures:
        line += " failures: " + "; ".join(str(f) for f in failures[:5])
    RESULTS[n] = line
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def algebra(name: str, field: str = "Q"):
    return zoo.build(name, QQ if field == "Q" else field_descriptor(field))


@lru_cache(maxsize=None)
def space(name: str, delta: Fraction, field: str = "Q"):
    return delta_derivations(algebra(name, field), delta)


def test_criterion_1_half_derivations_are_scalar():
    start = time.perf_counter()
    failures = []
    for name in CATALOG:
        s = space(name, HALF)
        kind = classify_solution(s, algebra(name)).kind
        if s.dim != 1 or kind != "ScalarIdentity":
            failures.append((name, s.dim, kind))
    elapsed = time.perf_counter() - start
    if elapsed > 600:
        failures.append(f"took {elapsed:.0f}s")
    _record(1, failures, f"{len(CATALOG)} catalog entries at delta=1/2, {elapsed:.1f}s")


def test_criterion_2_other_deltas_vanish():
    failures = [(name, str(d), space(name, d).dim) for name in CATALOG for d in EXCLUDED if space(name, d).dim]
    _record(2, failures, f"{len(CATALOG)} entries x delta in {{-1, 2, 1/3, 5}}")


def test_criterion_3_trivial_deltas():
    failures = []
    for name in CATALOG:
        if (UNITAL[name] or name == "K3") and space(name, Fraction(0)).dim:
            failures.append((name, "delta=0", space(name, Fraction(0)).dim))
        got = space(name, Fraction(1)).dim
        oracle = len(oracle_nullspace(build_delta_system(algebra(name), Fraction(1), prune=True)))
        if not got == oracle == DERIVATION_DIMS[name]:
            failures.append((name, "delta=1", got, oracle, DERIVATION_DIMS[name]))
    _record(3, failures, "delta=0 trivial, delta=1 matches the oracle and the frozen fixture")


def test_criterion_4_block_scalar():
    failures = []
    for name, blocks in SUMS.items():
        A = algebra(name)
        s = space(name, HALF)
        cls = classify_solution(s, A)
        if s.dim != len(blocks) or cls.kind != "BlockScalar" or cls.blocks != blocks:
            failures.append((name, s.dim, str(cls), cls.blocks))
    _record(4, failures, "3 algebra sums plus the superalgebra sum K3 (+) D_1 (computational extension)")


def test_criterion_5_pencil():
    failures = []
    allowed = {Fraction(0), HALF, Fraction(1)}
    for name in CATALOG:
        E = pencil_exceptional(algebra(name))
        if not set(E.exceptionals) <= allowed or E.exceptionals.get(HALF) != 1 or E.nonrational_factor_degrees:
            failures.append((name, {str(d): k for d, k in E.exceptionals.items()}, E.nonrational_factor_degrees))
    _record(5, failures, f"{len(CATALOG)} pencils, exceptionals within {{0, 1/2, 1}}")


def test_criterion_6_counterexamples():
    failures = []
    Q = algebra("Q(2)+")
    iq = Q.index
    delta_q = {iq("D^11"): Fraction(1), iq("D^22"): Fraction(1)}
    pair_q = (iq("D^12"), iq("D^21"))
    psi = multiplication_map(Q, delta_q, "left")
    check = verify_map(Q, psi, HALF)
    res = map_residual(Q, psi, HALF, *pair_q)
    if check.ok or pair_q not in check.failures:
        failures.append("Q(2)+: pair (D^12, D^21) not rejected")
    if set(res) != {iq("D^11"), iq("D^22")} or res[iq("D^11")] != -res[iq("D^22")]:
        failures.append(f"Q(2)+: residual {res}")

    P = algebra("P(2)")
    ip = P.index
    delta_p = {ip("e31"): Fraction(1), ip("e42"): Fraction(1)}
    pair_p = (ip("e12+e43"), ip("e14-e23"))
    d11, d22 = ip("e11+e33"), ip("e22+e44")
    # x -> x o Delta and x -> Delta o x differ by a sign on odd x; both fail, with residuals on different diagonals
    right = multiplication_map(P, delta_p, "right")
    left = multiplication_map(P, delta_p, "left")
    for name, psi in (("right", right), ("left", left)):
        check = verify_map(P, psi, HALF)
        if check.ok or pair_p not in check.failures:
            failures.append(f"P(2) {name}: pair (Delta_12, b_21) not rejected")
    res_right = map_residual(P, right, HALF, *pair_p)
    res_left = map_residual(P, left, HALF, *pair_p)
    if list(res_right) != [d11]:
        failures.append(f"P(2): residual of x o Delta is {res_right}")
    if list(res_left) != [d22]:
        failures.append(f"P(2): residual of Delta o x is {res_left}")
    _record(6, failures, "Q(2)+ residual ~ D^11 - D^22; P(2) residual ~ Delta_11 for x o Delta "
                         "(Delta_22 for Delta o x)")


def test_criterion_7_identities():
    failures = []
    modes = set()
    for name in CATALOG:
        A = algebra(name)
        comm = check_supercommutativity(A)
        env = check_super_jordan_envelope(A)
        modes.add(env.mode)
        if not (comm.passed and env.passed):
            failures.append((name, comm.witnesses[:1], env.witnesses[:1]))
    try:
        if zoo.k10_table("skew_automorphism") != zoo.k10_table():
            failures.append("K10 default table differs from the accepted closure")
    except zoo.K10ConflictError as exc:
        failures.append(f"K10 closure conflict: {exc}")
    _record(7, failures, f"{len(CATALOG)} entries, envelope modes {sorted(modes)}, K10 closure conflict-free")


def test_criterion_8_characteristic_probes():
    failures = []
    for p in ("gf5", "gf7"):
        for name in PROBE + ["K10"]:
            A = algebra(name, p)
            s = space(name, HALF, p)
            if s.dim != 1 or classify_solution(s, A).kind != "ScalarIdentity":
                failures.append((p, name, "1/2", s.dim))
            for d in EXCLUDED:
                if space(name, d, p).dim:
                    failures.append((p, name, str(d), space(name, d, p).dim))
        K = algebra("K10", p)
        if not (check_supercommutativity(K).passed and check_super_jordan_envelope(K).passed):
            failures.append((p, "K10 identities"))
    try:
        zoo.kac_k10(PrimeField(3))
        failures.append("K10 accepted over GF(3)")
    except CharacteristicError:
        pass
    _record(8, failures, "GF(5), GF(7) reproduce criteria 1-2; K10 verified there and refused over GF(3)")


def _random_matrix(rng: random.Random) -> list[list[int]]:
    rows, cols = rng.randint(1, 8), rng.randint(1, 8)
    if rng.random() < 0.5:
        # low-rank product to force nontrivial nullspaces
        r = rng.randint(1, min(rows, cols))
        L = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(rows)]
        R = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(r)]
        M = [[sum(L[i][t] * R[t][j] for t in range(r)) for j in range(cols)] for i in range(rows)]
        return [[max(-9, min(9, x)) for x in row] for row in M]
    return [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]


def _agree(M) -> bool:
    a, b = nullspace_exact(M), oracle_nullspace(M)
    return len(a) == len(b) and span_equal(a, b)


def test_criterion_9_cross_validation():
    failures = []
    rng = random.Random(9)
    for t in range(500):
        M = _random_matrix(rng)
        sm = SparseMatrix(len(M), len(M[0]), [{j: Fraction(x) for j, x in enumerate(row) if x} for row in M])
        if not _agree(sm):
            failures.append(("random", t))
    systems = 0
    for name in CATALOG + list(SUMS):
        for d in (Fraction(0), HALF, Fraction(1)):
            systems += 1
            M = build_delta_system(algebra(name), d, prune=True)
            if not _agree(M):
                failures.append((name, str(d)))
    _record(9, failures, f"500 random matrices and {systems} constraint systems")
