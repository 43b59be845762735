"""Exact checks of supercommutativity and the (super-)Jordan identity.

The Jordan identity (x^2 y) x = x^2 (y x) is checked through its full
linearization in x,

    sum over permutations s of (x1, x2, x3):
        ((xs1 xs2) y) xs3 - (xs1 xs2)(y xs3) = 0,

on basis quadruples.  In characteristic 0 or p > 3 this is equivalent to the
identity itself.  Superalgebras are checked on their Grassmann envelope.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from .algebra import Superalgebra, mul_vectors
from .exactnum import CharacteristicError
from .grassmann import envelope_index, grassmann_envelope

SWEEP_LIMIT = 40
DEFAULT_SAMPLES = 10**6
DEFAULT_SEED = 20240601


@dataclass
class CheckReport:
    check: str
    algebra: str
    witnesses: list = field(default_factory=list)
    failures: int = 0
    checked: int = 0
    mode: str = "sweep"
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "algebra": self.algebra,
            "passed": self.passed,
            "failures": self.failures,
            "checked": self.checked,
            "mode": self.mode,
            "seed": self.seed,
            "witnesses": [{"basis": list(idx), "labels": labels, "residual": res}
                          for idx, labels, res in self.witnesses],
        }


def _residual_text(A: Superalgebra, vec: dict) -> dict:
    return {A.labels[k]: A.field.format(c) for k, c in sorted(vec.items())}


def _finish(report: CheckReport, A: Superalgebra, raw: list, cap: int) -> CheckReport:
    raw.sort(key=lambda t: t[0])
    report.failures = len(raw)
    report.witnesses = [(idx, [A.labels[i] for i in idx], _residual_text(A, res)) for idx, res in raw[:cap]]
    return report


def check_supercommutativity(A: Superalgebra, cap: int = 10) -> CheckReport:
    """ab = (-1)^{p(a)p(b)} ba on all basis pairs."""
    raw = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            ab = A.product(i, j)
            ba = A.product(j, i)
            sign = -1 if A.parity[i] and A.parity[j] else 1
            diff = dict(ab)
            for k, c in ba.items():
                diff[k] = diff.get(k, 0) - sign * c
            diff = {k: c for k, c in diff.items() if c}
            if diff:
                raw.append(((i, j), diff))
    rep = CheckReport("supercommutativity", A.name, checked=A.dim * (A.dim + 1) // 2)
    return _finish(rep, A, raw, cap)


def _guard_characteristic(A: Superalgebra):
    p = A.field.characteristic
    if p == 3:
        raise CharacteristicError("the linearized Jordan identity needs characteristic 0 or p > 3")


# ---------------------------------------------------------------------------
# element-level evaluation (used for sampling and envelope representatives)


def linearized_residual(A: Superalgebra, x1: int, x2: int, x3: int, y: int) -> dict:
    """Full linearization of (x^2 y)x - x^2(yx) at basis elements, as a sparse vector."""
    out: dict = {}
    xs = (x1, x2, x3)
    for s in itertools.permutations(range(3)):
        a, b, c = xs[s[0]], xs[s[1]], xs[s[2]]
        u = A.constants.get((a, b))
        if not u:
            continue
        t1 = mul_vectors(A, mul_vectors(A, u, {y: 1}), {c: 1})
        yc = A.constants.get((y, c))
        t2 = mul_vectors(A, u, yc) if yc else {}
        for k, v in t1.items():
            out[k] = out.get(k, 0) + v
        for k, v in t2.items():
            out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# exact integer tensor sweep


def _integer_tensor(A: Superalgebra):
    """Structure constants as an exact int64 (or object) array and the scale used.

    Over Q the constants are multiplied by the lcm of their denominators; the
    linearized identity is homogeneous of degree 3 in the product, so the
    scaled residual vanishes iff the original one does.
    """
    d = A.dim
    p = A.field.p
    if p:
        vals = {key: {k: int(c) for k, c in row.items()} for key, row in A.constants.items()}
        bound = p
    else:
        den = 1
        for row in A.constants.values():
            for c in row.values():
                den = den * c.denominator // gcd(den, c.denominator)
        vals = {key: {k: int(Fraction(c) * den) for k, c in row.items()} for key, row in A.constants.items()}
        bound = max((abs(c) for row in vals.values() for c in row.values()), default=1)
    # worst intermediate: 6 * d^2 * bound^3 (before any reduction mod p)
    dtype = np.int64 if 6 * (d + 1) ** 2 * max(bound, 1) ** 3 < 2**62 else object
    C = np.zeros((d, d, d), dtype=dtype)
    for (i, j), row in vals.items():
        for k, c in row.items():
            C[i, j, k] = c
    return C, p


def _tensor_sweep(A: Superalgebra) -> list:
    d = A.dim
    C, p = _integer_tensor(A)
    C2 = C.reshape(d * d, d)
    Cr = C.reshape(d, d * d)
    perms = list(itertools.permutations(range(3)))
    raw = []
    for y in range(d):
        uy = C2 @ C[:, y, :]
        if p:
            uy %= p
        t1 = uy @ Cr
        W = np.einsum("cn,mno->mco", C[y], C)
        if p:
            W %= p
        t2 = C2 @ W.reshape(d, d * d)
        atom = (t1 - t2).reshape(d, d, d, d)
        res = sum(atom.transpose(P + (3,)) for P in perms)
        if p:
            res %= p
        nz = np.argwhere(res != 0)
        if len(nz):
            seen = {}
            for a, b, c, o in nz:
                key = tuple(sorted((int(a), int(b), int(c))))
                if key != (int(a), int(b), int(c)):
                    continue
                seen.setdefault(key, {})[int(o)] = int(res[a, b, c, o])
            for key, vec in seen.items():
                raw.append((key + (y,), vec))
    return raw


def check_jordan_linearized(A: Superalgebra, cap: int = 10, full: bool | None = None,
                            samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                            quadruples=None) -> CheckReport:
    """Linearized Jordan identity on basis quadruples (x1, x2, x3, y).

    Full sweep when ``dim <= 40`` (or ``full=True``); otherwise ``samples``
    pseudo-random quadruples from ``seed``.  ``quadruples`` restricts the
    check to an explicit list.
    """
    if any(A.parity):
        raise ValueError(f"{A.name} has odd elements; use check_super_jordan_envelope")
    _guard_characteristic(A)
    rep = CheckReport("jordan_linearized", A.name)
    if quadruples is not None:
        raw = []
        n = 0
        for q in quadruples:
            n += 1
            r = linearized_residual(A, *q)
            if r:
                raw.append((tuple(q), r))
        rep.checked = n
        rep.mode = "explicit"
        return _finish(rep, A, raw, cap)
    if full is None:
        full = A.dim <= SWEEP_LIMIT
    if full:
        raw = sorted(_tensor_sweep(A), key=lambda t: t[0])
        # the sweep works with rescaled constants; witnesses get the true residual
        raw[:cap] = [(q, linearized_residual(A, *q)) for q, _ in raw[:cap]]
        rep.checked = A.dim ** 4
        return _finish(rep, A, raw, cap)
    rng = random.Random(seed)
    d = A.dim
    raw = []
    for _ in range(samples):
        q = (rng.randrange(d), rng.randrange(d), rng.randrange(d), rng.randrange(d))
        r = linearized_residual(A, *q)
        if r:
            raw.append((q, r))
    rep.mode = "sample"
    rep.seed = seed
    rep.checked = samples
    return _finish(rep, A, raw, cap)


def representative_quadruples(A: Superalgebra, E: Superalgebra):
    """Envelope quadruples (g1(x)a1, ..., g4(x)a4) with g_s = 1 for even a_s and e_s for odd.

    Every term of the linearized identity on envelope elements carries the
    product g1 g2 g3 g4 up to sign, so quadruples with overlapping supports
    vanish identically and disjoint ones differ from these only by a global
    sign; sweeping these is a complete check of the envelope.
    """
    d = A.dim
    idx = [[envelope_index(E, ((s + 1,) if A.parity[a] else ()), a) for a in range(d)] for s in range(4)]
    for a1 in range(d):
        for a2 in range(d):
            for a3 in range(d):
                for a4 in range(d):
                    yield (idx[0][a1], idx[1][a2], idx[2][a3], idx[3][a4])


def check_super_jordan_envelope(A: Superalgebra, k: int = 4, cap: int = 10,
                                full_envelope: bool | None = None) -> CheckReport:
    """A is a Jordan superalgebra iff its Grassmann envelope is a Jordan algebra.

    The envelope on ``k >= 4`` generators is built and checked for
    commutativity and for the linearized identity.  Small envelopes
    (dim <= 40) get the literal full sweep; larger ones are swept over the
    representative quadruples, which is equivalent.
    """
    if k < 4:
        raise ValueError("the linearized identity has four slots; use k >= 4")
    _guard_characteristic(A)
    E = grassmann_envelope(A, k)
    comm = check_supercommutativity(E, cap)
    if full_envelope is None:
        full_envelope = E.dim <= SWEEP_LIMIT
    if full_envelope:
        jr = check_jordan_linearized(E, cap=cap, full=True)
    else:
        jr = check_jordan_linearized(E, cap=cap, quadruples=representative_quadruples(A, E))
        jr.mode = "representatives"
    rep = CheckReport("super_jordan_envelope", A.name, mode=jr.mode)
    rep.witnesses = comm.witnesses + jr.witnesses
    rep.failures = comm.failures + jr.failures
    rep.checked = comm.checked + jr.checked
    return rep


def check_random_elements(A: Superalgebra, count: int = 100, seed: int = DEFAULT_SEED, k: int = 4,
                          cap: int = 10) -> CheckReport:
    """(x^2 y)x = x^2(yx) and xy = yx on random exact elements (of the envelope for superalgebras)."""
    _guard_characteristic(A)
    E = A if A.is_plain else grassmann_envelope(A, k)
    F = E.field
    rng = random.Random(seed)
    raw = []
    for t in range(count):
        x = E.element([F(rng.randint(-3, 3)) for _ in range(E.dim)])
        y = E.element([F(rng.randint(-3, 3)) for _ in range(E.dim)])
        x2 = x * x
        res = (x2 * y) * x - x2 * (y * x)
        com = x * y - y * x
        for r in (res, com):
            if r:
                raw.append(((t,), r.support()))
    rep = CheckReport("jordan_random_elements", A.name, checked=count, mode="random", seed=seed)
    rep.failures = len(raw)
    rep.witnesses = [(idx, [], _residual_text(E, res)) for idx, res in raw[:cap]]
    return rep


def check_identities(A: Superalgebra, cap: int = 10, full: bool | None = None, seed: int = DEFAULT_SEED,
                     random_elements: int = 0) -> list[CheckReport]:
    """The checks appropriate to A: commutativity plus Jordan (plain) or envelope (super).

    ``full`` forces (or forbids) the complete quadruple sweep of a plain
    algebra; the envelope check is always exhaustive.  ``random_elements``
    adds that many direct evaluations on random elements.
    """
    out = [check_supercommutativity(A, cap)]
    if A.is_plain:
        out.append(check_jordan_linearized(A, cap, full=full, seed=seed))
    else:
        out.append(check_super_jordan_envelope(A, cap=cap))
    if random_elements:
        out.append(check_random_elements(A, random_elements, seed, cap=cap))
    return out
