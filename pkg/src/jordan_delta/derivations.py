"""delta-derivations: linear maps phi with phi(xy) = delta (phi(x) y + x phi(y)).

A map is stored column-per-basis-element: ``matrix[k][m]`` is coordinate k of
phi(b_m), and the unknown phi[k][m] sits in column ``m * dim + k`` of the
constraint system.  Row ``(i * dim + j) * dim + k`` is the k-th coordinate of
phi(b_i b_j) - delta (phi(b_i) b_j + b_i phi(b_j)).

The symbolic system is the pencil C - delta D.  Its exceptional values are
found by elimination over Z[delta] that prefers constant pivots; every
non-constant pivot (and every polynomial content divided out of a row) is
recorded.  At a value delta0 that is a root of none of them each step is an
invertible row operation, so the rank there equals the generic rank.  Hence
the rank can only drop at roots of recorded polynomials, and each rational
root is confirmed by an exact rank computation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra import Superalgebra, mul_vectors
from .exactnum import DeltaPoly, FieldDescriptor, rational_roots
from .linalg import (SparseMatrix, column_components, nullspace_exact, nullspace_sparse,  # noqa: F401
                     oracle_nullspace, rank_exact, rref_dense, solve_in_span, span_equal)

PARITY_FILTERS = ("all", "even", "odd")


class PencilFieldError(ValueError):
    pass


def parse_delta(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"delta must be an exact rational like 1/2, got {text!r}") from None


# ---------------------------------------------------------------------------
# the constraint system


def _side_tables(A: Superalgebra):
    """right[(j, k)] = [(m, c[m][j][k])], left[(i, k)] = [(m, c[i][m][k])]."""
    right: dict = {}
    left: dict = {}
    for (a, b), row in A.constants.items():
        for k, c in row.items():
            right.setdefault((b, k), []).append((a, c))
            left.setdefault((a, k), []).append((b, c))
    return right, left


def _pencil_rows(A: Superalgebra):
    """Yield ``(row_index, C_row, D_row)`` for the nonzero rows of C - delta D."""
    n = A.dim
    right, left = _side_tables(A)
    for i in range(n):
        for j in range(n):
            cij = A.constants.get((i, j), {})
            for k in range(n):
                C: dict[int, object] = {}
                for m, c in cij.items():
                    C[m * n + k] = c
                D: dict[int, object] = {}
                for m, c in right.get((j, k), ()):
                    col = i * n + m
                    D[col] = D.get(col, 0) + c
                for m, c in left.get((i, k), ()):
                    col = j * n + m
                    D[col] = D.get(col, 0) + c
                D = {col: c for col, c in D.items() if c}
                if C or D:
                    yield (i * n + j) * n + k, C, D


@dataclass
class DeltaPencil:
    """C - delta D with ``dim^3`` rows and ``dim^2`` columns (zero rows kept implicit)."""

    nrows: int
    ncols: int
    C: dict[int, dict]
    D: dict[int, dict]
    field: FieldDescriptor

    def entry(self, r: int, c: int) -> DeltaPoly:
        a = self.C.get(r, {}).get(c, 0)
        b = self.D.get(r, {}).get(c, 0)
        return DeltaPoly([a, -b])

    def rows(self) -> list[int]:
        return sorted(set(self.C) | set(self.D))

    def specialize(self, delta, prune: bool = True) -> SparseMatrix:
        F = self.field
        d = F(delta)
        out = []
        for r in (self.rows() if prune else range(self.nrows)):
            row = dict(self.C.get(r, {}))
            for c, x in self.D.get(r, {}).items():
                row[c] = row.get(c, F.zero) - d * x
            out.append({c: x for c, x in row.items() if x})
        return SparseMatrix(len(out), self.ncols, out)


def build_delta_pencil(A: Superalgebra) -> DeltaPencil:
    n = A.dim
    C, D = {}, {}
    for r, crow, drow in _pencil_rows(A):
        if crow:
            C[r] = crow
        if drow:
            D[r] = drow
    return DeltaPencil(n ** 3, n * n, C, D, A.field)


def build_delta_system(A: Superalgebra, delta=None, prune: bool = False):
    """Constraint matrix at a fixed ``delta``, or the :class:`DeltaPencil` when ``delta`` is None.

    With ``prune=False`` the matrix has all ``dim^3`` rows in (i, j, k) order.
    """
    P = build_delta_pencil(A)
    if delta is None:
        return P
    return P.specialize(delta, prune=prune)


# ---------------------------------------------------------------------------
# spaces of delta-derivations


def vector_to_matrix(v: dict, n: int, zero) -> list[list]:
    M = [[zero] * n for _ in range(n)]
    for col, x in v.items():
        m, k = divmod(col, n)
        M[k][m] = x
    return M


def matrix_to_vector(M: Sequence[Sequence], n: int) -> dict:
    return {m * n + k: M[k][m] for m in range(n) for k in range(n) if M[k][m]}


def identity_map(A: Superalgebra) -> list[list]:
    F = A.field
    return [[F.one if k == m else F.zero for m in range(A.dim)] for k in range(A.dim)]


def multiplication_map(A: Superalgebra, a: dict, side: str = "left") -> list[list]:
    """Matrix of x -> a x (or x a) for ``a`` given as a sparse coordinate dict."""
    F = A.field
    M = [[F.zero] * A.dim for _ in range(A.dim)]
    for m in range(A.dim):
        img = mul_vectors(A, a, {m: F.one}) if side == "left" else mul_vectors(A, {m: F.one}, a)
        for k, c in img.items():
            M[k][m] = c
    return M


def _column_parity(A: Superalgebra, col: int) -> int:
    m, k = divmod(col, A.dim)
    return A.parity[m] ^ A.parity[k]


def _sparse_rref(vecs: list[dict], ncols: int, F: FieldDescriptor) -> list[dict]:
    if not vecs:
        return []
    dense = []
    for v in vecs:
        row = [F.zero] * ncols
        for c, x in v.items():
            row[c] = x
        dense.append(row)
    out = []
    for row in rref_dense(dense):
        out.append({c: F(x) for c, x in enumerate(row) if x})
    return out


@dataclass
class DerivationSpace:
    algebra: str
    delta: Fraction
    dim: int
    parity_split: tuple[int, int]
    vectors: list[dict]
    n: int
    field: FieldDescriptor
    parity_filter: str = "all"

    @property
    def basis(self) -> list[list]:
        return [vector_to_matrix(v, self.n, self.field.zero) for v in self.vectors]

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "algebra": self.algebra,
            "delta": _frac_text(self.delta),
            "field": self.field.to_json(),
            "parity_filter": self.parity_filter,
            "dim": self.dim,
            "parity_split": list(self.parity_split),
            "basis": [[[fmt(x) for x in row] for row in M] for M in self.basis],
        }


def _frac_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def delta_derivations(A: Superalgebra, delta, parity_filter: str = "all") -> DerivationSpace:
    """Exact solution space of the delta-derivation equations.

    Maps of both parities are solved for; ``parity_split`` counts the
    parity-preserving and parity-reversing parts (the system decouples along
    them).  ``parity_filter`` restricts the returned basis.
    """
    if parity_filter not in PARITY_FILTERS:
        raise ValueError(f"parity filter must be one of {PARITY_FILTERS}")
    F = A.field
    d = Fraction(delta)
    M = build_delta_system(A, d, prune=True)
    ker = nullspace_sparse(M, F)
    ncols = A.dim ** 2
    parts = []
    for want in (0, 1):
        proj = [{c: x for c, x in v.items() if _column_parity(A, c) == want} for v in ker]
        parts.append(_sparse_rref([v for v in proj if v], ncols, F))
    split = (len(parts[0]), len(parts[1]))
    if split[0] + split[1] != len(ker):
        raise AssertionError("solution space does not decompose by map parity")
    if parity_filter == "all":
        vecs = ker
    else:
        vecs = parts[0 if parity_filter == "even" else 1]
    return DerivationSpace(A.name, d, len(vecs), split, [dict(v) for v in vecs], A.dim, F, parity_filter)


# ---------------------------------------------------------------------------
# verification


@dataclass
class MapCheck:
    ok: bool
    first_pair: tuple[int, int] | None
    failures: list[tuple[int, int]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _apply(M: Sequence[Sequence], v: dict, n: int, F) -> dict:
    out: dict = {}
    for m, x in v.items():
        for k in range(n):
            c = M[k][m]
            if c:
                out[k] = out.get(k, F.zero) + c * x
    return {k: c for k, c in out.items() if c}


def map_residual(A: Superalgebra, phi: Sequence[Sequence], delta, i: int, j: int) -> dict:
    """phi(b_i b_j) - delta (phi(b_i) b_j + b_i phi(b_j)) as a sparse vector."""
    F = A.field
    n = A.dim
    d = F(delta)
    lhs = _apply(phi, A.product(i, j), n, F)
    t1 = mul_vectors(A, _apply(phi, {i: F.one}, n, F), {j: F.one})
    t2 = mul_vectors(A, {i: F.one}, _apply(phi, {j: F.one}, n, F))
    out = dict(lhs)
    for t in (t1, t2):
        for k, c in t.items():
            out[k] = out.get(k, F.zero) - d * c
    return {k: c for k, c in out.items() if c}


def verify_map(A: Superalgebra, phi: Sequence[Sequence], delta) -> MapCheck:
    """Check the defining identity on every basis pair by direct multiplication."""
    fails = []
    for i in range(A.dim):
        for j in range(A.dim):
            if map_residual(A, phi, delta, i, j):
                fails.append((i, j))
    return MapCheck(not fails, fails[0] if fails else None, fails)


# ---------------------------------------------------------------------------
# classification


@dataclass
class Classification:
    kind: str                       # Zero | ScalarIdentity | BlockScalar | Other
    blocks: list[tuple[int, int]] = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "blocks": [list(b) for b in self.blocks], "detail": self.detail}

    def __str__(self) -> str:
        if self.kind == "BlockScalar":
            return f"BlockScalar({len(self.blocks)})"
        return self.kind


def _block_identity(n: int, lo: int, hi: int, F) -> dict:
    return {m * n + m: F.one for m in range(lo, hi)}


def classify_solution(space: DerivationSpace, A: Superalgebra) -> Classification:
    """Compare the span of the solutions with F.id and with the block identities."""
    F = A.field
    n = A.dim
    if space.dim == 0:
        return Classification("Zero")
    got = _sparse_rref(space.vectors, n * n, F)
    ident = _sparse_rref([_block_identity(n, 0, n, F)], n * n, F)
    if got == ident:
        return Classification("ScalarIdentity", [(0, n)], "phi(x) = alpha x")
    blocks = [tuple(b) for b in A.meta.get("blocks", [])]
    if len(blocks) > 1:
        want = _sparse_rref([_block_identity(n, lo, hi, F) for lo, hi in blocks], n * n, F)
        if got == want:
            return Classification("BlockScalar", blocks, "phi(x) = sum alpha_i x_i")
    return Classification("Other", detail=f"{space.dim}-dimensional, not block scalar")


def commutator_closed(space: DerivationSpace) -> bool:
    """For delta = 1: is [phi, psi] in the span for every pair of basis maps?"""
    F = space.field
    n = space.n
    mats = space.basis
    flat = [[M[k][m] for m in range(n) for k in range(n)] for M in mats]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            P, Q = mats[a], mats[b]
            comm = [[sum((P[k][t] * Q[t][m] - Q[k][t] * P[t][m] for t in range(n)), F.zero)
                     for m in range(n)] for k in range(n)]
            target = [comm[k][m] for m in range(n) for k in range(n)]
            if solve_in_span(flat, target) is None:
                return False
    return True


# ---------------------------------------------------------------------------
# pencil analysis over Z[delta]


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return tuple(a[0] * x for x in b)
    if len(b) == 1:
        return tuple(b[0] * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def _pdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple] | None:
    """Exact division a / b in Z[delta]; None if not exact."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c, r = divmod(a[-1], lead)
        if r:
            return None
        s = len(a) - len(b)
        q[s] = c
        for i, x in enumerate(b):
            a[s + i] -= c * x
        while a and a[-1] == 0:
            a.pop()
    if a:
        return None
    return tuple(q), ()


def _pgcd(a: tuple, b: tuple) -> tuple:
    """Primitive gcd in Z[delta] via rational Euclid."""
    A = DeltaPoly(a)
    B = DeltaPoly(b)
    if A.is_zero():
        return _primitive_poly(b)
    if B.is_zero():
        return _primitive_poly(a)
    x = [Fraction(c) for c in A.coeffs]
    y = [Fraction(c) for c in B.coeffs]
    while y:
        while len(x) >= len(y) and x:
            c = x[-1] / y[-1]
            s = len(x) - len(y)
            for i, t in enumerate(y):
                x[s + i] -= c * t
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return _primitive_poly(tuple(x))


def _primitive_poly(a) -> tuple:
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return ()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _row_content(row: dict) -> tuple:
    """gcd of the entries (integer content times polynomial content)."""
    g: tuple | None = None
    for p in row.values():
        g = _primitive_poly(p) if g is None else _pgcd(g, p)
        if len(g) == 1:
            break
    ic = 0
    for p in row.values():
        for c in p:
            ic = gcd(ic, c)
    g = g or (1,)
    return _pmul(g, (ic,)) if len(g) > 1 else (ic,)


def _normalize_row(row: dict, record: set) -> dict:
    cont = _row_content(row)
    if cont in ((1,), (-1,)) or not cont:
        return row
    if len(cont) > 1:
        record.add(_primitive_poly(cont))
    out = {}
    for c, p in row.items():
        q = _pdivmod(p, cont)
        if q is None:  # pragma: no cover - content divides every entry
            raise AssertionError("row content does not divide an entry")
        out[c] = q[0]
    return out


def _eliminate_component(rows: list[dict], record: set) -> int:
    """Triangularize over Z[delta]; returns the generic rank of this block."""
    rank = 0
    rows = [r for r in rows if r]
    by_col: dict[int, set[int]] = {}
    live: dict[int, dict] = {}
    for r, row in enumerate(rows):
        live[r] = row
        for c in row:
            by_col.setdefault(c, set()).add(r)
    # constant entries are picked first: unit pivots make steps invertible everywhere
    while live:
        best = None
        for r, row in live.items():
            for c, p in row.items():
                key = (len(p), len(row), c, r)
                if best is None or key < best[0]:
                    best = (key, r, c)
            if best and best[0][0] == 1 and best[0][1] == 1:
                break
        _, pr, pc = best
        prow = live.pop(pr)
        for c in prow:
            by_col[c].discard(pr)
        a = prow[pc]
        if len(a) > 1:
            record.add(_primitive_poly(a))
        rank += 1
        for r in list(by_col.get(pc, ())):
            row = live[r]
            b = row[pc]
            g = _pgcd(a, b) if len(a) > 1 else (gcd(a[0], b[0]) if len(b) == 1 else gcd(a[0], *b),)
            qa = _pdivmod(a, g)[0]
            qb = _pdivmod(b, g)[0]
            if len(qa) > 1:
                record.add(_primitive_poly(qa))
            new = {}
            for c, p in row.items():
                if c != pc:
                    new[c] = _pmul(qa, p) if qa != (1,) else p
            for c, p in prow.items():
                if c == pc:
                    continue
                v = _padd(new.get(c, ()), _pneg(_pmul(qb, p)))
                if v:
                    new[c] = v
                else:
                    new.pop(c, None)
            for c in row:
                if c not in new:
                    by_col[c].discard(r)
            for c in new:
                by_col.setdefault(c, set()).add(r)
            if new:
                live[r] = _normalize_row(new, record)
            else:
                del live[r]
    return rank


@dataclass
class ExceptionalSet:
    generic_rank: int
    ncols: int
    exceptionals: dict[Fraction, int]
    nonrational_factor_degrees: list[int]
    candidates: list[Fraction] = field(default_factory=list)

    @property
    def generic_nullity(self) -> int:
        return self.ncols - self.generic_rank

    def to_json(self) -> dict:
        return {
            "generic_rank": self.generic_rank,
            "generic_nullity": self.generic_nullity,
            "exceptionals": [{"delta": _frac_text(d), "nullity": k} for d, k in sorted(self.exceptionals.items())],
            "nonrational_degrees": list(self.nonrational_factor_degrees),
            "candidates": [_frac_text(d) for d in self.candidates],
        }


def _scaled_pencil_rows(P: DeltaPencil) -> list[dict]:
    """Rows of C - delta D as integer polynomial dicts (each row cleared of denominators)."""
    out = []
    for r in P.rows():
        C = P.C.get(r, {})
        D = P.D.get(r, {})
        entries = {}
        den = 1
        for c in set(C) | set(D):
            a = Fraction(C.get(c, 0))
            b = -Fraction(D.get(c, 0))
            entries[c] = (a, b)
            for x in (a, b):
                den = den * x.denominator // gcd(den, x.denominator)
        row = {}
        for c, (a, b) in entries.items():
            poly = [int(a * den), int(b * den)]
            while poly and poly[-1] == 0:
                poly.pop()
            if poly:
                row[c] = tuple(poly)
        if row:
            out.append(row)
    return out


def pencil_exceptional(A: Superalgebra) -> ExceptionalSet:
    """All delta where the rank of C - delta D drops below its generic value.

    Rational exceptional values are exact; irrational ones are reported only
    through the degrees of the factors left over after rational roots are
    removed.  Over GF(p) the pencil is not analysed.
    """
    if A.field.p:
        raise PencilFieldError("pencil analysis runs over Q only; solve at explicit delta values over GF(p)")
    P = build_delta_pencil(A)
    rows = _scaled_pencil_rows(P)
    record: set = set()
    rows = [_normalize_row(r, record) for r in rows]
    rank = 0
    for cols, ridx in column_components(rows, P.ncols):
        if ridx:
            rank += _eliminate_component([rows[i] for i in ridx], record)
    roots: set[Fraction] = set()
    leftovers: list[int] = []
    for poly in sorted(record):
        rts, rest = rational_roots(DeltaPoly(poly))
        roots |= rts
        leftovers.extend(rest)
    exceptional = {}
    for d in sorted(roots):
        r = rank_exact(P.specialize(d))
        if r < rank:
            exceptional[d] = P.ncols - r
        elif r > rank:  # pragma: no cover - would contradict the generic rank
            raise AssertionError(f"rank at {d} exceeds the generic rank")
    return ExceptionalSet(rank, P.ncols, exceptional, sorted(leftovers), sorted(roots))
