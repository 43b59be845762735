"""Exact sparse linear algebra over Q and GF(p).

Two independent code paths live here on purpose:

* :func:`nullspace_exact` -- fraction-free elimination on integer rows (Q)
  or residues (GF(p)), after splitting the column set into connected
  components of the row-support graph.  This is what the solver uses.
* :func:`oracle_nullspace` -- a plain Gauss-Jordan on Fraction / Mod rows in
  the given order, with no splitting and no scaling tricks.  Tests use it to
  cross-check the fast path.
"""
from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd
from typing import Iterable, Sequence

from .exactnum import QQ, FieldDescriptor, Mod


class SparseMatrix:
    """Row-major sparse matrix; each row is a ``{column: nonzero scalar}`` dict."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, m: Sequence[Sequence]) -> "SparseMatrix":
        m = [list(r) for r in m]
        ncols = len(m[0]) if m else 0
        rows = []
        for r in m:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: x for j, x in enumerate(r) if x})
        return cls(len(rows), ncols, rows)

    def to_dense(self, zero=0) -> list[list]:
        out = []
        for r in self.rows:
            row = [zero] * self.ncols
            for j, x in r.items():
                row[j] = x
            out.append(row)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def nonzero_rows(self) -> list[dict]:
        return [r for r in self.rows if r]

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _as_sparse(m) -> SparseMatrix:
    return m if isinstance(m, SparseMatrix) else SparseMatrix.from_dense(m)


def _detect_modulus(rows: Iterable[dict]) -> int | None:
    for r in rows:
        for x in r.values():
            if isinstance(x, Mod):
                return x.p
            return None
    return None


# ---------------------------------------------------------------------------
# component splitting


def column_components(rows: Sequence[dict], ncols: int) -> list[tuple[list[int], list[int]]]:
    """Group columns that interact through some row.

    Returns ``(columns, row_indices)`` pairs; columns touched by no row form
    singleton components with no rows.  Output is sorted by smallest column.
    """
    parent = list(range(ncols))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for r in rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        ra = find(first)
        for c in it:
            rc = find(c)
            if rc != ra:
                parent[rc] = ra
    cols_of: dict[int, list[int]] = {}
    for c in range(ncols):
        cols_of.setdefault(find(c), []).append(c)
    rows_of: dict[int, list[int]] = {}
    for i, r in enumerate(rows):
        if r:
            rows_of.setdefault(find(next(iter(r))), []).append(i)
    comps = [(cols, rows_of.get(root, [])) for root, cols in cols_of.items()]
    comps.sort(key=lambda t: t[0][0])
    return comps


# ---------------------------------------------------------------------------
# fraction-free triangularisation


def _integer_row(r: dict) -> dict[int, int]:
    den = 1
    for x in r.values():
        d = x.denominator
        den = den * d // gcd(den, d)
    out = {c: int(x * den) for c, x in r.items()}
    return _primitive(out)


def _primitive(r: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in r.values():
        g = gcd(g, x)
        if g == 1:
            return r
    if g > 1:
        return {c: x // g for c, x in r.items()}
    return r


def _triangularize(rows: list[dict[int, int]], p: int | None) -> list[tuple[int, dict[int, int]]]:
    """Forward elimination; returns pivot rows in insertion order.

    Every stored row is reduced against all earlier pivot rows, so it only
    contains its own pivot, free columns and pivot columns of later rows.
    Over Q rows are integer and kept primitive (fraction-free update
    ``r <- a*r - b*prow``); over GF(p) pivots are normalised to 1.
    """
    order: list[tuple[int, dict[int, int]]] = []
    where: dict[int, int] = {}
    for row in rows:
        r = dict(row)
        heap = [where[c] for c in r if c in where]
        heapify(heap)
        seen = set(heap)
        while heap:
            idx = heappop(heap)
            col, prow = order[idx]
            b = r.get(col)
            if not b:
                continue
            if p is None:
                a = prow[col]
                g = gcd(a, b)
                a, b = a // g, b // g
                if a != 1:
                    for c in r:
                        r[c] *= a
            for c, x in prow.items():
                v = r.get(c, 0) - b * x
                if p is not None:
                    v %= p
                if v:
                    r[c] = v
                    k = where.get(c)
                    if k is not None and k > idx and k not in seen:
                        seen.add(k)
                        heappush(heap, k)
                else:
                    r.pop(c, None)
        if not r:
            continue
        col = min(r)
        if p is None:
            r = _primitive(r)
            if r[col] < 0:
                r = {c: -x for c, x in r.items()}
        else:
            inv = pow(r[col], -1, p)
            r = {c: x * inv % p for c, x in r.items()}
        where[col] = len(order)
        order.append((col, r))
    return order


def _back_substitute(order, cols: Sequence[int], p: int | None) -> list[dict]:
    """Nullspace vectors (as sparse dicts of Fraction or int residues)."""
    pivots = {c for c, _ in order}
    free = [c for c in cols if c not in pivots]
    out = []
    for f in free:
        x: dict[int, object] = {f: 1}
        for col, prow in reversed(order):
            s = 0
            for c, a in prow.items():
                if c != col:
                    v = x.get(c)
                    if v:
                        s += a * v
            if s:
                if p is None:
                    x[col] = Fraction(-s, prow[col]) if not isinstance(s, Fraction) else -s / prow[col]
                else:
                    x[col] = -s % p
                    if not x[col]:
                        del x[col]
        out.append(x)
    return out


def _rref_vectors(vecs: list[dict], p: int | None) -> list[dict]:
    """Reduced row echelon form of a small set of sparse vectors."""
    rows = []
    for v in vecs:
        r = {c: x for c, x in v.items() if x}
        for pc, prow in rows:
            a = r.get(pc)
            if a:
                for c, x in prow.items():
                    nv = r.get(c, 0) - a * x
                    if p is not None:
                        nv %= p
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = (1 / Fraction(r[pc])) if p is None else pow(r[pc], -1, p)
        r = {c: (x * inv if p is None else x * inv % p) for c, x in r.items()}
        for i, (qc, qrow) in enumerate(rows):
            a = qrow.get(pc)
            if a:
                for c, x in r.items():
                    nv = qrow.get(c, 0) - a * x
                    if p is not None:
                        nv %= p
                    if nv:
                        qrow[c] = nv
                    else:
                        qrow.pop(c, None)
        rows.append((pc, r))
    rows.sort(key=lambda t: t[0])
    return [r for _, r in rows]


def _prepare(m: SparseMatrix) -> tuple[list[dict[int, int]], int | None]:
    rows = m.nonzero_rows()
    p = _detect_modulus(rows)
    if p is None:
        conv = [_integer_row({c: Fraction(x) for c, x in r.items() if x}) for r in rows]
    else:
        conv = [{c: int(x) % p for c, x in r.items() if int(x) % p} for r in rows]
    return [r for r in conv if r], p


def _solve_components(m: SparseMatrix):
    rows, p = _prepare(m)
    comps = column_components(rows, m.ncols)
    results = []
    for cols, ridx in comps:
        sub = [rows[i] for i in ridx]
        # short rows first: unit equations collapse columns before fill-in starts
        sub.sort(key=lambda r: (len(r), min(r)))
        order = _triangularize(sub, p)
        results.append((cols, order))
    return results, p


def _wrap(vec: dict, p: int | None, field: FieldDescriptor | None):
    if p is None:
        return {c: Fraction(x) for c, x in vec.items()}
    return {c: Mod(int(x), p) for c, x in vec.items()}


def nullspace_sparse(m, field: FieldDescriptor | None = None) -> list[dict]:
    """Canonical nullspace basis as sparse dicts (RREF of the solution space)."""
    m = _as_sparse(m)
    comps, p = _solve_components(m)
    basis = []
    for cols, order in comps:
        vecs = _back_substitute(order, cols, p)
        basis.extend(_rref_vectors(vecs, p))
    basis.sort(key=lambda v: min(v))
    return [_wrap(v, p, field) for v in basis]


def nullspace_exact(m, field: FieldDescriptor | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}`` as dense vectors.

    Vectors are the rows of the reduced echelon form of the solution space:
    first nonzero coordinate is 1, sorted by that coordinate.
    """
    m = _as_sparse(m)
    zero = _zero_for(m, field)
    out = []
    for v in nullspace_sparse(m, field):
        row = [zero] * m.ncols
        for c, x in v.items():
            row[c] = x
        out.append(row)
    return out


def rank_exact(m) -> int:
    m = _as_sparse(m)
    comps, _ = _solve_components(m)
    return sum(len(order) for _, order in comps)


def _zero_for(m: SparseMatrix, field: FieldDescriptor | None):
    if field is not None:
        return field.zero
    p = _detect_modulus(m.rows)
    return Mod(0, p) if p else Fraction(0)


# ---------------------------------------------------------------------------
# oracle


def oracle_nullspace(m, field: FieldDescriptor | None = None) -> list[list]:
    """Independent textbook Gauss-Jordan; for cross-validation only.

    Rows are consumed in their given order, scalars stay in the field
    (Fraction or Mod), and the reduced form is maintained after every pivot.
    """
    m = _as_sparse(m)
    if field is None:
        p = _detect_modulus(m.rows)
        one = Mod(1, p) if p else Fraction(1)
    else:
        one = field.one
    zero = one - one
    piv_rows: dict[int, dict] = {}
    col_users: dict[int, set[int]] = {}
    for r0 in m.rows:
        r = {c: one * x for c, x in r0.items() if x}
        for c in sorted(k for k in r if k in piv_rows):
            a = r.get(c)
            if not a:
                continue
            for cc, x in piv_rows[c].items():
                nv = r.get(cc, zero) - a * x
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        pc = min(r)
        inv = one / r[pc]
        r = {c: x * inv for c, x in r.items()}
        for pcol in list(col_users.get(pc, ())):
            q = piv_rows[pcol]
            a = q.get(pc)
            if not a:
                continue
            for cc, x in r.items():
                nv = q.get(cc, zero) - a * x
                if nv:
                    if cc not in q:
                        col_users.setdefault(cc, set()).add(pcol)
                    q[cc] = nv
                else:
                    q.pop(cc, None)
                    col_users.get(cc, set()).discard(pcol)
        piv_rows[pc] = r
        for cc in r:
            if cc != pc:
                col_users.setdefault(cc, set()).add(pc)
    free = [c for c in range(m.ncols) if c not in piv_rows]
    basis = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for pc, r in piv_rows.items():
            a = r.get(f)
            if a:
                v[pc] = -a
        basis.append(v)
    return basis


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """Do two lists of vectors span the same subspace?"""
    ra = rref_dense(a)
    rb = rref_dense(b)
    return ra == rb


def rref_dense(vecs: Sequence[Sequence]) -> list[list]:
    if not vecs:
        return []
    p = None
    for v in vecs:
        for x in v:
            if isinstance(x, Mod):
                p = x.p
                break
        if p:
            break
    sparse = []
    for v in vecs:
        if p is None:
            sparse.append({i: Fraction(x) for i, x in enumerate(v) if x})
        else:
            sparse.append({i: int(x) % p for i, x in enumerate(v) if int(x) % p})
    n = len(vecs[0])
    out = []
    for r in _rref_vectors(sparse, p):
        row = [Fraction(0) if p is None else Mod(0, p)] * n
        for c, x in r.items():
            row[c] = Fraction(x) if p is None else Mod(int(x), p)
        out.append(row)
    return out


def solve_in_span(basis: Sequence[Sequence], target: Sequence):
    """Coefficients expressing ``target`` in ``basis``, or None if outside."""
    if not basis:
        return [] if not any(target) else None
    n = len(basis)
    # columns = basis vectors, augmented with -target
    rows = []
    for i in range(len(target)):
        row = {j: basis[j][i] for j in range(n) if basis[j][i]}
        if target[i]:
            row[n] = -target[i]
        if row:
            rows.append(row)
    ker = nullspace_sparse(SparseMatrix(len(rows), n + 1, rows))
    for v in ker:
        t = v.get(n)
        if t:
            return [v.get(j, 0 * t) / t for j in range(n)]
    return None


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[sum((x * y for x, y in zip(row, col)), start=0 * row[0]) for col in zip(*b)] for row in a]


def identity(n: int, one=Fraction(1)) -> list[list]:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


__all__ = [
    "QQ",
    "SparseMatrix",
    "column_components",
    "identity",
    "matmul",
    "nullspace_exact",
    "nullspace_sparse",
    "oracle_nullspace",
    "rank_exact",
    "rref_dense",
    "solve_in_span",
    "span_equal",
]
