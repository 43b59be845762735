"""Finite-dimensional superalgebras given by structure constants.

The product of basis elements ``i`` and ``j`` is ``sum_k c[i][j][k] b_k``;
constants are stored sparsely as ``{(i, j): {k: c}}`` with zeros dropped.
Parities are 0 (even) / 1 (odd); an ungraded algebra is all-even.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .exactnum import QQ, FieldDescriptor
from .linalg import SparseMatrix, nullspace_sparse


class AlgebraError(ValueError):
    pass


class GradingViolation(AlgebraError):
    def __init__(self, i, j, k):
        super().__init__(f"b{i}*b{j} has a component on b{k} of the wrong parity")
        self.triple = (i, j, k)


class AlgebraMismatch(AlgebraError):
    pass


class FieldMismatch(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    def __init__(self, i, j, k):
        super().__init__(f"(b{i}b{j})b{k} != b{i}(b{j}b{k})")
        self.triple = (i, j, k)


class NotClosedUnderProduct(AlgebraError):
    def __init__(self, a, b):
        super().__init__(f"product of fixed basis vectors {a}, {b} leaves the subspace")
        self.pair = (a, b)


class InvolutionError(AlgebraError):
    pass


class Superalgebra:
    """Immutable structure-constant superalgebra.  Build with :func:`build_superalgebra`."""

    def __init__(self, name, field, parity, constants, labels, meta=None):
        self.name = name
        self.field = field
        self.parity = tuple(parity)
        self.dim = len(self.parity)
        self.constants = constants
        self.labels = tuple(labels)
        self.meta = dict(meta or {})

    # elements -------------------------------------------------------------
    def element(self, coords) -> "Element":
        if isinstance(coords, Mapping):
            c = [self.field.zero] * self.dim
            for k, v in coords.items():
                c[self.index(k) if isinstance(k, str) else k] = self.field(v)
            return Element(self, c)
        return Element(self, [self.field(x) for x in coords])

    def basis(self, i) -> "Element":
        if isinstance(i, str):
            i = self.index(i)
        c = [self.field.zero] * self.dim
        c[i] = self.field.one
        return Element(self, c)

    def zero(self) -> "Element":
        return Element(self, [self.field.zero] * self.dim)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{self.name} has no basis element {label!r}") from None

    def product(self, i: int, j: int) -> dict:
        return self.constants.get((i, j), {})

    @property
    def is_plain(self) -> bool:
        return not any(self.parity)

    @property
    def even_dim(self) -> int:
        return self.parity.count(0)

    @property
    def odd_dim(self) -> int:
        return self.parity.count(1)

    def with_constants(self, constants, name=None) -> "Superalgebra":
        return build_superalgebra(self.field, self.parity, constants, self.labels,
                                  name=name or self.name, meta=self.meta)

    def change_field(self, field: FieldDescriptor) -> "Superalgebra":
        if self.field != QQ:
            raise FieldMismatch("only algebras over Q can be reduced to another field")
        consts = {key: {k: field(v) for k, v in row.items()} for key, row in self.constants.items()}
        return build_superalgebra(field, self.parity, consts, self.labels, name=self.name, meta=self.meta)

    def __eq__(self, other):
        if not isinstance(other, Superalgebra):
            return NotImplemented
        return (self.field == other.field and self.parity == other.parity
                and self.labels == other.labels and self.constants == other.constants)

    def __hash__(self):
        return hash((self.name, self.dim))

    def __repr__(self):
        return f"<Superalgebra {self.name} dim={self.dim} ({self.even_dim}|{self.odd_dim}) over {self.field!r}>"


class Element:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Superalgebra, coords: Sequence):
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra and (
            other.algebra.dim != self.algebra.dim or other.algebra.field != self.algebra.field
            or other.algebra.constants != self.algebra.constants
        ):
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        s = self.algebra.field(other)
        return Element(self.algebra, [s * a for a in self.coords])

    def __rmul__(self, other):
        s = self.algebra.field(other)
        return Element(self.algebra, [s * a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.algebra.dim == other.algebra.dim and self.coords == other.coords
        if other == 0:
            return not any(self.coords)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def support(self) -> dict[int, object]:
        return {i: x for i, x in enumerate(self.coords) if x}

    def parities(self) -> set[int]:
        return {self.algebra.parity[i] for i in self.support()}

    def __repr__(self):
        return format_combination(self.support(), self.algebra.labels, self.algebra.field)


def format_combination(coeffs: Mapping[int, object], labels: Sequence[str], field=QQ) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in sorted(coeffs):
        c = coeffs[i]
        s = field.format(c)
        if s == "1":
            parts.append(f"+{labels[i]}")
        elif s == "-1":
            parts.append(f"-{labels[i]}")
        elif s.startswith("-"):
            parts.append(f"{s}*{labels[i]}")
        else:
            parts.append(f"+{s}*{labels[i]}")
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def build_superalgebra(field: FieldDescriptor, parities: Sequence[int], constants,
                       labels: Sequence[str] | None = None, name: str = "", meta=None) -> Superalgebra:
    """Validate and freeze a structure-constant table.

    ``constants`` is either ``{(i, j): {k: c}}`` or an iterable of
    ``(i, j, k, c)`` quadruples (repeated keys accumulate).
    """
    parity = tuple(int(p) for p in parities)
    if any(p not in (0, 1) for p in parity):
        raise AlgebraError("parities must be 0 or 1")
    n = len(parity)
    if n == 0:
        raise AlgebraError("dimension must be positive")
    labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(n))
    if len(labels) != n:
        raise AlgebraError(f"{len(labels)} labels for dimension {n}")
    if len(set(labels)) != n:
        raise AlgebraError("basis labels must be distinct")
    acc: dict[tuple[int, int], dict[int, object]] = {}
    items: Iterable
    if isinstance(constants, Mapping):
        items = ((i, j, k, c) for (i, j), row in constants.items() for k, c in row.items())
    else:
        items = constants
    for i, j, k, c in items:
        for idx in (i, j, k):
            if not (isinstance(idx, int) and 0 <= idx < n):
                raise AlgebraError(f"index {idx!r} out of range for dimension {n}")
        row = acc.setdefault((i, j), {})
        row[k] = row.get(k, field.zero) + field(c)
    clean = {}
    for (i, j), row in sorted(acc.items()):
        row = {k: c for k, c in sorted(row.items()) if c}
        for k in row:
            if parity[k] != parity[i] ^ parity[j]:
                raise GradingViolation(i, j, k)
        if row:
            clean[(i, j)] = row
    return Superalgebra(name, field, parity, clean, labels, meta)


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    A = a.algebra
    zero = A.field.zero
    out = [zero] * A.dim
    bs = [(j, y) for j, y in enumerate(b.coords) if y]
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in bs:
            row = A.constants.get((i, j))
            if row:
                xy = x * y
                for k, c in row.items():
                    out[k] += xy * c
    return Element(A, out)


def mul_vectors(A: Superalgebra, u: Mapping[int, object], v: Mapping[int, object]) -> dict[int, object]:
    """Product of two sparse coordinate dicts; the sparse twin of :func:`multiply`."""
    out: dict[int, object] = {}
    for i, x in u.items():
        for j, y in v.items():
            row = A.constants.get((i, j))
            if row:
                xy = x * y
                for k, c in row.items():
                    s = out.get(k)
                    out[k] = xy * c if s is None else s + xy * c
    return {k: c for k, c in out.items() if c}


def direct_sum(*algebras: Superalgebra, name: str | None = None) -> Superalgebra:
    """Block-diagonal sum; ``meta['blocks']`` records the simple-summand ranges."""
    if len(algebras) < 2:
        raise AlgebraError("direct_sum needs at least two summands")
    field = algebras[0].field
    for B in algebras[1:]:
        if B.field != field:
            raise FieldMismatch(f"{algebras[0].name} over {field!r}, {B.name} over {B.field!r}")
    parity, labels, consts, blocks = [], [], {}, []
    off = 0
    for s, B in enumerate(algebras, start=1):
        parity.extend(B.parity)
        labels.extend(f"{s}:{lab}" for lab in B.labels)
        for (i, j), row in B.constants.items():
            consts[(i + off, j + off)] = {k + off: c for k, c in row.items()}
        for lo, hi in B.meta.get("blocks", [(0, B.dim)]):
            blocks.append((lo + off, hi + off))
        off += B.dim
    name = name or " + ".join(B.name for B in algebras)
    return build_superalgebra(field, parity, consts, labels, name=name, meta={"blocks": blocks})


def find_unit(A: Superalgebra) -> Element | None:
    """Solve ``e b_i = b_i = b_i e`` for all basis elements."""
    n = A.dim
    F = A.field
    rows = []
    # unknowns e_0..e_{n-1}, column n carries the right-hand side
    for i in range(n):
        for side in (0, 1):
            eqs: dict[int, dict[int, object]] = {k: {} for k in range(n)}
            for m in range(n):
                row = A.product(m, i) if side == 0 else A.product(i, m)
                for k, c in row.items():
                    eqs[k][m] = eqs[k].get(m, F.zero) + c
            for k in range(n):
                r = {m: c for m, c in eqs[k].items() if c}
                if k == i:
                    r[n] = -F.one
                if r:
                    rows.append(r)
    ker = nullspace_sparse(SparseMatrix(len(rows), n + 1, rows))
    for v in ker:
        t = v.get(n)
        if t:
            return Element(A, [F(v.get(m, 0)) / t for m in range(n)])
    return None


def square_span(A: Superalgebra) -> list[list]:
    """Row-reduced basis of A^2 as dense coordinate vectors."""
    from .linalg import rref_dense

    vecs = []
    for row in A.constants.values():
        v = [A.field.zero] * A.dim
        for k, c in row.items():
            v[k] = c
        vecs.append(v)
    return rref_dense(vecs) if vecs else []


def is_associative(A: Superalgebra):
    """Return the first failing basis triple, or None."""
    n = A.dim
    for i in range(n):
        for j in range(n):
            ij = A.product(i, j)
            for k in range(n):
                left = mul_vectors(A, ij, {k: A.field.one})
                right = mul_vectors(A, {i: A.field.one}, A.product(j, k))
                if left != right:
                    return (i, j, k)
    return None


def plus_construction(A: Superalgebra, name: str | None = None, check: bool = True) -> Superalgebra:
    """Jordan superalgebra A^(+) with a o b = 1/2 (ab + (-1)^{p(a)p(b)} ba)."""
    if check:
        bad = is_associative(A)
        if bad is not None:
            raise NotAssociative(*bad)
    F = A.field
    half = F(1) / F(2)
    consts: dict[tuple[int, int], dict[int, object]] = {}
    for i in range(A.dim):
        for j in range(A.dim):
            sign = -1 if A.parity[i] and A.parity[j] else 1
            row: dict[int, object] = {}
            for k, c in A.product(i, j).items():
                row[k] = row.get(k, F.zero) + half * c
            for k, c in A.product(j, i).items():
                row[k] = row.get(k, F.zero) + half * sign * c
            if row:
                consts[(i, j)] = row
    meta = {k: v for k, v in A.meta.items() if k != "associative"}
    return build_superalgebra(F, A.parity, consts, A.labels, name=name or f"{A.name}^(+)", meta=meta)


class Involution:
    """Linear map given by images of basis vectors; ``matrix[k][m]`` is coordinate k of j(b_m)."""

    def __init__(self, algebra: Superalgebra, matrix: Sequence[Sequence]):
        F = algebra.field
        self.algebra = algebra
        self.matrix = [[F(x) for x in row] for row in matrix]
        n = algebra.dim
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise InvolutionError("involution matrix has the wrong shape")

    @classmethod
    def from_images(cls, algebra: Superalgebra, images: Sequence[Mapping[int, object]]):
        n = algebra.dim
        F = algebra.field
        m = [[F.zero] * n for _ in range(n)]
        for col, img in enumerate(images):
            for k, c in img.items():
                m[k][col] = F(c)
        return cls(algebra, m)

    def image(self, m: int) -> dict[int, object]:
        return {k: self.matrix[k][m] for k in range(self.algebra.dim) if self.matrix[k][m]}

    def apply(self, v: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for m, x in v.items():
            for k in range(self.algebra.dim):
                c = self.matrix[k][m]
                if c:
                    out[k] = out.get(k, 0) + c * x
        return {k: c for k, c in out.items() if c}

    def is_involutive(self) -> bool:
        n = self.algebra.dim
        for m in range(n):
            if self.apply(self.image(m)) != {m: self.algebra.field.one}:
                return False
        return True

    def superinvolution_failure(self):
        """First basis pair violating j(ab) = (-1)^{p(a)p(b)} j(b) j(a), or None."""
        A = self.algebra
        for a in range(A.dim):
            ja = self.image(a)
            for b in range(A.dim):
                lhs = self.apply(A.product(a, b))
                rhs = mul_vectors(A, self.image(b), ja)
                if A.parity[a] and A.parity[b]:
                    rhs = {k: -c for k, c in rhs.items()}
                if lhs != rhs:
                    return (a, b)
        return None


def combination_label(vec: Mapping[int, object], labels: Sequence[str], field=QQ) -> str:
    return format_combination(vec, labels, field).replace("*", "")


def hermitian_subalgebra(A: Superalgebra, j: Involution, name: str | None = None,
                         labels: Sequence[str] | None = None) -> Superalgebra:
    """H(A, j): the j-fixed points of the associative A, as a subalgebra of A^(+).

    The basis is the reduced echelon basis of the fixed space, even vectors
    first.  ``meta['embedding']`` keeps each basis vector in A's coordinates.
    """
    if j.algebra is not A:
        raise InvolutionError("involution belongs to a different algebra")
    if not j.is_involutive():
        raise InvolutionError("j o j is not the identity")
    for m in range(A.dim):
        if any(A.parity[k] != A.parity[m] for k in j.image(m)):
            raise InvolutionError(f"j does not preserve the parity of {A.labels[m]}")
    bad = j.superinvolution_failure()
    if bad is not None:
        raise InvolutionError(f"j is not a superinvolution on ({A.labels[bad[0]]}, {A.labels[bad[1]]})")
    Ap = plus_construction(A)
    F = A.field
    n = A.dim
    rows = []
    for k in range(n):
        r = {m: j.matrix[k][m] for m in range(n) if j.matrix[k][m]}
        r[k] = r.get(k, F.zero) - F.one
        r = {m: c for m, c in r.items() if c}
        if r:
            rows.append(r)
    fixed = nullspace_sparse(SparseMatrix(len(rows), n, rows), F)
    fixed = [{k: F(c) for k, c in v.items()} for v in fixed]
    par = []
    for v in fixed:
        ps = {A.parity[k] for k in v}
        if len(ps) != 1:
            raise InvolutionError("fixed space is not graded")
        par.append(ps.pop())
    order = sorted(range(len(fixed)), key=lambda t: (par[t], min(fixed[t])))
    fixed = [fixed[t] for t in order]
    par = [par[t] for t in order]
    pivots = [min(v) for v in fixed]
    consts = {}
    for a, va in enumerate(fixed):
        for b, vb in enumerate(fixed):
            w = mul_vectors(Ap, va, vb)
            coords = {t: w[pc] for t, pc in enumerate(pivots) if pc in w}
            back: dict[int, object] = {}
            for t, c in coords.items():
                for k, x in fixed[t].items():
                    back[k] = back.get(k, F.zero) + c * x
            back = {k: c for k, c in back.items() if c}
            if back != w:
                raise NotClosedUnderProduct(a, b)
            if coords:
                consts[(a, b)] = coords
    if labels is None:
        labels = [combination_label(v, A.labels, F) for v in fixed]
    meta = {"embedding": fixed, "ambient": Ap}
    return build_superalgebra(F, par, consts, labels, name=name or f"H({A.name})", meta=meta)


def from_ambient(H: Superalgebra, ambient: Mapping[int, object]) -> Element:
    """Coordinates in H of an element given in the ambient algebra's basis."""
    emb = H.meta.get("embedding")
    if emb is None:
        raise AlgebraError(f"{H.name} carries no embedding")
    F = H.field
    pivots = [min(v) for v in emb]
    coords = [F(ambient.get(pc, 0)) for pc in pivots]
    back: dict[int, object] = {}
    for t, c in enumerate(coords):
        for k, x in emb[t].items():
            back[k] = back.get(k, F.zero) + c * x
    back = {k: c for k, c in back.items() if c}
    if back != {k: F(c) for k, c in ambient.items() if c}:
        raise AlgebraError("element does not lie in the subalgebra")
    return Element(H, coords)
