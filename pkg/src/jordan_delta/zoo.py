"""Constructors for the simple Jordan algebras and superalgebras at desk-scale parameters."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping

from .algebra import (Involution, Superalgebra, build_superalgebra, direct_sum, find_unit,
                      hermitian_subalgebra, plus_construction)
from .exactnum import QQ, CharacteristicError, FieldDescriptor
from .grassmann import j_gamma as _j_gamma


class ZooParameterError(ValueError):
    pass


class OctonionDimensionError(ZooParameterError):
    pass


class K10ConflictError(ValueError):
    def __init__(self, key, old, new):
        super().__init__(f"K10 closure assigns two values to {key}: {old} and {new}")
        self.key = key


# ---------------------------------------------------------------------------
# composition algebras


@dataclass
class CompositionAlgebra:
    kind: str
    algebra: Superalgebra
    involution: Involution

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def unit(self) -> dict[int, object]:
        return self.algebra.meta["unit"]

    def conj(self, v: Mapping[int, object]) -> dict[int, object]:
        return self.involution.apply(v)


COMPOSITION_KINDS = ("ground_field", "split_binarion", "split_quaternion", "split_octonion")
_KIND_ALIASES = {"F": "ground_field", "B": "split_binarion", "H": "split_quaternion", "O": "split_octonion",
                 "ground": "ground_field", "binarion": "split_binarion", "quaternion": "split_quaternion",
                 "octonion": "split_octonion"}


def _kind(kind: str) -> str:
    k = _KIND_ALIASES.get(kind, kind)
    if k not in COMPOSITION_KINDS:
        raise ZooParameterError(f"unknown composition algebra {kind!r}")
    return k


def _zorn_tables():
    # Zorn vector matrices [[a, x], [y, b]], a, b scalars, x, y in F^3:
    # [[a,x],[y,b]] [[a',x'],[y',b']] =
    #   [[aa' + x.y', a x' + b' x - y cross y'], [a' y + b y' + x cross x', bb' + y.x']]
    labels = ["a", "b", "x1", "x2", "x3", "y1", "y2", "y3"]
    A, B = 0, 1
    X = [2, 3, 4]
    Y = [5, 6, 7]
    consts = []
    consts += [(A, A, A, 1), (B, B, B, 1)]
    for i in range(3):
        consts += [(A, X[i], X[i], 1), (X[i], B, X[i], 1),
                   (Y[i], A, Y[i], 1), (B, Y[i], Y[i], 1),
                   (X[i], Y[i], A, 1), (Y[i], X[i], B, 1)]
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        # e_i x e_j = e_k for cyclic (i, j, k)
        consts += [(Y[i], Y[j], X[k], -1), (Y[j], Y[i], X[k], 1),
                   (X[i], X[j], Y[k], 1), (X[j], X[i], Y[k], -1)]
    conj = [{B: 1}, {A: 1}] + [{X[i]: -1} for i in range(3)] + [{Y[i]: -1} for i in range(3)]
    return labels, consts, conj, {A: 1, B: 1}


def composition_algebra(kind: str, field: FieldDescriptor = QQ) -> CompositionAlgebra:
    """Split composition algebra with its canonical involution (dims 1, 2, 4, 8)."""
    kind = _kind(kind)
    if kind == "ground_field":
        labels, consts, conj, unit = ["1"], [(0, 0, 0, 1)], [{0: 1}], {0: 1}
    elif kind == "split_binarion":
        labels, consts, conj, unit = ["p1", "p2"], [(0, 0, 0, 1), (1, 1, 1, 1)], [{1: 1}, {0: 1}], {0: 1, 1: 1}
    elif kind == "split_quaternion":
        labels = ["q11", "q12", "q21", "q22"]
        consts = []
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    for d in range(2):
                        if b == c:
                            consts.append((2 * a + b, 2 * c + d, 2 * a + d, 1))
        # symplectic involution: conj(a) = tr(a) 1 - a, i.e. the adjugate
        conj = [{3: 1}, {1: -1}, {2: -1}, {0: 1}]
        unit = {0: 1, 3: 1}
    else:
        labels, consts, conj, unit = _zorn_tables()
    alg = build_superalgebra(field, [0] * len(labels), consts, labels, name=kind,
                             meta={"unit": {k: field(v) for k, v in unit.items()}})
    return CompositionAlgebra(kind, alg, Involution.from_images(alg, conj))


# ---------------------------------------------------------------------------
# matrix algebras


def _eij(i: int, j: int, size: int) -> str:
    return f"e{i}{j}" if size < 10 else f"e{i},{j}"


def matrix_superalgebra(m: int, n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    """Associative M_{m,n}(F): (m+n)x(m+n) matrix units, row-major; e_ij odd iff exactly one of i, j > m."""
    size = m + n
    idx = lambda i, j: i * size + j  # noqa: E731
    consts = []
    for i in range(size):
        for j in range(size):
            for k in range(size):
                consts.append((idx(i, j), idx(j, k), idx(i, k), 1))
    parity = [int((i < m) != (j < m)) for i in range(size) for j in range(size)]
    labels = [_eij(i + 1, j + 1, size) for i in range(size) for j in range(size)]
    return build_superalgebra(field, parity, consts, labels, name=f"M({m},{n})",
                              meta={"associative": True, "size": size, "split": m})


def _matrix_span_algebra(size, mats, parity, labels, field, name, **meta):
    """Associative algebra spanned by the given sparse matrices ``{(r, c): x}``."""
    pivots = []
    for t, M in enumerate(mats):
        piv = min(M)
        for s, N in enumerate(mats):
            if s != t and piv in N:
                raise ValueError("basis matrices do not have separated pivots")
        pivots.append(piv)

    def mul(P, Q):
        out = {}
        for (r, c), x in P.items():
            for (r2, c2), y in Q.items():
                if c == r2:
                    out[(r, c2)] = out.get((r, c2), 0) + x * y
        return {k: v for k, v in out.items() if v}

    consts = []
    for a, P in enumerate(mats):
        for b, Q in enumerate(mats):
            prod = mul(P, Q)
            coords = {t: Fraction(prod[pv]) / mats[t][pv] for t, pv in enumerate(pivots) if pv in prod}
            back = {}
            for t, c in coords.items():
                for key, x in mats[t].items():
                    back[key] = back.get(key, 0) + c * x
            if {k: v for k, v in back.items() if v} != prod:
                raise ValueError(f"{name}: span not closed under multiplication")
            for t, c in coords.items():
                consts.append((a, b, t, c))
    return build_superalgebra(field, parity, consts, labels, name=name,
                              meta={"associative": True, "size": size, "matrices": mats, **meta})


def queer_superalgebra(n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    """Associative Q(n): Delta_{i,j} = e_ij + e_{n+i,n+j} (even), Delta^{i,j} = e_{n+i,j} + e_{i,n+j} (odd)."""
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            mats.append({(i, j): 1, (n + i, n + j): 1})
            labels.append(f"D_{i + 1}{j + 1}")
    for i in range(n):
        for j in range(n):
            mats.append({(n + i, j): 1, (i, n + j): 1})
            labels.append(f"D^{i + 1}{j + 1}")
    parity = [0] * (n * n) + [1] * (n * n)
    return _matrix_span_algebra(2 * n, mats, parity, labels, field, f"Q({n})", n=n)


def full_matrix_super(m: int, n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if m < 1 or n < 1:
        raise ZooParameterError("M_{m,n}: need m >= 1 and n >= 1")
    A = plus_construction(matrix_superalgebra(m, n, field), name=f"M({m},{n})+")
    return A


def q_super(n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if n < 2:
        raise ZooParameterError("Q(n)^(+) needs n >= 2")
    return plus_construction(queer_superalgebra(n, field), name=f"Q({n})+")


def _block_images(M: Superalgebra, fn) -> Involution:
    """Involution of a matrix algebra from a rule on matrix units.

    ``fn(i, j)`` returns ``{(r, c): coeff}``, the image of e_ij (0-based).
    """
    size = M.meta["size"]
    images = []
    for i in range(size):
        for j in range(size):
            images.append({r * size + c: x for (r, c), x in fn(i, j).items()})
    return Involution.from_images(M, images)


def osp_involution(n: int, m: int, M: Superalgebra) -> Involution:
    """X = [[A, B], [C, D]] -> [[A^T, -C^T Q], [Q^-1 B^T, Q^-1 D^T Q]], Q = [[0, E_m], [-E_m, 0]].

    Its fixed points are A^T = A, C = Q^-1 B^T, D = Q^-1 D^T Q.
    """
    # Q e_k = -e_{k+m} for k < m, Q e_{k+m} = e_k; Q^-1 = -Q
    def Qmat(r, c):
        if r < m and c == r + m:
            return 1
        if r >= m and c == r - m:
            return -1
        return 0

    def Qinv(r, c):
        return -Qmat(r, c)

    size = n + 2 * m

    def img(i, j):
        out = {}
        if i < n and j < n:                       # A block: transpose
            out[(j, i)] = 1
        elif i < n <= j:                          # B block entry B[i, j'] -> Q^-1 B^T in C block
            jj = j - n
            for r in range(2 * m):
                x = Qinv(r, jj)
                if x:
                    out[(n + r, i)] = x
        elif j < n <= i:                          # C block entry C[i', j] -> -C^T Q in B block
            ii = i - n
            for c in range(2 * m):
                x = Qmat(ii, c)
                if x:
                    out[(j, n + c)] = -x
        else:                                     # D block: Q^-1 D^T Q
            ii, jj = i - n, j - n
            for r in range(2 * m):
                a = Qinv(r, jj)
                if not a:
                    continue
                for c in range(2 * m):
                    b = Qmat(ii, c)
                    if b:
                        out[(n + r, n + c)] = out.get((n + r, n + c), 0) + a * b
        assert all(0 <= r < size and 0 <= c < size for r, c in out)
        return out

    return _block_images(M, img)


def osp(n: int, m: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if n < 1 or m < 1:
        raise ZooParameterError("osp(n,m) needs n >= 1 and m >= 1")
    M = matrix_superalgebra(n, 2 * m, field)
    return hermitian_subalgebra(M, osp_involution(n, m, M), name=f"osp({n},{m})")


def p_involution(n: int, M: Superalgebra) -> Involution:
    """[[A, B], [C, D]] -> [[D^T, -B^T], [C^T, A^T]]; fixed points B^T = -B, C^T = C, D = A^T."""
    def img(i, j):
        if i < n and j < n:
            return {(n + j, n + i): 1}
        if i >= n and j >= n:
            return {(j - n, i - n): 1}
        if i < n <= j:
            return {(j - n, n + i): -1}
        return {(n + j, i - n): 1}
    return _block_images(M, img)


def p_super(n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if n < 2:
        raise ZooParameterError("P(n) needs n >= 2")
    M = matrix_superalgebra(n, n, field)
    return hermitian_subalgebra(M, p_involution(n, M), name=f"P({n})")


# ---------------------------------------------------------------------------
# hermitian matrices over composition algebras


def matrix_algebra_over(D: CompositionAlgebra, n: int) -> tuple[Superalgebra, Involution]:
    """D_n = M_n(F) (x) D with the conjugate-transpose involution (associative D only)."""
    d = D.dim
    F = D.algebra.field
    idx = lambda i, j, a: (i * n + j) * d + a  # noqa: E731
    consts = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for a in range(d):
                    for b in range(d):
                        for c, x in D.algebra.product(a, b).items():
                            consts.append((idx(i, j, a), idx(j, k, b), idx(i, k, c), x))
    labels = [f"{D.algebra.labels[a]}_{i + 1}{j + 1}" for i in range(n) for j in range(n) for a in range(d)]
    A = build_superalgebra(F, [0] * (n * n * d), consts, labels, name=f"{D.kind}_{n}",
                           meta={"associative": True})
    images = []
    for i in range(n):
        for j in range(n):
            for a in range(d):
                images.append({idx(j, i, c): x for c, x in D.involution.image(a).items()})
    return A, Involution.from_images(A, images)


_KIND_LETTER = {"ground_field": "F", "split_binarion": "B", "split_quaternion": "H", "split_octonion": "O"}


def hermitian_matrix_algebra(kind: str, n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    """H(D_n, J) with J(X) = entrywise-conjugate transpose and X o Y = (XY + YX)/2.

    Computed directly from D's table, which also covers the non-associative
    octonions (allowed only for n = 3).  Basis: E_ii, then d E_ij + conj(d) E_ji
    for i < j and d running over D's basis.
    """
    kind = _kind(kind)
    if n < 3:
        raise ZooParameterError("H(D_n) needs n >= 3")
    if kind == "split_octonion" and n > 3:
        raise OctonionDimensionError("octonion hermitian matrices are Jordan only for n = 3")
    D = composition_algebra(kind, field)
    Dalg = D.algebra
    d = D.dim
    F = field
    unit = D.unit()
    half = F(1) / F(2)
    # basis elements as sparse matrices {(i, j): {a: coeff}}
    basis, labels = [], []
    for i in range(n):
        basis.append({(i, i): dict(unit)})
        labels.append(f"E{i + 1}{i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            for a in range(d):
                basis.append({(i, j): {a: F.one}, (j, i): D.conj({a: F.one})})
                tag = "" if d == 1 else Dalg.labels[a]
                labels.append(f"{tag}E{i + 1}{j + 1}" if tag else f"E{i + 1}{j + 1}+E{j + 1}{i + 1}")

    def dmul(u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for c, z in Dalg.product(a, b).items():
                    out[c] = out.get(c, F.zero) + x * y * z
        return out

    def matmul(X, Y):
        out = {}
        for (i, j), u in X.items():
            for (k, l), v in Y.items():
                if j == k:
                    acc = out.setdefault((i, l), {})
                    for c, z in dmul(u, v).items():
                        acc[c] = acc.get(c, F.zero) + z
        return out

    unit_key = min(unit)
    consts = []
    for s, X in enumerate(basis):
        for t, Y in enumerate(basis):
            P = matmul(X, Y)
            for key, val in matmul(Y, X).items():
                acc = P.setdefault(key, {})
                for c, z in val.items():
                    acc[c] = acc.get(c, F.zero) + z
            P = {key: {c: half * z for c, z in val.items() if z} for key, val in P.items()}
            P = {key: val for key, val in P.items() if val}
            for (i, j), val in P.items():
                if i == j:
                    coeff = val.get(unit_key, F.zero) / unit[unit_key]
                    if {c: coeff * u for c, u in unit.items() if coeff} != val:
                        raise AssertionError("diagonal entry of a hermitian product is not scalar")
                    if coeff:
                        consts.append((s, t, i, coeff))
                elif i < j:
                    off = n + _pair_offset(i, j, n) * d
                    for a, z in val.items():
                        consts.append((s, t, off + a, z))
                    if D.conj(val) != P.get((j, i), {}):
                        raise AssertionError("hermitian product lost symmetry")
    name = f"H{n}({_KIND_LETTER[kind]})"
    return build_superalgebra(field, [0] * len(basis), consts, labels, name=name,
                              meta={"composition": kind, "n": n})


def _pair_offset(i: int, j: int, n: int) -> int:
    k = 0
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) == (i, j):
                return k
            k += 1
    raise ValueError


# ---------------------------------------------------------------------------
# bilinear-form algebras


def bilinear_form(d: int, field: FieldDescriptor = QQ) -> Superalgebra:
    """J(V, f) with dim V = d and f(v_i, v_j) = delta_ij."""
    if d < 2:
        raise ZooParameterError("J(V,f) is simple only for dim V > 1")
    return super_bilinear_form(d, 0, field, _name=f"J(V,f)[d={d}]", _allow_plain=True)


def super_bilinear_form(d0: int, d1: int, field: FieldDescriptor = QQ, _name=None,
                        _allow_plain=False) -> Superalgebra:
    """J(V, f) for V = V0 + V1: f symmetric (identity) on V0, standard skew on V1."""
    if not _allow_plain and (d1 < 2 or d1 % 2):
        raise ZooParameterError("super J(V,f) needs an even odd dimension d1 >= 2")
    if d0 < 0:
        raise ZooParameterError("d0 must be non-negative")
    labels = ["1"] + [f"v{i + 1}" for i in range(d0)] + [f"w{i + 1}" for i in range(d1)]
    parity = [0] * (1 + d0) + [1] * d1
    consts = [(0, 0, 0, 1)]
    for t in range(1, 1 + d0 + d1):
        consts += [(0, t, t, 1), (t, 0, t, 1)]
    for i in range(d0):
        consts.append((1 + i, 1 + i, 0, 1))
    for i in range(0, d1, 2):
        a, b = 1 + d0 + i, 2 + d0 + i
        consts += [(a, b, 0, 1), (b, a, 0, -1)]
    name = _name or f"J(V,f)super[d0={d0},d1={d1}]"
    return build_superalgebra(field, parity, consts, labels, name=name)


def scalar(field: FieldDescriptor = QQ) -> Superalgebra:
    return build_superalgebra(field, [0], [(0, 0, 0, 1)], ["1"], name="F1")


# ---------------------------------------------------------------------------
# K3, D_t, K10


def kaplansky_k3(field: FieldDescriptor = QQ) -> Superalgebra:
    h = Fraction(1, 2)
    consts = [(0, 0, 0, 1), (0, 1, 1, h), (1, 0, 1, h), (0, 2, 2, h), (2, 0, 2, h),
              (1, 2, 0, 1), (2, 1, 0, -1)]
    return build_superalgebra(field, [0, 1, 1], consts, ["e", "z", "w"], name="K3")


def d_t(t, field: FieldDescriptor = QQ) -> Superalgebra:
    t = Fraction(t)
    if field(t) == field.zero:
        raise ZooParameterError("D_t needs t != 0")
    h = Fraction(1, 2)
    consts = [(0, 0, 0, 1), (1, 1, 1, 1)]
    for i in (0, 1):
        for m in (2, 3):
            consts += [(i, m, m, h), (m, i, m, h)]
    consts += [(2, 3, 0, 1), (2, 3, 1, t), (3, 2, 0, -1), (3, 2, 1, -t)]
    return build_superalgebra(field, [0, 0, 1, 1], consts, ["e1", "e2", "x", "y"], name=f"D_t[t={t}]",
                              meta={"t": str(t)})


K10_LABELS = ("e1", "e2", "uz", "uw", "vz", "vw", "z", "w", "u", "v")
K10_PARITY = (0, 0, 0, 0, 0, 0, 1, 1, 1, 1)
_K = {lab: i for i, lab in enumerate(K10_LABELS)}


def _k10_seed():
    h = Fraction(1, 2)
    table = {}
    table[("e1", "e1")] = {"e1": 1}
    table[("e2", "e2")] = {"e2": 1}
    for c in ("uz", "uw", "vz", "vw"):
        table[("e1", c)] = {c: 1}
        table[(c, "e1")] = {c: 1}
    for e in ("e1", "e2"):
        for m in ("z", "w", "u", "v"):
            table[(e, m)] = {m: h}
            table[(m, e)] = {m: h}
    table[("u", "z")] = {"uz": 1}
    table[("u", "w")] = {"uw": 1}
    table[("v", "z")] = {"vz": 1}
    table[("v", "w")] = {"vw": 1}
    table[("z", "w")] = {"e1": 1, "e2": -3}
    table[("uz", "w")] = {"u": -1}
    table[("vz", "w")] = {"v": -1}
    table[("uz", "vw")] = {"e1": 2}
    return table


def _letter_map(letters: dict[str, tuple[int, str]]):
    """Extend a signed substitution of z, w, u, v to the composite basis elements."""
    full = {"e1": (1, "e1"), "e2": (1, "e2")}
    full.update(letters)
    for comp in ("uz", "uw", "vz", "vw"):
        s1, a = full.get(comp[0], (1, comp[0]))
        s2, b = full.get(comp[1], (1, comp[1]))
        # a*b with a, b odd letters; canonical composites are {u,v}{z,w}
        if a in "uv" and b in "zw":
            full[comp] = (s1 * s2, a + b)
        elif a in "zw" and b in "uv":
            full[comp] = (-s1 * s2, b + a)
        else:
            raise ValueError(f"substitution sends {comp} outside the composite basis")
    for lab in K10_LABELS:
        full.setdefault(lab, (1, lab))
    return full


K10_INTERPRETATIONS = {
    # skew-symmetry z <-> w read as the automorphism z -> w, w -> -z
    "skew_automorphism": [
        (_letter_map({"z": (1, "w"), "w": (-1, "z")}), 1),
        (_letter_map({"u": (1, "v"), "v": (-1, "u")}), 1),
        (_letter_map({"z": (1, "u"), "u": (1, "z"), "w": (1, "v"), "v": (1, "w")}), 1),
    ],
    # plain swap of the letters, with the whole identity negated
    "sign_twisted_swap": [
        (_letter_map({"z": (1, "w"), "w": (1, "z")}), -1),
        (_letter_map({"u": (1, "v"), "v": (1, "u")}), -1),
        (_letter_map({"z": (1, "u"), "u": (1, "z"), "w": (1, "v"), "v": (1, "w")}), 1),
    ],
}


def k10_table(interpretation: str = "skew_automorphism") -> dict:
    """Close the listed K10 products under the three symmetry rules and supercommutativity.

    Raises :class:`K10ConflictError` when two derivations assign different
    values to the same product.
    """
    ops = K10_INTERPRETATIONS[interpretation]
    par = dict(zip(K10_LABELS, K10_PARITY))
    table = {k: {a: Fraction(c) for a, c in v.items()} for k, v in _k10_seed().items()}
    frontier = list(table)
    pending = list(table.items())

    def put(key, val):
        val = {a: c for a, c in val.items() if c}
        old = table.get(key)
        if old is None:
            table[key] = val
            pending.append((key, val))
        elif old != val:
            raise K10ConflictError(key, old, val)

    while pending:
        (a, b), val = pending.pop()
        sign = -1 if par[a] and par[b] else 1
        put((b, a), {k: sign * c for k, c in val.items()})
        for sub, overall in ops:
            sa, na = sub[a]
            sb, nb = sub[b]
            img = {}
            for k, c in val.items():
                sk, nk = sub[k]
                img[nk] = img.get(nk, 0) + overall * sk * c * sa * sb
            put((na, nb), img)
    del frontier
    return {k: v for k, v in table.items() if v}


def kac_k10(field: FieldDescriptor = QQ, interpretation: str = "skew_automorphism") -> Superalgebra:
    if field.characteristic == 3:
        raise CharacteristicError("K10 requires characteristic different from 2 and 3")
    table = k10_table(interpretation)
    consts = [(_K[a], _K[b], _K[k], c) for (a, b), row in table.items() for k, c in row.items()]
    return build_superalgebra(field, K10_PARITY, consts, K10_LABELS, name="K10",
                              meta={"k10_interpretation": interpretation})


def j_gamma(n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if n < 2:
        raise ZooParameterError("J(Gamma_n) needs n >= 2")
    return _j_gamma(n, field)


# ---------------------------------------------------------------------------
# specs, names and the catalog


ZOO_IDS = ("scalar", "bilinear_form", "hermitian", "super_bilinear_form", "full_matrix_super", "q_super",
           "osp", "p_super", "kaplansky_k3", "d_t", "kac_k10", "j_gamma")


@dataclass(frozen=True)
class ZooSpec:
    id: str
    params: tuple = ()

    @classmethod
    def make(cls, id: str, **params) -> "ZooSpec":
        if id not in ZOO_IDS:
            raise ZooParameterError(f"unknown zoo id {id!r}")
        return cls(id, tuple(sorted((k, str(v)) for k, v in params.items())))

    @property
    def p(self) -> dict:
        return dict(self.params)

    @property
    def name(self) -> str:
        return spec_to_name(self)


def _int(params, key, default=None):
    if key not in params:
        if default is None:
            raise ZooParameterError(f"missing parameter {key!r}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise ZooParameterError(f"parameter {key}={params[key]!r} is not an integer") from None


def construct(spec: ZooSpec, field: FieldDescriptor = QQ) -> Superalgebra:
    """Build the algebra described by ``spec`` over ``field``."""
    p = spec.p
    sid = spec.id
    if sid == "scalar":
        A = scalar(field)
    elif sid == "bilinear_form":
        A = bilinear_form(_int(p, "d"), field)
    elif sid == "super_bilinear_form":
        A = super_bilinear_form(_int(p, "d0"), _int(p, "d1"), field)
    elif sid == "hermitian":
        A = hermitian_matrix_algebra(p.get("kind", "ground_field"), _int(p, "n"), field)
    elif sid == "full_matrix_super":
        A = full_matrix_super(_int(p, "m"), _int(p, "n"), field)
    elif sid == "q_super":
        A = q_super(_int(p, "n"), field)
    elif sid == "osp":
        A = osp(_int(p, "n"), _int(p, "m"), field)
    elif sid == "p_super":
        A = p_super(_int(p, "n"), field)
    elif sid == "kaplansky_k3":
        A = kaplansky_k3(field)
    elif sid == "d_t":
        try:
            t = Fraction(p.get("t", "1"))
        except ValueError:
            raise ZooParameterError(f"bad t={p.get('t')!r}") from None
        A = d_t(t, field)
    elif sid == "kac_k10":
        A = kac_k10(field)
    elif sid == "j_gamma":
        A = j_gamma(_int(p, "n"), field)
    else:  # pragma: no cover - ZooSpec.make guards this
        raise ZooParameterError(sid)
    A.meta["spec"] = spec
    A.name = spec_to_name(spec)
    return A


_NAME_PATTERNS = [
    (re.compile(r"^F1$"), lambda m: ZooSpec.make("scalar")),
    (re.compile(r"^K3$"), lambda m: ZooSpec.make("kaplansky_k3")),
    (re.compile(r"^K10$"), lambda m: ZooSpec.make("kac_k10")),
    (re.compile(r"^M\((\d+),(\d+)\)\+$"), lambda m: ZooSpec.make("full_matrix_super", m=m[1], n=m[2])),
    (re.compile(r"^Q\((\d+)\)\+$"), lambda m: ZooSpec.make("q_super", n=m[1])),
    (re.compile(r"^osp\((\d+),(\d+)\)$"), lambda m: ZooSpec.make("osp", n=m[1], m=m[2])),
    (re.compile(r"^P\((\d+)\)$"), lambda m: ZooSpec.make("p_super", n=m[1])),
    (re.compile(r"^H(\d+)\(([FBHO])\)$"),
     lambda m: ZooSpec.make("hermitian", n=m[1], kind=_KIND_ALIASES[m[2]])),
]


def _query(q: str) -> dict:
    out = {}
    for part in filter(None, q.split("&")):
        if "=" not in part:
            raise ZooParameterError(f"bad parameter {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_name(name: str) -> ZooSpec:
    """CLI name -> spec, e.g. ``"Dt?t=1/2"``, ``"J(V,f)super?d0=2&d1=2"``, ``"H3(O)"``."""
    name = name.strip()
    base, _, q = name.partition("?")
    params = _query(q)
    for pat, fn in _NAME_PATTERNS:
        m = pat.match(base)
        if m:
            return fn(m)
    if base == "Dt":
        return ZooSpec.make("d_t", t=params.get("t", "1"))
    if base == "J(V,f)":
        return ZooSpec.make("bilinear_form", d=params.get("d", "3"))
    if base == "J(V,f)super":
        return ZooSpec.make("super_bilinear_form", d0=params.get("d0", "2"), d1=params.get("d1", "2"))
    if base == "JGamma":
        return ZooSpec.make("j_gamma", n=params.get("n", "2"))
    raise ZooParameterError(f"unknown algebra name {name!r}")


def spec_to_name(spec: ZooSpec) -> str:
    p = spec.p
    sid = spec.id
    if sid == "scalar":
        return "F1"
    if sid == "kaplansky_k3":
        return "K3"
    if sid == "kac_k10":
        return "K10"
    if sid == "full_matrix_super":
        return f"M({p['m']},{p['n']})+"
    if sid == "q_super":
        return f"Q({p['n']})+"
    if sid == "osp":
        return f"osp({p['n']},{p['m']})"
    if sid == "p_super":
        return f"P({p['n']})"
    if sid == "hermitian":
        return f"H{p['n']}({_KIND_LETTER[_kind(p.get('kind', 'ground_field'))]})"
    if sid == "d_t":
        return f"Dt?t={p['t']}"
    if sid == "bilinear_form":
        return f"J(V,f)?d={p['d']}"
    if sid == "super_bilinear_form":
        return f"J(V,f)super?d0={p['d0']}&d1={p['d1']}"
    if sid == "j_gamma":
        return f"JGamma?n={p['n']}"
    raise ZooParameterError(sid)


SUM_SEPARATORS = ("(+)", "⊕")


def build(name: str, field: FieldDescriptor = QQ) -> Superalgebra:
    """Construct from a CLI name; ``"A (+) B"`` builds a direct sum."""
    for sep in SUM_SEPARATORS:
        if sep in name:
            parts = [s.strip() for s in name.split(sep)]
            return direct_sum(*(build(s, field) for s in parts), name=" (+) ".join(parts))
    return construct(parse_name(name), field)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    dim: int
    unital: bool
    note: str
    superalgebra: bool = field(default=False)

    @property
    def spec(self) -> ZooSpec | None:
        return None if "(+)" in self.name else parse_name(self.name)


_CATALOG = [
    ("F1", 1, True, "simple Jordan algebra F.1", False),
    ("J(V,f)?d=2", 3, True, "simple: dim V > 1, f nondegenerate", False),
    ("J(V,f)?d=3", 4, True, "simple: dim V > 1, f nondegenerate", False),
    ("H3(F)", 6, True, "simple H(D_n, J), D = F", False),
    ("H3(H)", 15, True, "simple H(D_n, J), D = split quaternions", False),
    ("H4(F)", 10, True, "simple H(D_n, J), D = F", False),
    ("H3(O)", 27, True, "Albert algebra", False),
    ("M(1,1)+", 4, True, "simple superalgebra", True),
    ("M(1,2)+", 9, True, "simple superalgebra", True),
    ("Q(2)+", 8, True, "simple superalgebra", True),
    ("osp(1,1)", 4, True, "simple superalgebra", True),
    ("osp(2,1)", 8, True, "simple superalgebra", True),
    ("P(2)", 8, True, "simple superalgebra", True),
    ("J(V,f)super?d0=2&d1=2", 5, True, "simple superalgebra", True),
    ("JGamma?n=2", 8, True, "simple superalgebra, n > 1", True),
    ("JGamma?n=3", 16, True, "simple superalgebra, n > 1", True),
    ("K3", 3, False, "simple, no unit", True),
    ("Dt?t=1", 4, True, "simple superalgebra, t != 0", True),
    ("Dt?t=-1", 4, True, "simple superalgebra, t != 0", True),
    ("Dt?t=1/2", 4, True, "simple superalgebra, t != 0", True),
    ("Dt?t=2", 4, True, "simple superalgebra, t != 0", True),
    ("K10", 10, True, "simple superalgebra, char != 2, 3", True),
]

_SEMISIMPLE = [
    ("H3(F) (+) F1", 7, True, "semisimple, 2 summands", False),
    ("J(V,f)?d=3 (+) J(V,f)?d=2", 7, True, "semisimple, 2 summands", False),
    ("F1 (+) F1 (+) H3(F)", 8, True, "semisimple, 3 summands", False),
    ("K3 (+) Dt?t=1", 7, False, "superalgebra sum, computational extension", True),
]


def catalog() -> list[CatalogEntry]:
    """Default desk-scale instances, in a fixed order."""
    return [CatalogEntry(*row) for row in _CATALOG]


def semisimple_catalog() -> list[CatalogEntry]:
    return [CatalogEntry(*row) for row in _SEMISIMPLE]


def unit_or_none(A: Superalgebra):
    return find_unit(A)


def load_fixture(name: str) -> dict:
    return json.loads(resources.files("jordan_delta").joinpath("data", name).read_text())
