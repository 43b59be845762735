"""Grassmann algebra Gamma_n, its odd derivations d/de_j, the bracket {f, g},
the superalgebra J(Gamma_n) and Grassmann envelopes.

Monomials are strictly increasing tuples of 1-based generator indices; ``()``
is the unit.  Labels: ``"1"``, ``"e1"``, ``"e1e3e4"``; barred copies in
J(Gamma_n) carry a ``"~"`` prefix.
"""
from __future__ import annotations

import re
from itertools import combinations

from .algebra import Element, Superalgebra, build_superalgebra
from .exactnum import QQ, FieldDescriptor

Monomial = tuple


class NotSimpleParameterError(ValueError):
    pass


def monomials(n: int) -> list[Monomial]:
    """All subsets of {1..n}, ordered by length then lexicographically."""
    out: list[Monomial] = []
    for k in range(n + 1):
        out.extend(combinations(range(1, n + 1), k))
    return out


def monomial_label(m: Monomial) -> str:
    return "".join(f"e{i}" for i in m) or "1"


def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ()
    idx = [int(x) for x in re.findall(r"e(\d+)", text)]
    if "".join(f"e{i}" for i in idx) != text or list(idx) != sorted(set(idx)):
        raise ValueError(f"not a canonical Grassmann monomial: {text!r}")
    return tuple(idx)


def monomial_product(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """``(sign, ab)`` with sign 0 when a generator repeats.

    The sign is (-1)^(number of pairs i in a, j in b with i > j), counted
    during a single merge.
    """
    out = []
    inversions = 0
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            # b[j] jumps over the remaining len(a) - i letters of a
            inversions += len(a) - i
            out.append(b[j])
            j += 1
        else:
            return 0, None
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inversions % 2 else 1), tuple(out)


def gamma_algebra(n: int, field: FieldDescriptor = QQ) -> Superalgebra:
    if n < 1:
        raise ValueError("Gamma_n needs n >= 1")
    mons = monomials(n)
    pos = {m: i for i, m in enumerate(mons)}
    consts = []
    for i, a in enumerate(mons):
        for j, b in enumerate(mons):
            s, m = monomial_product(a, b)
            if s:
                consts.append((i, j, pos[m], s))
    return build_superalgebra(field, [len(m) % 2 for m in mons], consts,
                              [monomial_label(m) for m in mons], name=f"Gamma_{n}",
                              meta={"monomials": mons, "generators": n})


def _monos(G: Superalgebra) -> list[Monomial]:
    mons = G.meta.get("monomials")
    if mons is None:
        raise ValueError(f"{G.name} is not a Grassmann algebra")
    return mons


def derivative_monomial(j: int, m: Monomial) -> tuple[int, Monomial | None]:
    if j not in m:
        return 0, None
    t = m.index(j)
    return (-1 if t % 2 else 1), m[:t] + m[t + 1:]


def partial_derivative(j: int, x: Element) -> Element:
    """d/de_j applied to an element of Gamma_n (linear extension of the monomial rule)."""
    G = x.algebra
    mons = _monos(G)
    if not 1 <= j <= G.meta["generators"]:
        raise ValueError(f"generator e{j} not in {G.name}")
    pos = {m: i for i, m in enumerate(mons)}
    out = [G.field.zero] * G.dim
    for i, c in enumerate(x.coords):
        if c:
            s, m = derivative_monomial(j, mons[i])
            if s:
                out[pos[m]] += s * c
    return Element(G, out)


def _bracket_vectors(n: int, f: dict[Monomial, object], g: dict[Monomial, object]) -> dict[Monomial, object]:
    out: dict[Monomial, object] = {}
    for a, x in f.items():
        sign_f = -1 if len(a) % 2 else 1
        for b, y in g.items():
            for j in range(1, n + 1):
                sa, da = derivative_monomial(j, a)
                if not sa:
                    continue
                sb, db = derivative_monomial(j, b)
                if not sb:
                    continue
                s, m = monomial_product(da, db)
                if s:
                    out[m] = out.get(m, 0) + sign_f * sa * sb * s * x * y
    return {m: c for m, c in out.items() if c}


def grassmann_bracket(f: Element, g: Element) -> Element:
    """{f, g} = (-1)^{p(f)} sum_j df/de_j dg/de_j, extended bilinearly."""
    G = f.algebra
    mons = _monos(G)
    fd = {mons[i]: c for i, c in enumerate(f.coords) if c}
    gd = {mons[i]: c for i, c in enumerate(g.coords) if c}
    res = _bracket_vectors(G.meta["generators"], fd, gd)
    pos = {m: i for i, m in enumerate(mons)}
    out = [G.field.zero] * G.dim
    for m, c in res.items():
        out[pos[m]] += c
    return Element(G, out)


def j_gamma(n: int, field: FieldDescriptor = QQ, force: bool = False) -> Superalgebra:
    """J(Gamma_n) = Gamma_n + bar(Gamma_n) with the bullet product.

    Basis: monomials, then their barred copies; bar flips parity.
    """
    if n < 2 and not force:
        raise NotSimpleParameterError("J(Gamma_n) is simple only for n >= 2")
    mons = monomials(n)
    N = len(mons)
    pos = {m: i for i, m in enumerate(mons)}
    consts = []
    for i, a in enumerate(mons):
        pa = len(a) % 2
        for j, b in enumerate(mons):
            pb = len(b) % 2
            s, m = monomial_product(a, b)
            if s:
                consts.append((i, j, pos[m], s))                          # a . b = ab
                consts.append((N + i, j, N + pos[m], -s if pb else s))      # ~a . b = (-1)^p(b) ~(ab)
                consts.append((i, N + j, N + pos[m], s))                    # a . ~b = ~(ab)
            sign = -1 if pb else 1
            for mm, c in _bracket_vectors(n, {a: 1}, {b: 1}).items():
                consts.append((N + i, N + j, pos[mm], sign * c))            # ~a . ~b = (-1)^p(b) {a,b}
    parity = [len(m) % 2 for m in mons] + [1 - len(m) % 2 for m in mons]
    labels = [monomial_label(m) for m in mons] + ["~" + monomial_label(m) for m in mons]
    return build_superalgebra(field, parity, consts, labels, name=f"J(Gamma_{n})",
                              meta={"monomials": mons, "generators": n})


def grassmann_envelope(A: Superalgebra, k: int = 4) -> Superalgebra:
    """Gamma_0(k) (x) A_0 + Gamma_1(k) (x) A_1 as a plain algebra.

    Basis pairs are ordered by the A index first, then by monomial.
    ``meta['pairs']`` lists ``(monomial, a_index)`` per basis element.
    """
    if k < 1:
        raise ValueError("envelope needs at least one generator")
    mons = monomials(k)
    pairs = [(m, a) for a in range(A.dim) for m in mons if len(m) % 2 == A.parity[a]]
    pos = {pr: i for i, pr in enumerate(pairs)}
    consts = []
    for x, (g, a) in enumerate(pairs):
        for y, (h, b) in enumerate(pairs):
            row = A.product(a, b)
            if not row:
                continue
            s, m = monomial_product(g, h)
            if not s:
                continue
            for t, c in row.items():
                consts.append((x, y, pos[(m, t)], s * c))
    labels = [f"{monomial_label(g)}(x){A.labels[a]}" for g, a in pairs]
    return build_superalgebra(A.field, [0] * len(pairs), consts, labels,
                              name=f"Gamma{k}({A.name})",
                              meta={"pairs": pairs, "envelope_of": A.name, "generators": k})


def envelope_index(E: Superalgebra, mono: Monomial, a: int) -> int:
    return E.meta["pairs"].index((tuple(mono), a))
