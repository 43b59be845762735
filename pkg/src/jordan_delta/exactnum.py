"""Exact scalars: rationals, prime fields GF(p) and polynomials in delta.

Nothing in this package ever touches a float.  Rationals are plain
:class:`fractions.Fraction`; residues mod ``p`` are :class:`Mod` instances so
that generic code can use ``+ - * /`` on either.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Iterable, Sequence


class FieldError(ValueError):
    pass


class CharacteristicTwoError(FieldError):
    pass


class NotPrimeError(FieldError):
    pass


class CharacteristicError(FieldError):
    """A construction needs a characteristic the active field does not have."""


class ZeroPolynomialError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Mod:
    """Residue class mod an odd prime; always stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return _fraction_mod(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == _fraction_mod(Fraction(other), self.p)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _fraction_mod(x: Fraction, p: int) -> int:
    den = x.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
    return x.numerator * pow(den, -1, p) % p


class FieldDescriptor:
    """Immutable description of the ground field; calling it coerces a value."""

    kind: str
    p: int | None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        """Read a literal such as ``"3"``, ``"-1/2"`` into the field."""
        return self(Fraction(str(text).strip()))

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))


class Rationals(FieldDescriptor):
    kind = "Q"
    p = None

    def __call__(self, x):
        if isinstance(x, Mod):
            raise FieldError("cannot lift a GF(p) residue to Q")
        return Fraction(x)

    def to_json(self) -> dict:
        return {"kind": "Q"}

    def format(self, x) -> str:
        return str(Fraction(x))

    def __repr__(self):
        return "QQ"


class PrimeField(FieldDescriptor):
    kind = "GFp"

    def __init__(self, p: int):
        if p == 2:
            raise CharacteristicTwoError("characteristic 2 is not supported")
        if not is_prime(p):
            raise NotPrimeError(f"{p} is not prime")
        self.p = p

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldError(f"residue mod {x.p} used in GF({self.p})")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        try:
            return Mod(_fraction_mod(Fraction(x), self.p), self.p)
        except ZeroDivisionError as exc:
            raise CharacteristicError(str(exc)) from None

    def to_json(self) -> dict:
        return {"kind": "GFp", "p": self.p}

    def format(self, x) -> str:
        return str(self(x).v)

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def field_descriptor(kind: str = "Q", p: int | None = None) -> FieldDescriptor:
    """Return the descriptor for ``"Q"`` or ``"GFp"``.

    ``kind`` also accepts the CLI spellings ``"gf7"`` / ``"GF(7)"``.
    """
    k = kind.strip().lower().replace("(", "").replace(")", "")
    if k in ("q", "qq", "rationals", "rational"):
        return QQ
    if k.startswith("gf"):
        rest = k[2:].lstrip("p")
        if rest:
            p = int(rest)
        if p is None:
            raise FieldError("GF(p) needs a modulus")
        return PrimeField(int(p))
    raise FieldError(f"unknown field kind {kind!r}")


def field_from_json(doc: dict) -> FieldDescriptor:
    if doc.get("kind") == "Q":
        return QQ
    if doc.get("kind") == "GFp":
        return PrimeField(int(doc["p"]))
    raise FieldError(f"bad field document {doc!r}")


# ---------------------------------------------------------------------------
# polynomials in delta


@total_ordering
class DeltaPoly:
    """Dense univariate polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def delta(cls) -> "DeltaPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, a) -> "DeltaPoly":
        return cls((a,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other):
        if isinstance(other, DeltaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return DeltaPoly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return DeltaPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return DeltaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        return poly_evaluate(self, x)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __lt__(self, other):
        return (len(self.coeffs), self.coeffs) < (len(other.coeffs), other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DeltaPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("d" if i == 1 else f"d^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


def poly_evaluate(p: DeltaPoly | Sequence, x):
    """Horner evaluation; ``x`` may be a Fraction, an int or a :class:`Mod`."""
    coeffs = p.coeffs if isinstance(p, DeltaPoly) else tuple(p)
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def primitive_int_coeffs(coeffs: Sequence) -> list[int]:
    """Scale rational coefficients to coprime integers with positive leading term."""
    fr = [Fraction(c) for c in coeffs]
    while fr and fr[-1] == 0:
        fr.pop()
    if not fr:
        return []
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _int_eval(c: Sequence[int], num: int, den: int) -> int:
    # den^deg * c(num/den), exact in integers
    n = len(c) - 1
    acc = 0
    for i, a in enumerate(c):
        acc += a * num**i * den ** (n - i)
    return acc


def _deflate(c: list[int], num: int, den: int) -> list[int]:
    """Divide c(x) by (den*x - num); the division must be exact."""
    # synthetic division from the top
    n = len(c) - 1
    q = [0] * n
    rem = c[n]
    for i in range(n - 1, -1, -1):
        q[i] = rem // den
        rem = c[i] + q[i] * num
    assert rem == 0
    return q


def rational_roots(p: DeltaPoly | Sequence) -> tuple[set[Fraction], list[int]]:
    """Rational roots of ``p`` (multiplicity dropped) and the leftover degree.

    The second component lists the degree of the cofactor that has no rational
    root, or is empty when ``p`` splits into linear factors over Q.
    """
    coeffs = p.coeffs if isinstance(p, DeltaPoly) else tuple(p)
    c = primitive_int_coeffs(coeffs)
    if not c:
        raise ZeroPolynomialError("the zero polynomial has every value as a root")
    roots: set[Fraction] = set()
    while len(c) > 1 and c[0] == 0:
        roots.add(Fraction(0))
        c = c[1:]
    changed = True
    while len(c) > 1 and changed:
        changed = False
        for q in _divisors(c[-1]):
            for a in _divisors(c[0]):
                for num in (a, -a):
                    if _int_eval(c, num, q) == 0:
                        roots.add(Fraction(num, q))
                        c = _deflate(c, num, q)
                        g = 0
                        for x in c:
                            g = gcd(g, x)
                        c = [x // g for x in c]
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    leftover = [len(c) - 1] if len(c) > 1 else []
    return roots, leftover
