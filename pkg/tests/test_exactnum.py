from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordan_delta.exactnum import (QQ, CharacteristicTwoError, DeltaPoly, FieldError, Mod, NotPrimeError,
                                   PrimeField, ZeroPolynomialError, field_descriptor, field_from_json,
                                   is_prime, poly_evaluate, rational_roots)

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def test_field_descriptor_kinds():
    assert field_descriptor("Q") == QQ
    F = field_descriptor("gf7")
    assert F.characteristic == 7
    assert field_descriptor("GF(7)") == F
    assert QQ.characteristic == 0


def test_char_two_and_composite_rejected():
    with pytest.raises(CharacteristicTwoError):
        field_descriptor("gf2")
    with pytest.raises(NotPrimeError):
        field_descriptor("gf9")
    with pytest.raises(FieldError):
        field_descriptor("reals")


def test_field_json_round_trip():
    for F in (QQ, PrimeField(5)):
        assert field_from_json(F.to_json()) == F


def test_mod_arithmetic():
    a = Mod(3, 7)
    assert a + 5 == Mod(1, 7)
    assert a * a.inverse() == 1
    assert Mod(1, 7) / 2 == Mod(4, 7)
    assert -a == Mod(4, 7)
    assert PrimeField(7)(Fraction(1, 2)) == Mod(4, 7)
    with pytest.raises(ZeroDivisionError):
        Mod(0, 7).inverse()


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_poly_evaluate_examples():
    d = DeltaPoly.delta()
    assert poly_evaluate(1 - 2 * d, Fraction(1, 2)) == 0
    assert poly_evaluate(d * d - d, 2) == 2
    assert poly_evaluate(DeltaPoly(), Fraction(7, 3)) == 0


def test_delta_poly_canonical():
    assert DeltaPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert DeltaPoly([0, 0]).is_zero()
    assert DeltaPoly([]).degree == -1 or DeltaPoly([]).is_zero()


def test_rational_roots_examples():
    d = DeltaPoly.delta()
    assert rational_roots(1 - 2 * d) == ({Fraction(1, 2)}, [])
    assert rational_roots(d * d - d) == ({Fraction(0), Fraction(1)}, [])
    assert rational_roots(2 * d * d - 3 * d + 1) == ({Fraction(1), Fraction(1, 2)}, [])


def test_rational_roots_leftover_degree():
    d = DeltaPoly.delta()
    roots, rest = rational_roots((d * d - 2) * (d - 3))
    assert roots == {Fraction(3)}
    assert rest == [2]


def test_zero_polynomial_has_no_root_set():
    with pytest.raises(ZeroPolynomialError):
        rational_roots(DeltaPoly())


@given(fractions, fractions)
def test_rational_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a


@given(st.integers(-50, 50), st.integers(1, 50), st.sampled_from([3, 5, 7, 11, 13]))
def test_prime_field_inverse(a, b, p):
    F = PrimeField(p)
    x = F(a)
    y = F(b)
    if y:
        assert (x * y) / y == x
    assert (x + y) - y == x


small_fractions = st.fractions(max_denominator=12).filter(lambda x: abs(x) <= 30)


@settings(deadline=None)
@given(st.lists(small_fractions, min_size=1, max_size=4))
def test_rational_roots_are_roots_and_complete(roots):
    d = DeltaPoly.delta()
    p = DeltaPoly.const(3)
    for r in roots:
        p = p * (d - r)
    got, rest = rational_roots(p)
    assert got == set(roots)
    assert rest == []
    for r in got:
        assert poly_evaluate(p, r) == 0
