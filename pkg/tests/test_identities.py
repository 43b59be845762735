from __future__ import annotations

from fractions import Fraction

import pytest

from jordan_delta import zoo
from jordan_delta.algebra import build_superalgebra
from jordan_delta.exactnum import QQ, CharacteristicError, PrimeField
from jordan_delta.identities import (check_identities, check_jordan_linearized, check_random_elements,
                                     check_super_jordan_envelope, check_supercommutativity,
                                     linearized_residual)


def _bad_k3():
    # zw = e and wz = e with z, w odd: the sign is wrong
    return build_superalgebra(QQ, [0, 1, 1], [
        (0, 0, 0, 1), (0, 1, 1, Fraction(1, 2)), (1, 0, 1, Fraction(1, 2)),
        (0, 2, 2, Fraction(1, 2)), (2, 0, 2, Fraction(1, 2)), (1, 2, 0, 1), (2, 1, 0, 1),
    ], ["e", "z", "w"], name="K3-bad-sign")


def _square_swap():
    # commutative, a^2 = b, b^2 = a: not Jordan
    return build_superalgebra(QQ, [0, 0], [(0, 0, 1, 1), (1, 1, 0, 1)], ["a", "b"], name="swap")


def _tampered_dt():
    A = zoo.d_t(1)
    e1, x = A.index("e1"), A.index("x")
    c = dict(A.constants)
    c[(e1, x)] = {x: Fraction(1)}
    c[(x, e1)] = {x: Fraction(1)}
    return A.with_constants(c, "Dt-tampered")


def test_k3_supercommutative(build):
    rep = check_supercommutativity(build("K3"))
    assert rep.passed and rep.witnesses == []
    assert rep.checked == 6


def test_h3f_commutative(build):
    assert check_supercommutativity(build("H3(F)")).passed


def test_sign_violation_witness():
    rep = check_supercommutativity(_bad_k3())
    assert not rep.passed
    assert [w[1] for w in rep.witnesses] == [["z", "w"]]


@pytest.mark.parametrize("name", ["H3(F)", "H3(O)", "H4(F)", "J(V,f)?d=3"])
def test_plain_jordan(build, name):
    rep = check_jordan_linearized(build(name))
    assert rep.passed
    assert rep.mode == "sweep"


def test_associative_matrix_product_fails():
    M = zoo.matrix_superalgebra(2, 0)
    reps = check_identities(M)
    assert not all(r.passed for r in reps)
    assert not reps[0].passed
    assert reps[0].witnesses


def test_linearized_witness_is_exact():
    A = _square_swap()
    rep = check_jordan_linearized(A)
    assert not rep.passed
    q, labels, res = rep.witnesses[0]
    assert res == {A.labels[k]: A.field.format(c) for k, c in linearized_residual(A, *q).items()}
    assert q == tuple(sorted(q[:3])) + (q[3],)


@pytest.mark.parametrize("name", ["K10", "Dt?t=1", "K3", "Q(2)+", "osp(1,1)"])
def test_super_envelope_passes(build, name):
    rep = check_super_jordan_envelope(build(name))
    assert rep.passed, rep.witnesses[:2]


def test_tampered_dt_fails_with_quadruple():
    rep = check_super_jordan_envelope(_tampered_dt())
    assert not rep.passed
    idx, labels, res = rep.witnesses[0]
    assert len(idx) == 4 and len(labels) == 4 and res


def test_envelope_literal_and_representative_agree():
    A = _tampered_dt()
    lit = check_super_jordan_envelope(A, full_envelope=True)
    rep = check_super_jordan_envelope(A, full_envelope=False)
    assert lit.passed == rep.passed is False
    ok = zoo.kaplansky_k3()
    assert check_super_jordan_envelope(ok, full_envelope=True).passed
    assert check_super_jordan_envelope(ok, full_envelope=False).passed


@pytest.mark.parametrize("maker", [lambda: zoo.hermitian_matrix_algebra("F", 3), _square_swap,
                                   lambda: zoo.bilinear_form(2)])
def test_envelope_agrees_with_direct_check_on_plain_algebras(maker):
    A = maker()
    assert check_super_jordan_envelope(A).passed == check_jordan_linearized(A).passed


def test_envelope_needs_four_generators(build):
    with pytest.raises(ValueError):
        check_super_jordan_envelope(build("K3"), k=3)


def test_random_elements_agree_with_sweep(build):
    for name in ("H3(F)", "K3", "Dt?t=1/2", "M(1,1)+"):
        assert check_random_elements(build(name), count=100).passed
    assert not check_random_elements(_square_swap(), count=20).passed
    assert not check_random_elements(_tampered_dt(), count=20).passed


def test_sampling_mode_is_seeded(build):
    A = _square_swap()
    r1 = check_jordan_linearized(A, full=False, samples=200, seed=7)
    r2 = check_jordan_linearized(A, full=False, samples=200, seed=7)
    assert r1.mode == "sample" and r1.seed == 7
    assert r1.to_json() == r2.to_json()
    assert not r1.passed


def test_witness_cap_and_order():
    A = zoo.matrix_superalgebra(2, 0)
    rep = check_supercommutativity(A, cap=2)
    assert len(rep.witnesses) == 2
    assert rep.failures > 2
    assert [w[0] for w in rep.witnesses] == sorted(w[0] for w in rep.witnesses)


def test_characteristic_three_refused():
    A = zoo.kaplansky_k3(PrimeField(3))
    with pytest.raises(CharacteristicError):
        check_identities(A)
    assert all(r.passed for r in check_identities(zoo.kaplansky_k3(PrimeField(5))))


def test_report_json_shape(build):
    doc = check_identities(build("K3"))[1].to_json()
    assert set(doc) == {"check", "algebra", "passed", "failures", "checked", "mode", "seed", "witnesses"}
    assert doc["passed"] is True
