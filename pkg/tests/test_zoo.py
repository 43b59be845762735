from __future__ import annotations

import random
from fractions import Fraction

import pytest

from jordan_delta import zoo
from jordan_delta.algebra import find_unit, hermitian_subalgebra, mul_vectors
from jordan_delta.derivations import delta_derivations
from jordan_delta.exactnum import CharacteristicError, PrimeField
from jordan_delta.identities import check_identities

from conftest import CATALOG_NAMES


def _rand_vec(rng, n):
    return {i: Fraction(rng.randint(-4, 4)) for i in range(n)}


def _clean(v):
    return {k: c for k, c in v.items() if c}


def _scale(v, c):
    return _clean({k: c * x for k, x in v.items()})


@pytest.mark.parametrize("kind,dim", [("ground_field", 1), ("split_binarion", 2), ("split_quaternion", 4),
                                      ("split_octonion", 8)])
def test_composition_algebra_basics(kind, dim):
    D = zoo.composition_algebra(kind)
    A = D.algebra
    assert D.dim == dim
    assert D.involution.is_involutive()
    one = D.unit()
    assert find_unit(A).support() == one
    for m in range(dim):
        x = {m: Fraction(1)}
        xbar = D.conj(x)
        trace = _clean({k: x.get(k, 0) + xbar.get(k, 0) for k in set(x) | set(xbar)})
        norm = mul_vectors(A, x, xbar)
        for v in (trace, norm):
            if v:
                c = v[min(one)] / one[min(one)]
                assert v == _scale(one, c)


def test_quaternion_norm_is_determinant():
    D = zoo.composition_algebra("split_quaternion")
    rng = random.Random(1)
    for _ in range(50):
        x = _rand_vec(rng, 4)
        a, b, c, d = (x[i] for i in range(4))
        assert mul_vectors(D.algebra, x, D.conj(x)) == _scale(D.unit(), a * d - b * c)


def test_octonions_alternative_not_associative():
    D = zoo.composition_algebra("split_octonion")
    A = D.algebra
    n = 8
    assoc_fail = False
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = mul_vectors(A, A.product(i, j), {k: 1})
                right = mul_vectors(A, {i: 1}, A.product(j, k))
                assoc_fail |= left != right
    assert assoc_fail
    rng = random.Random(2)
    for _ in range(40):
        x, y = _rand_vec(rng, n), _rand_vec(rng, n)
        xx = mul_vectors(A, x, x)
        assert mul_vectors(A, xx, y) == mul_vectors(A, x, mul_vectors(A, x, y))
        assert mul_vectors(A, y, xx) == mul_vectors(A, mul_vectors(A, y, x), x)
        # composition: N(xy) = N(x) N(y)
        nx = mul_vectors(A, x, D.conj(x))
        ny = mul_vectors(A, y, D.conj(y))
        xy = mul_vectors(A, x, y)
        nxy = mul_vectors(A, xy, D.conj(xy))
        u = min(D.unit())
        assert nxy.get(u, 0) == nx.get(u, 0) * ny.get(u, 0)


@pytest.mark.parametrize("kind,n,dim", [("F", 3, 6), ("H", 3, 15), ("O", 3, 27), ("F", 4, 10), ("B", 3, 9)])
def test_hermitian_dimensions(kind, n, dim):
    assert zoo.hermitian_matrix_algebra(kind, n).dim == dim


def test_hermitian_parameter_errors():
    with pytest.raises(zoo.OctonionDimensionError):
        zoo.hermitian_matrix_algebra("O", 4)
    with pytest.raises(zoo.ZooParameterError):
        zoo.hermitian_matrix_algebra("F", 2)
    with pytest.raises(zoo.ZooParameterError):
        zoo.hermitian_matrix_algebra("R", 3)


@pytest.mark.parametrize("kind", ["ground_field", "split_binarion", "split_quaternion"])
def test_direct_hermitian_matches_fixed_point_route(kind):
    direct = zoo.hermitian_matrix_algebra(kind, 3)
    D = zoo.composition_algebra(kind)
    M, J = zoo.matrix_algebra_over(D, 3)
    fixed = hermitian_subalgebra(M, J)
    assert fixed.dim == direct.dim
    assert check_identities(fixed)[1].passed
    for delta in (Fraction(1, 2), Fraction(1), Fraction(0)):
        assert delta_derivations(fixed, delta).dim == delta_derivations(direct, delta).dim


def test_k3_products():
    A = zoo.kaplansky_k3()
    e, z, w = (A.basis(x) for x in ("e", "z", "w"))
    assert e * e == e
    assert e * z == Fraction(1, 2) * z
    assert e * w == Fraction(1, 2) * w
    assert z * w == e
    assert A.parity == (0, 1, 1)


def test_d_t_products():
    t = Fraction(1, 2)
    A = zoo.d_t(t)
    e1, e2, x, y = (A.basis(s) for s in ("e1", "e2", "x", "y"))
    assert e1 * e1 == e1 and e2 * e2 == e2
    assert e1 * e2 == A.zero()
    for e in (e1, e2):
        assert e * x == Fraction(1, 2) * x
        assert e * y == Fraction(1, 2) * y
    assert x * y == e1 + t * e2
    assert y * x == -(e1 + t * e2)
    with pytest.raises(zoo.ZooParameterError):
        zoo.d_t(0)


def test_d_t_is_a_deformation():
    ref = zoo.d_t(1)
    for t in (Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(7, 3)):
        A = zoo.d_t(t)
        assert (A.dim, A.parity, A.labels) == (ref.dim, ref.parity, ref.labels)


def test_k10_listed_products():
    A = zoo.kac_k10()
    b = A.basis
    assert (A.even_dim, A.odd_dim) == (6, 4)
    assert b("z") * b("w") == b("e1") - 3 * b("e2")
    assert b("uz") * b("w") == -b("u")
    assert b("vz") * b("w") == -b("v")
    assert b("uz") * b("vw") == 2 * b("e1")
    for p, q in (("u", "z"), ("u", "w"), ("v", "z"), ("v", "w")):
        assert b(p) * b(q) == b(p + q)
    for c in ("uz", "uw", "vz", "vw"):
        assert b("e1") * b(c) == b(c)
    for m in ("z", "w", "u", "v"):
        assert b("e2") * b(m) == Fraction(1, 2) * b(m)
    assert find_unit(A) == b("e1") + b("e2")


def test_k10_table_matches_frozen_fixture():
    doc = zoo.load_fixture("k10_table.json")
    assert doc["interpretation"] == "skew_automorphism"
    frozen = {(p["left"], p["right"]): {k: Fraction(v) for k, v in p["result"].items()} for p in doc["products"]}
    assert frozen == zoo.k10_table()


def test_k10_literal_swap_reading_conflicts():
    with pytest.raises(zoo.K10ConflictError):
        zoo.k10_table("sign_twisted_swap")


def test_k10_refused_in_characteristic_three():
    with pytest.raises(CharacteristicError):
        zoo.kac_k10(PrimeField(3))
    assert zoo.kac_k10(PrimeField(5)).dim == 10


def test_queer_basis():
    for n in (2, 3):
        Q = zoo.q_super(n)
        assert Q.dim == 2 * n * n
        assert Q.even_dim == n * n
        assert "D_12" in Q.labels and "D^21" in Q.labels
    with pytest.raises(zoo.ZooParameterError):
        zoo.q_super(1)


@pytest.mark.parametrize("n,m,dim", [(1, 1, 4), (2, 1, 8), (1, 2, 11)])
def test_osp_dimensions(n, m, dim):
    A = zoo.osp(n, m)
    assert A.dim == dim
    assert find_unit(A) is not None


def test_osp_involution_squares_to_identity():
    for n, m in ((1, 1), (2, 1), (1, 2), (2, 2)):
        M = zoo.matrix_superalgebra(n, 2 * m)
        j = zoo.osp_involution(n, m, M)
        assert j.is_involutive()
        assert j.superinvolution_failure() is None


def test_p_fixed_points_have_the_block_shape():
    n = 2
    P = zoo.p_super(n)
    assert P.dim == 8
    size = 2 * n
    for v in P.meta["embedding"]:
        X = [[v.get(r * size + c, 0) for c in range(size)] for r in range(size)]
        for i in range(n):
            for j in range(n):
                assert X[i][n + j] == -X[j][n + i]          # B^T = -B
                assert X[n + i][j] == X[n + j][i]          # C^T = C
                assert X[n + i][n + j] == X[j][i]          # D = A^T


def test_bilinear_form_algebras():
    A = zoo.bilinear_form(3)
    assert A.dim == 4
    assert A.basis("v1") * A.basis("v1") == A.basis("1")
    assert A.basis("v1") * A.basis("v2") == A.zero()
    S = zoo.super_bilinear_form(2, 2)
    assert S.parity == (0, 0, 0, 1, 1)
    assert S.basis("w1") * S.basis("w2") == S.basis("1")
    assert S.basis("w2") * S.basis("w1") == -S.basis("1")
    with pytest.raises(zoo.ZooParameterError):
        zoo.bilinear_form(1)
    with pytest.raises(zoo.ZooParameterError):
        zoo.super_bilinear_form(2, 3)


def test_other_parameter_ranges():
    with pytest.raises(zoo.ZooParameterError):
        zoo.full_matrix_super(0, 1)
    with pytest.raises(zoo.ZooParameterError):
        zoo.osp(0, 1)
    with pytest.raises(zoo.ZooParameterError):
        zoo.p_super(1)
    with pytest.raises(zoo.ZooParameterError):
        zoo.j_gamma(1)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_name_round_trip(name):
    spec = zoo.parse_name(name)
    assert zoo.spec_to_name(spec) == name
    assert zoo.parse_name(spec.name) == spec


def test_bad_names():
    for bad in ("K4", "Dt?t", "H3(X)", "osp(1)", "JGamma?n=x"):
        with pytest.raises(zoo.ZooParameterError):
            zoo.construct(zoo.parse_name(bad))


def test_catalog_is_deterministic_and_consistent(build):
    first = zoo.catalog()
    assert first == zoo.catalog()
    names = [e.name for e in first]
    assert "K3" in names and "M(1,1)+" in names and "H3(O)" in names
    for e in first:
        A = build(e.name)
        assert A.dim == e.dim
        assert (find_unit(A) is not None) == e.unital
        assert (not A.is_plain) == e.superalgebra


def test_semisimple_catalog_blocks(build):
    for e in zoo.semisimple_catalog():
        A = build(e.name)
        assert A.dim == e.dim
        assert len(A.meta["blocks"]) == e.name.count("(+)") + 1
