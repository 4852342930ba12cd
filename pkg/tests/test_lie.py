from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from killingtype.catalog import build
from killingtype.constructions import random_gram
from killingtype.io import (
    DocumentError,
    algebra_from_doc,
    algebra_to_doc,
    tensor_from_literal,
    tensor_to_literal,
    write_json,
)
from killingtype.lie import InvalidAlgebra, MetricLieAlgebra, adjointness_witness
from killingtype.linalg import Matrix
from killingtype.symalg import SymTensor, inner_product, lambda_op, lefschetz_L, monomials, sym_of_endo

from conftest import CATALOG, with_random_gram

HALF = Fraction(1, 2)


def y(n, *idx):
    out = SymTensor.scalar(n)
    for i in idx:
        out = out * SymTensor.variable(n, i)
    return out


# -------------------------------------------------------------- validation

def test_jacobi_violation_reported_with_quadruple():
    # [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1 breaks Jacobi
    with pytest.raises(InvalidAlgebra) as exc:
        MetricLieAlgebra.from_brackets(3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {0: 1}})
    assert any("Jacobi" in p for p in exc.value.problems)
    assert build("free-2step-3gen").jacobi_violations() == []


def test_jacobi_hand_check():
    # Jacobi sum for (e1,e2,e3) is [e1,e1] + [e2,-e3] + [e3,e2] = -2 e1: component 1
    table = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for (i, j), (k, c) in {(0, 1): (1, 1), (0, 2): (2, 1), (1, 2): (0, 1)}.items():
        table[i][j][k], table[j][i][k] = c, -c
    alg = MetricLieAlgebra(table, build("abelian(3)").gram, check=False)
    assert alg.jacobi_violations() == [(1, 2, 3, 1)]


def test_gram_not_positive_definite():
    with pytest.raises(InvalidAlgebra, match="order 2"):
        MetricLieAlgebra.from_brackets(2, {}, gram=[[1, 0], [0, -1]])
    with pytest.raises(InvalidAlgebra, match="symmetric"):
        MetricLieAlgebra.from_brackets(2, {}, gram=[[1, 1], [0, 1]])


def test_inconsistent_brackets():
    with pytest.raises(InvalidAlgebra):
        MetricLieAlgebra.from_brackets(2, {(0, 1): {1: 1}, (1, 0): {1: 1}})
    with pytest.raises(InvalidAlgebra):
        MetricLieAlgebra.from_brackets(2, {(0, 0): {1: 1}})


# -------------------------------------------------------------- connection

def test_heisenberg_connection():
    h = build("heisenberg-h3")
    e = [h.basis_vector(i) for i in range(3)]
    assert h.nabla(e[0], e[1]) == (0, 0, HALF)
    assert h.nabla(e[0], e[2]) == (0, -HALF, 0)
    assert h.nabla(e[2], e[2]) == (0, 0, 0)


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("seed", [None, 11])
def test_connection_metric_and_torsion_free(name, seed):
    alg = build(name) if seed is None else with_random_gram(name, seed)
    n = alg.n
    e = [alg.basis_vector(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            torsion = tuple(a - b - c for a, b, c in zip(alg.nabla(e[i], e[j]), alg.nabla(e[j], e[i]),
                                                         alg.bracket(e[i], e[j])))
            assert not any(torsion)
            for k in range(n):
                assert alg.inner(alg.nabla(e[i], e[j]), e[k]) + alg.inner(e[j], alg.nabla(e[i], e[k])) == 0


def test_bi_invariant_connection_is_half_bracket():
    su2 = build("milnor(1,1,1)")
    for i in range(3):
        for j in range(3):
            x, z = su2.basis_vector(i), su2.basis_vector(j)
            assert su2.nabla(x, z) == tuple(HALF * c for c in su2.bracket(x, z))


# ------------------------------------------------------------------ d, delta

def test_heisenberg_d_on_vectors():
    h = build("heisenberg-h3")
    assert h.d(y(3, 0)) == -y(3, 1, 2)
    assert h.d(y(3, 1)) == y(3, 0, 2)
    assert h.d(y(3, 2)).is_zero()


@pytest.mark.parametrize("abc", [(1, 2, 3), (1, -2, 3), (2, 2, 5)])
def test_milnor_d_on_vectors(abc):
    a, b, c = abc
    alg = build(f"milnor({a},{b},{c})")
    alpha, beta, gamma = c - a, a - b, b - c
    assert alg.d(y(3, 0)) == y(3, 1, 2) * alpha
    assert alg.d(y(3, 1)) == y(3, 0, 2) * beta
    assert alg.d(y(3, 2)) == y(3, 0, 1) * gamma


@pytest.mark.parametrize("name", CATALOG)
def test_d_on_vectors_is_minus_twice_symmetric_part(name):
    for alg in (build(name), with_random_gram(name, 3)):
        for i in range(alg.n):
            x = alg.basis_vector(i)
            assert alg.d(SymTensor.vector(x)) == sym_of_endo(alg.ad(x), alg.gram) * -2


def test_solvable2_hand_values():
    # nabla_{e2} e1 = -e2, nabla_{e2} e2 = e1, nabla_{e1} = 0
    s = build("solvable2")
    assert s.d(y(2, 1)) == y(2, 0, 1)
    assert s.delta(y(2, 0, 1)) == y(2, 1) * 2
    assert s.delta(y(2, 0)) == SymTensor.scalar(2, 1)
    # <d e2, e1 e2> = 1 but <e2, delta(e1 e2)> = 2
    ctx = s.gram
    assert inner_product(s.d(y(2, 1)), y(2, 0, 1), ctx) == 1
    assert inner_product(y(2, 1), s.delta(y(2, 0, 1)), ctx) == 2


@pytest.mark.parametrize("name", ["heisenberg-h3", "milnor(1,2,3)", "solvable2", "h3-plus-R"])
def test_operator_commutators(name):
    alg = with_random_gram(name, 5)
    ctx = alg.gram
    for p in range(4):
        for e in monomials(alg.n, p):
            K = SymTensor.monomial(e)
            assert lambda_op(alg.d(K), ctx) - alg.d(lambda_op(K, ctx)) == alg.delta(K) * -2
            assert lefschetz_L(alg.d(K), ctx) == alg.d(lefschetz_L(K, ctx))
            assert lambda_op(alg.delta(K), ctx) == alg.delta(lambda_op(K, ctx))


@pytest.mark.parametrize("name", CATALOG)
def test_adjointness_iff_unimodular(name):
    alg = build(name)
    adjoint = all(adjointness_witness(alg, p) is None for p in range(3))
    assert adjoint == alg.predicates.is_unimodular


def test_adjointness_with_random_gram():
    alg = with_random_gram("heisenberg-h3", 2)
    assert all(adjointness_witness(alg, p) is None for p in range(4))
    s = with_random_gram("solvable2", 2)
    A, B, lhs, rhs = adjointness_witness(s, 1)
    assert inner_product(s.d(A), B, s.gram) == lhs != rhs == inner_product(A, s.delta(B), s.gram)


@given(st.integers(0, 10**6))
def test_d_is_basis_independent(seed):
    rng = random.Random(seed)
    alg = build(rng.choice(["heisenberg-h3", "milnor(1,2,3)", "solvable2"]))
    alg = alg.with_gram(random_gram(alg.n, rng))
    while True:
        B = Matrix([[rng.randint(-2, 2) for _ in range(alg.n)] for _ in range(alg.n)])
        if B.rank() == alg.n:
            break
    moved = alg.change_basis(B)
    from killingtype.symalg import change_basis

    K = SymTensor.from_vector(alg.n, 2, [rng.randint(-2, 2) for _ in monomials(alg.n, 2)])
    assert change_basis(alg.d(K), B) == moved.d(change_basis(K, B))
    assert change_basis(alg.delta(K), B) == moved.delta(change_basis(K, B))


# -------------------------------------------------------------- predicates

def test_predicates():
    h = build("heisenberg-h3").predicates
    assert h.center.dim == 1 and h.center == h.derived and h.is_two_step_nilpotent
    su2 = build("milnor(1,1,1)").predicates
    assert su2.is_ad_invariant_metric and su2.center.dim == 0
    f = build("free-2step-3gen").predicates
    assert f.center == f.derived and f.center.dim == 3
    assert f.center.basis == ((0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1))
    s = build("solvable2").predicates
    assert not s.is_unimodular and not s.is_two_step_nilpotent
    assert build("abelian(2)").predicates.is_abelian


# ---------------------------------------------------------------------- I/O

@pytest.mark.parametrize("name", CATALOG)
def test_document_roundtrip(name):
    alg = with_random_gram(name, 4)
    doc = json.loads(write_json(algebra_to_doc(alg)))
    back = algebra_from_doc(doc)
    assert back.table == alg.table and back.gram.gram == alg.gram.gram and back.labels == alg.labels


@pytest.mark.parametrize("doc", [
    [],
    {"dimension": 0},
    {"dimension": 2, "brackets": [{"i": 2, "j": 1, "result": {"1": "1"}}]},
    {"dimension": 2, "brackets": [{"i": 1, "j": 2, "result": {"3": "1"}}]},
    {"dimension": 2, "brackets": [{"i": 1, "j": 2, "result": {"2": "1/0"}}]},
    {"dimension": 2, "gram": [["1"]]},
])
def test_malformed_documents(doc):
    with pytest.raises((DocumentError, InvalidAlgebra)):
        algebra_from_doc(doc)


def test_tensor_literal_roundtrip():
    K = SymTensor(3, 2, {(1, 1, 0): Fraction(3, 2), (0, 0, 2): -1})
    lit = tensor_to_literal(K)
    assert lit == {"degree": 2, "coeffs": {"1,1,0": "3/2", "0,0,2": "-1"}}
    assert tensor_from_literal(lit, 3) == K
    with pytest.raises(DocumentError):
        tensor_from_literal({"degree": 2, "coeffs": {"1,0": "1"}}, 3)
