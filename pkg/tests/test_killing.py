from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from killingtype.catalog import build
from killingtype.constructions import MilnorBasis, milnor_J
from killingtype.killing import (
    check_killing_type,
    conformal_factor,
    conformal_killing_space,
    equivalences_extK0,
    is_conformal_killing,
    is_killing,
    killing_completion,
    killing_space,
    killing_type_space,
    tracefree_constant,
    verify_tracefree_ck,
)
from killingtype.linalg import Matrix, Subspace
from killingtype.symalg import SymTensor, dim_sym, lambda_op, lefschetz_L, metric_tensor, monomials, trace_free_decompose

from conftest import CATALOG, with_random_gram


def y(n, *idx):
    out = SymTensor.scalar(n)
    for i in idx:
        out = out * SymTensor.variable(n, i)
    return out


def free_example():
    """T, K, R and K0 on the free 2-step algebra with three generators."""
    alg = build("free-2step-3gen")
    e = [SymTensor.variable(6, i) for i in range(6)]
    T = e[0] * e[5] - e[1] * e[4] + e[2] * e[3]
    K = T * (e[3] + e[4] + e[5])
    R = (e[0] - e[1] + e[2]) * Fraction(1, 8)
    K0 = K - lefschetz_L(R, alg.gram)
    return alg, T, K, R, K0


# ------------------------------------------------------------------ spaces

def test_heisenberg_killing_vectors_against_hand_matrix():
    # d y1 = -y2 y3, d y2 = y1 y3, d y3 = 0; rows follow monomials(3, 2)
    rows = [[0, 0, 0] for _ in range(6)]
    rows[4][0] = -1
    rows[2][1] = 1
    oracle = sympy.Matrix(rows).nullspace()
    h = build("heisenberg-h3")
    assert h.d_matrix(1) == Matrix(rows)
    ker = killing_space(h, 1)
    assert ker.dim == len(oracle) == 1
    assert ker == Subspace.span([[int(x) for x in oracle[0]]], 3)


def test_milnor_quadratic_killing_tensors():
    m = MilnorBasis(1, 2, 3)
    alg = build("milnor(1,2,3)")
    ker = killing_space(alg, 2)
    assert ker.dim == 2
    assert ker == Subspace.span([metric_tensor(alg.gram).to_vector(), milnor_J(m).to_vector()], 6)


def test_bi_invariant_everything_killing():
    alg = build("milnor(1,1,1)")
    for p in range(5):
        assert killing_space(alg, p).dim == dim_sym(3, p)


@pytest.mark.parametrize("name", CATALOG)
def test_low_degree_conformal_is_killing(name):
    alg = with_random_gram(name, 8)
    for p in (0, 1, 2):
        assert conformal_killing_space(alg, p) == killing_space(alg, p)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        killing_space(build("solvable2"), -1)
    with pytest.raises(ValueError):
        check_killing_type(build("solvable2"), -1)


# ---------------------------------------------------------- worked example

def test_free_example_values():
    alg, T, K, R, K0 = free_example()
    assert is_killing(alg, T)
    assert is_killing(alg, K)
    assert lambda_op(K, alg.gram) == (y(6, 0) - y(6, 1) + y(6, 2)) * 2
    assert lambda_op(K, alg.gram) == R * 16
    dec0, decR = trace_free_decompose(K, alg.gram)
    assert dec0 == K0 and decR == R
    assert lambda_op(K0, alg.gram).is_zero()


def test_free_example_conformal_not_killing():
    alg, _, K, R, K0 = free_example()
    assert not is_killing(alg, K0)
    assert K0.to_vector() in conformal_killing_space(alg, 3)
    assert conformal_factor(alg, K0) == -alg.d(R)
    assert tracefree_constant(6, 3) == Fraction(-1, 10)
    assert verify_tracefree_ck(alg, K0)
    completion = killing_completion(alg, K0)
    assert completion is not None
    assert is_killing(alg, K0 + lefschetz_L(completion, alg.gram))
    assert is_killing(alg, K0 + lefschetz_L(R, alg.gram))
    assert equivalences_extK0(alg, K0) == dict.fromkeys(
        ["killing_type", "trace_free_killing_type", "factor_exact", "divergence_exact"], True)


def test_conformal_factor_of_pure_trace():
    alg = with_random_gram("solvable2", 1)
    Rt = y(2, 0, 1) + y(2, 1, 1) * 3
    assert conformal_factor(alg, lefschetz_L(Rt, alg.gram)) == alg.d(Rt)


def test_killing_tensor_has_zero_factor_and_completion():
    alg, T, *_ = free_example()
    assert conformal_factor(alg, T).is_zero()
    assert killing_completion(alg, T).is_zero()
    assert all(equivalences_extK0(alg, T).values())


def test_milnor_xy_not_conformal():
    alg = build("milnor(1,2,3)")
    K = y(3, 0, 1)
    assert conformal_factor(alg, K) is None
    assert not is_conformal_killing(alg, K)
    assert killing_completion(alg, K) is None
    with pytest.raises(ValueError):
        equivalences_extK0(alg, K)


def test_tracefree_check_rejects_trace():
    alg = build("milnor(1,2,3)")
    with pytest.raises(ValueError):
        verify_tracefree_ck(alg, y(3, 0, 0))
    assert verify_tracefree_ck(alg, SymTensor.zero(3, 3))


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_tracefree_criterion_matches_membership(seed, p):
    rng = random.Random(seed)
    alg = build("milnor(1,2,3)")
    K = SymTensor.from_vector(3, p, [rng.randint(-3, 3) for _ in monomials(3, p)])
    K0, _ = trace_free_decompose(K, alg.gram)
    assert verify_tracefree_ck(alg, K0) == (K0.to_vector() in conformal_killing_space(alg, p))


@given(st.integers(0, 10**6), st.sampled_from(CATALOG), st.integers(2, 3))
def test_equivalences_coincide(seed, name, p):
    rng = random.Random(seed)
    alg = with_random_gram(name, seed % 7)
    basis = conformal_killing_space(alg, p).basis
    if not basis:
        return
    coeffs = [rng.randint(-2, 2) for _ in basis]
    vec = [sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(dim_sym(alg.n, p))]
    flags = equivalences_extK0(alg, SymTensor.from_vector(alg.n, p, vec))
    assert len(set(flags.values())) == 1


# ------------------------------------------------------------------ reports

@pytest.mark.parametrize("name", CATALOG)
def test_report_invariants(name):
    alg = with_random_gram(name, 2)
    for p in range(5):
        rep = check_killing_type(alg, p)
        assert rep.dim_killing_type <= rep.dim_conformal
        assert rep.verdict == (rep.dim_killing_type == rep.dim_conformal) == (rep.witness is None)
        assert rep.cross_check
        assert rep.dim_killing_type == killing_type_space(alg, p).dim
        assert rep.dim_sym == dim_sym(alg.n, p)
        if p <= 2:
            assert rep.verdict


class _Stub:
    """An abelian plane whose d_1 is replaced by y1 -> L, y2 -> 0.

    Such a d comes from no Lie algebra; it gives a conformal vector that no
    trace correction can fix, which exercises the witness path.
    """

    def __init__(self):
        self._base = build("abelian(2)")
        self.n = 2
        self.labels = self._base.labels

    def d_matrix(self, p):
        if p == 1:
            return Matrix([[1, 0], [0, 0], [1, 0]])
        return self._base.d_matrix(p)

    def L_matrix(self, p):
        return self._base.L_matrix(p)


def test_witness_extracted_when_verdict_fails():
    rep = check_killing_type(_Stub(), 1)
    assert not rep.verdict
    assert (rep.dim_conformal, rep.dim_killing_type, rep.dim_killing) == (2, 1, 1)
    assert rep.witness == y(2, 0)
    assert rep.cross_check
    assert rep.to_dict()["witness"] == {"degree": 1, "coeffs": {"1,0": "1"}}
