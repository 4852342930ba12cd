from __future__ import annotations

import random

import pytest

from killingtype.catalog import build
from killingtype.killing import tracefree_conformal_basis
from killingtype.linalg import Matrix
from killingtype.symalg import SymTensor, lambda_op, lefschetz_L, monomials, trace_free_decompose
from killingtype.twostep import NotTwoStep, TwoStepContext, b_sequence, divergence_in_image, verify_Hr

from conftest import TWO_STEP, with_random_gram


def contexts():
    for name in TWO_STEP:
        yield name, TwoStepContext.build(build(name))
        yield f"{name} seed 6", TwoStepContext.build(with_random_gram(name, 6))


CONTEXTS = dict(contexts())


def test_heisenberg_j():
    ctx = CONTEXTS["heisenberg-h3"]
    assert (ctx.n_v, ctx.n_z) == (2, 1)
    assert ctx.basis == Matrix.identity(3)
    assert ctx.j(0) == Matrix([[0, -1], [1, 0]])
    assert ctx.j_is_skew(0)


def test_b_sequence():
    assert b_sequence(2, 0, 2) == [0, -4, -16]
    assert b_sequence(4, 1, 3) == [0, -12, -32, -60]


def test_not_two_step():
    for name in ("milnor(1,2,3)", "abelian(3)", "solvable2"):
        with pytest.raises(NotTwoStep):
            TwoStepContext.build(build(name))


@pytest.mark.parametrize("key", list(CONTEXTS))
def test_adapted_basis(key):
    ctx = CONTEXTS[key]
    assert ctx.gram_is_block_diagonal()
    assert all(ctx.j_is_skew(z) for z in range(ctx.n_z))
    # the z block really is the center
    a = ctx.alg
    for zc in ctx.z_indices:
        for i in range(ctx.n):
            assert not any(a.bracket(a.basis_vector(zc), a.basis_vector(i)))


@pytest.mark.parametrize("key", list(CONTEXTS))
def test_split_operators_recombine(key):
    ctx = CONTEXTS[key]
    g = ctx.alg.gram
    rng = random.Random(0)
    for p in range(4):
        K = SymTensor.from_vector(ctx.n, p, [rng.randint(-3, 3) for _ in monomials(ctx.n, p)])
        assert ctx.L_v(K) + ctx.L_z(K) == lefschetz_L(K, g)
        assert ctx.Lambda_v(K) + ctx.Lambda_z(K) == lambda_op(K, g)
        parts = [ctx.component(K, l) for l in range(p + 1)]
        assert sum(parts[1:], parts[0]) == K
        assert ctx.deg_v(K) + ctx.deg_z(K) == K * p


@pytest.mark.parametrize("key", list(CONTEXTS))
def test_split_identities(key):
    ctx = CONTEXTS[key]
    for p in range(4):
        assert ctx.split_commutators_hold(p)
        assert ctx.d_respects_grading(p)
        assert ctx.delta_respects_grading(p)


@pytest.mark.parametrize("key", ["heisenberg-h3", "free-2step-3gen", "h3-plus-R seed 6"])
def test_recursion_on_tracefree_conformal_tensors(key):
    ctx = CONTEXTS[key]
    for p in range(1, 4):
        for K0 in tracefree_conformal_basis(ctx.alg, p):
            assert divergence_in_image(ctx, K0)
            for l in range(p + 1):
                for r in range(3):
                    assert verify_Hr(ctx, K0, l, r)


def test_recursion_is_not_vacuous():
    # a trace-free tensor that is not conformal Killing breaks the identity somewhere
    ctx = CONTEXTS["heisenberg-h3"]
    K0, _ = trace_free_decompose(SymTensor.monomial((2, 1, 0)), ctx.alg.gram)
    with pytest.raises(ValueError):
        verify_Hr(ctx, K0, 1, 0)
    assert not all(verify_Hr(ctx, K0, l, r, check_hypotheses=False) for l in range(4) for r in range(2))


def test_recursion_argument_checks():
    ctx = CONTEXTS["heisenberg-h3"]
    K0 = tracefree_conformal_basis(ctx.alg, 2)[0]
    with pytest.raises(ValueError):
        verify_Hr(ctx, K0, 3, 0)
    with pytest.raises(ValueError):
        verify_Hr(ctx, K0, 0, -1)
    with pytest.raises(ValueError):
        verify_Hr(ctx, SymTensor.monomial((2, 0, 0)), 0, 0)
