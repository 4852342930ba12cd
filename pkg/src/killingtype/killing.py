"""Killing and conformal Killing tensors, degree by degree.

Everything reduces to exact linear algebra on the operator matrices of d and
L between monomial bases:

    Killing            ker d_p
    conformal Killing  d_p^-1(Im L_{p-1})
    Killing type       ker d_p + Im L_{p-2}

The algebra is of Killing type in degree p when the last two spaces agree,
equivalently when Im d_p and Im L_{p-1} meet exactly in Im(L_{p-1} d_{p-2}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lie import MetricLieAlgebra
from .linalg import Subspace, column_rank, image, kernel, map_subspace, preimage, solve
from .symalg import SymTensor, dim_sym, lambda_op, lefschetz_L, trace_free_decompose


@dataclass
class KillingTypeReport:
    p: int
    dim_sym: int
    dim_killing: int
    dim_image_L: int
    dim_conformal: int
    dim_killing_type: int
    verdict: bool
    cross_check: bool
    witness: SymTensor | None = None
    labels: tuple[str, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        from .io import tensor_to_literal

        out = {
            "p": self.p,
            "dim_sym": self.dim_sym,
            "dim_killing": self.dim_killing,
            "dim_image_L": self.dim_image_L,
            "dim_conformal": self.dim_conformal,
            "dim_killing_type": self.dim_killing_type,
            "verdict": self.verdict,
            "cross_check": self.cross_check,
        }
        if self.witness is not None:
            out["witness"] = tensor_to_literal(self.witness)
        return out


def _tensors(space: Subspace, n: int, p: int) -> list[SymTensor]:
    return [SymTensor.from_vector(n, p, v) for v in space.basis]


def killing_space(alg: MetricLieAlgebra, p: int) -> Subspace:
    """ker d_p inside Sym^p, in monomial coordinates."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    return kernel(alg.d_matrix(p))


def image_L(alg: MetricLieAlgebra, p: int) -> Subspace:
    """L(Sym^(p-2)) inside Sym^p."""
    if p < 2:
        return Subspace.zero(dim_sym(alg.n, p))
    return image(alg.L_matrix(p - 2))


def conformal_killing_space(alg: MetricLieAlgebra, p: int) -> Subspace:
    if p < 0:
        raise ValueError("degree must be non-negative")
    return preimage(alg.d_matrix(p), alg.L_matrix(p - 1))


def killing_type_space(alg: MetricLieAlgebra, p: int) -> Subspace:
    return Subspace.span(list(killing_space(alg, p).basis) + alg.L_matrix(p - 2).columns(), dim_sym(alg.n, p))


def killing_basis(alg: MetricLieAlgebra, p: int) -> list[SymTensor]:
    return _tensors(killing_space(alg, p), alg.n, p)


def conformal_killing_basis(alg: MetricLieAlgebra, p: int) -> list[SymTensor]:
    return _tensors(conformal_killing_space(alg, p), alg.n, p)


def tracefree_conformal_basis(alg: MetricLieAlgebra, p: int) -> list[SymTensor]:
    """A basis of the trace-free conformal Killing p-tensors.

    Trace-free parts of conformal Killing tensors are again conformal Killing,
    so projecting a basis of the whole space spans this subspace.
    """
    parts = [trace_free_decompose(K, alg.gram)[0].to_vector() for K in conformal_killing_basis(alg, p)]
    return _tensors(Subspace.span(parts, dim_sym(alg.n, p)), alg.n, p)


def is_killing(alg: MetricLieAlgebra, K: SymTensor) -> bool:
    return alg.d(K).is_zero()


def is_conformal_killing(alg: MetricLieAlgebra, K: SymTensor) -> bool:
    return conformal_factor(alg, K) is not None


def conformal_factor(alg: MetricLieAlgebra, K: SymTensor) -> SymTensor | None:
    """The B with dK = L·B, or None when K is not conformal Killing."""
    dK = alg.d(K)
    p = K.degree
    if dK.is_zero():
        return SymTensor.zero(alg.n, p - 1)
    if p < 1:
        return None
    sol = solve(alg.L_matrix(p - 1), dK.to_vector())
    if sol is None:
        return None
    return SymTensor.from_vector(alg.n, p - 1, sol)


def killing_completion(alg: MetricLieAlgebra, K: SymTensor) -> SymTensor | None:
    """Some R of degree p-2 with K + L·R Killing, or None if none exists."""
    p = K.degree
    dK = alg.d(K)
    if dK.is_zero():
        return SymTensor.zero(alg.n, p - 2)
    if p < 2:
        return None
    system = alg.d_matrix(p) @ alg.L_matrix(p - 2)
    sol = solve(system, (-dK).to_vector())
    if sol is None:
        return None
    return SymTensor.from_vector(alg.n, p - 2, sol)


def check_killing_type(alg: MetricLieAlgebra, p: int) -> KillingTypeReport:
    """Decide whether every conformal Killing p-tensor is of Killing type."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    n = alg.n
    D = alg.d_matrix(p)
    ker = kernel(D)
    L_prev = alg.L_matrix(p - 2)  # Sym^(p-2) -> Sym^p
    L_next = alg.L_matrix(p - 1)  # Sym^(p-1) -> Sym^(p+1)
    kt = Subspace.span(list(ker.basis) + L_prev.columns(), dim_sym(n, p))
    ck = preimage(D, L_next)
    verdict = kt.dim == ck.dim

    # second formulation: Im d ∩ Im L, which is d(CK), against Im(L d)
    meet = map_subspace(D, ck)
    ld = image(L_next @ alg.d_matrix(p - 2))
    cross_verdict = meet == ld
    witness = None
    if not verdict:
        for v in ck.basis:
            r = kt.reduce(v)
            if any(r):
                witness = SymTensor.from_vector(n, p, r).content_normalized()
                break
    return KillingTypeReport(
        p=p,
        dim_sym=dim_sym(n, p),
        dim_killing=ker.dim,
        dim_image_L=column_rank(L_prev),
        dim_conformal=ck.dim,
        dim_killing_type=kt.dim,
        verdict=verdict,
        cross_check=cross_verdict == verdict,
        witness=witness,
        labels=alg.labels,
    )


def check_killing_type_range(alg: MetricLieAlgebra, max_degree: int) -> list[KillingTypeReport]:
    return [check_killing_type(alg, p) for p in range(max_degree + 1)]


def tracefree_constant(n: int, p: int) -> Fraction:
    """a0 = -1/(n + 2p - 2)."""
    return Fraction(-1, n + 2 * p - 2)


def verify_tracefree_ck(alg: MetricLieAlgebra, K0: SymTensor) -> bool:
    """For trace-free K0: is dK0 = a0·L·deltaK0?"""
    if not lambda_op(K0, alg.gram).is_zero():
        raise ValueError("tensor is not trace-free")
    p = K0.degree
    if p == 0:
        return alg.d(K0).is_zero()
    a0 = tracefree_constant(alg.n, p)
    return alg.d(K0) == lefschetz_L(alg.delta(K0), alg.gram) * a0


def in_image_of_d(alg: MetricLieAlgebra, T: SymTensor) -> bool:
    """Is T = dS for some S of degree deg T - 1?"""
    if T.is_zero():
        return True
    if T.degree < 1:
        return False
    return solve(alg.d_matrix(T.degree - 1), T.to_vector()) is not None


def equivalences_extK0(alg: MetricLieAlgebra, K: SymTensor) -> dict[str, bool]:
    """The four statements that coincide for a conformal Killing tensor K.

    killing_type: K + L·R is Killing for some R
    trace_free_killing_type: the same for the trace-free part K0
    factor_exact: the conformal factor B lies in Im d
    divergence_exact: delta K0 lies in Im d
    """
    B = conformal_factor(alg, K)
    if B is None:
        raise ValueError("tensor is not conformal Killing")
    K0, _ = trace_free_decompose(K, alg.gram)
    return {
        "killing_type": killing_completion(alg, K) is not None,
        "trace_free_killing_type": killing_completion(alg, K0) is not None,
        "factor_exact": in_image_of_d(alg, B),
        "divergence_exact": in_image_of_d(alg, alg.delta(K0)),
    }
