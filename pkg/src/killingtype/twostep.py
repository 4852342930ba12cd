"""Operators adapted to a 2-step nilpotent metric Lie algebra n = v ⊕ z.

z is the center and v its orthogonal complement. The algebra is rewritten
in a basis listing a basis of v first and a basis of z second; both are
rational, so the Gram matrix becomes block diagonal without square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .killing import in_image_of_d, tracefree_constant
from .lie import MetricLieAlgebra
from .linalg import ZERO, Matrix, kernel
from .symalg import SymTensor, change_basis, lambda_op, monomials, quadratic_tensor, second_order


class NotTwoStep(ValueError):
    pass


def _masked(m: Matrix, keep: range) -> Matrix:
    return Matrix([[x if i in keep and j in keep else ZERO for j, x in enumerate(row)] for i, row in enumerate(m.rows)])


@dataclass(frozen=True, eq=False)
class TwoStepContext:
    original: MetricLieAlgebra
    basis: Matrix  # columns: adapted basis in original coordinates
    alg: MetricLieAlgebra  # the same algebra in the adapted basis
    n_v: int
    n_z: int

    @classmethod
    def build(cls, alg: MetricLieAlgebra) -> TwoStepContext:
        pred = alg.predicates
        if not pred.is_two_step_nilpotent:
            raise NotTwoStep(f"{alg.name or 'algebra'} is not 2-step nilpotent")
        n = alg.n
        z_basis = list(pred.center.basis)
        # v = {x : g(x, z) = 0 for z in the center}
        constraints = Matrix([alg.gram.lower(zb) for zb in z_basis], n)
        v_basis = list(kernel(constraints).basis)
        B = Matrix.from_columns(v_basis + z_basis, n)
        n_v, n_z = len(v_basis), len(z_basis)
        if B == Matrix.identity(n):
            labels = alg.labels
        else:
            labels = [f"v{i + 1}" for i in range(n_v)] + [f"z{i + 1}" for i in range(n_z)]
        adapted = alg.change_basis(B, labels)
        return cls(alg, B, adapted, n_v, n_z)

    @property
    def n(self) -> int:
        return self.n_v + self.n_z

    @property
    def v_indices(self) -> range:
        return range(self.n_v)

    @property
    def z_indices(self) -> range:
        return range(self.n_v, self.n)

    def to_adapted(self, K: SymTensor) -> SymTensor:
        """Rewrite a tensor given in the original basis."""
        return change_basis(K, self.basis)

    def gram_is_block_diagonal(self) -> bool:
        g = self.alg.gram.gram.rows
        return all(not g[i][j] for i in self.v_indices for j in self.z_indices)

    # -- j(z)

    def j(self, z: int) -> Matrix:
        """j(z_c) on v as an n_v x n_v matrix: g(j(z)x, y) = g(z, [x, y])."""
        a = self.alg
        zc = self.n_v + z
        nv = self.n_v
        W = Matrix([[a.inner(a.basis_vector(zc), a.bracket(a.basis_vector(i), a.basis_vector(k)))
                     for k in range(nv)] for i in range(nv)])
        gv = Matrix([[a.gram.gram.rows[i][k] for k in range(nv)] for i in range(nv)])
        return (gv.inverse() @ W).scale(-1)

    def j_is_skew(self, z: int) -> bool:
        nv = self.n_v
        gv = Matrix([[self.alg.gram.gram.rows[i][k] for k in range(nv)] for i in range(nv)])
        J = self.j(z)
        return (gv @ J + J.T @ gv).is_zero()

    # -- split operators

    def L_v(self, K: SymTensor) -> SymTensor:
        return quadratic_tensor(_masked(self.alg.gram.gram_inv, self.v_indices)) * K

    def L_z(self, K: SymTensor) -> SymTensor:
        return quadratic_tensor(_masked(self.alg.gram.gram_inv, self.z_indices)) * K

    def Lambda_v(self, K: SymTensor) -> SymTensor:
        return second_order(K, _masked(self.alg.gram.gram, self.v_indices))

    def Lambda_z(self, K: SymTensor) -> SymTensor:
        return second_order(K, _masked(self.alg.gram.gram, self.z_indices))

    def deg_v(self, K: SymTensor) -> SymTensor:
        return SymTensor._raw(K.n, K.degree, {e: c * sum(e[i] for i in self.v_indices)
                                              for e, c in K.coeffs.items() if sum(e[i] for i in self.v_indices)})

    def deg_z(self, K: SymTensor) -> SymTensor:
        return SymTensor._raw(K.n, K.degree, {e: c * sum(e[i] for i in self.z_indices)
                                              for e, c in K.coeffs.items() if sum(e[i] for i in self.z_indices)})

    def component(self, K: SymTensor, l: int) -> SymTensor:
        """K^(l): the part of v-degree l (zero when l is out of range)."""
        if l < 0:
            return SymTensor.zero(K.n, K.degree)
        return K.project(self.v_indices, l)

    def Lambda_z_power(self, K: SymTensor, r: int) -> SymTensor:
        for _ in range(r):
            K = self.Lambda_z(K)
        return K

    # -- identities

    def split_commutators_hold(self, p: int) -> bool:
        """[Λ_v,L_v] = 2n_v + 4deg_v, [Λ_z,L_z] = 2n_z + 4deg_z, cross terms commute."""
        for e in monomials(self.n, p):
            K = SymTensor.monomial(e)
            if self.Lambda_v(self.L_v(K)) - self.L_v(self.Lambda_v(K)) != K * (2 * self.n_v) + self.deg_v(K) * 4:
                return False
            if self.Lambda_z(self.L_z(K)) - self.L_z(self.Lambda_z(K)) != K * (2 * self.n_z) + self.deg_z(K) * 4:
                return False
            if self.Lambda_z(self.L_v(K)) != self.L_v(self.Lambda_z(K)):
                return False
            if self.Lambda_v(self.L_z(K)) != self.L_z(self.Lambda_v(K)):
                return False
        return True

    def d_respects_grading(self, p: int) -> bool:
        """d kills Sym z and maps Sym^a v·Sym^q z into Sym^a v·Sym^(q+1) z."""
        for e in monomials(self.n, p):
            a = sum(e[i] for i in self.v_indices)
            dK = self.alg.d(SymTensor.monomial(e))
            if a == 0 and not dK.is_zero():
                return False
            if dK.variable_degree(self.v_indices) - {a}:
                return False
        return True

    def delta_respects_grading(self, p: int) -> bool:
        """delta kills Sym z and Sym v and lowers the z-degree by one."""
        for e in monomials(self.n, p):
            a = sum(e[i] for i in self.v_indices)
            dK = self.alg.delta(SymTensor.monomial(e))
            if (a == 0 or a == p) and not dK.is_zero():
                return False
            if dK.variable_degree(self.v_indices) - {a}:
                return False
        return True


def b_sequence(n_v: int, l: int, r_max: int) -> list[int]:
    """b_0 = 0, b_(r+1) = b_r - 2n_v - 4(l + 2r)."""
    out = [0]
    for r in range(r_max):
        out.append(out[-1] - 2 * n_v - 4 * (l + 2 * r))
    return out


def verify_Hr(ctx: TwoStepContext, K0: SymTensor, l: int, r: int, check_hypotheses: bool = True) -> bool:
    """Evaluate both sides of the recursion identity for a trace-free conformal Killing K0.

    K0 is given in the adapted basis. The identity reads

        d Λ_z^r K0^(l) = a0 (L_z δ Λ_z^r K0^(l) + L_v δ Λ_z^r K0^(l-2) + b_r δ Λ_z^(r-1) K0^(l))

    with a0 = -1/(n + 2p - 2); the b_r term is absent for r = 0.
    """
    alg = ctx.alg
    p = K0.degree
    if check_hypotheses:
        from .killing import is_conformal_killing

        if not lambda_op(K0, alg.gram).is_zero():
            raise ValueError("tensor is not trace-free")
        if not is_conformal_killing(alg, K0):
            raise ValueError("tensor is not conformal Killing")
    if l < 0 or l > p or r < 0:
        raise ValueError("need 0 <= l <= p and r >= 0")
    a0 = tracefree_constant(ctx.n, p) if ctx.n + 2 * p - 2 else Fraction(0)
    Kl = ctx.component(K0, l)
    Kl2 = ctx.component(K0, l - 2)
    X = ctx.Lambda_z_power(Kl, r)
    lhs = alg.d(X)
    rhs = ctx.L_z(alg.delta(X)) + ctx.L_v(alg.delta(ctx.Lambda_z_power(Kl2, r)))
    if r >= 1:
        b = b_sequence(ctx.n_v, l, r)[r]
        rhs = rhs + alg.delta(ctx.Lambda_z_power(Kl, r - 1)) * b
    return lhs == rhs * a0


def divergence_in_image(ctx: TwoStepContext, K0: SymTensor) -> bool:
    """δK0 ∈ Im d (in the adapted basis)."""
    return in_image_of_d(ctx.alg, ctx.alg.delta(K0))
