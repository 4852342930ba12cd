"""Metric Lie algebras given by structure constants.

An algebra is stored with the full antisymmetric table of brackets of basis
vectors together with a Gram matrix. From it we build the Levi-Civita
connection of the left-invariant metric (Koszul formula) and the first-order
operators

    d K     = sum_kl (G^-1)_kl y_k  D_{A_l} K
    delta K = -sum_ij (G^-1)_ij  b_i -| D_{A_j} K

on symmetric tensors, where A_l = nabla_{b_l} acts as a derivation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .linalg import ONE, ZERO, Matrix, Subspace, as_rational, first_nonpositive_minor, kernel
from .symalg import (
    GramContext,
    SymTensor,
    apply_derivation,
    contract,
    derivation_apply,
    dim_sym,
    inner_product_matrix,
    lambda_op,
    lefschetz_L,
    monomials,
    operator_matrix,
)

HALF = Fraction(1, 2)


class InvalidAlgebra(ValueError):
    """Raised when brackets or metric fail validation; ``problems`` lists why."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class DegreeOperators:
    """Matrices of d: Sym^p -> Sym^(p+1) and delta: Sym^p -> Sym^(p-1)."""

    p: int
    d_matrix: Matrix
    delta_matrix: Matrix


@dataclass(frozen=True)
class StructuralPredicates:
    center: Subspace
    derived: Subspace
    is_unimodular: bool
    is_two_step_nilpotent: bool
    is_ad_invariant_metric: bool
    is_abelian: bool

    def to_dict(self) -> dict:
        return {
            "center_dim": self.center.dim,
            "derived_dim": self.derived.dim,
            "is_unimodular": self.is_unimodular,
            "is_two_step_nilpotent": self.is_two_step_nilpotent,
            "is_ad_invariant_metric": self.is_ad_invariant_metric,
            "is_abelian": self.is_abelian,
        }


def _vec(values: Sequence, n: int) -> tuple[Fraction, ...]:
    if len(values) != n:
        raise ValueError(f"expected a vector of length {n}")
    return tuple(as_rational(v) for v in values)


class MetricLieAlgebra:
    """Lie algebra with a positive definite metric, in a fixed basis b_1..b_n.

    ``table[i][j]`` is the coordinate vector of [b_i, b_j] (0-based).
    Instances are immutable; derived operators are cached per instance.
    """

    def __init__(
        self,
        table: Sequence[Sequence[Sequence[Fraction]]],
        gram: GramContext,
        name: str = "",
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        n = len(table)
        self.n = n
        self.table = tuple(tuple(_vec(table[i][j], n) for j in range(n)) for i in range(n))
        self.gram = gram
        self.name = name
        self.labels = tuple(labels) if labels else tuple(f"e{i + 1}" for i in range(n))
        if gram.n != n:
            raise InvalidAlgebra([f"Gram matrix has size {gram.n}, algebra has dimension {n}"])
        if len(self.labels) != n:
            raise InvalidAlgebra(["wrong number of basis labels"])
        if check:
            problems = self.violations()
            if problems:
                raise InvalidAlgebra(problems)

    # ---------------------------------------------------------------- building

    @classmethod
    def from_brackets(
        cls,
        n: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        gram: Sequence[Sequence] | Matrix | GramContext | None = None,
        name: str = "",
        labels: Sequence[str] | None = None,
    ) -> MetricLieAlgebra:
        """Build from nonzero brackets {(i, j): {k: coeff}} with 0-based indices.

        Both (i, j) and (j, i) may be given as long as they are consistent.
        Raises InvalidAlgebra on Jacobi failure or a non positive definite Gram.
        """
        if n < 1:
            raise InvalidAlgebra(["dimension must be positive"])
        table = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        problems = []
        seen: dict[tuple[int, int], list[Fraction]] = {}
        for (i, j), result in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                problems.append(f"bracket index out of range: [{i + 1},{j + 1}]")
                continue
            vec = [ZERO] * n
            for k, c in result.items():
                if not 0 <= k < n:
                    problems.append(f"result index out of range in [{i + 1},{j + 1}]: {k + 1}")
                    continue
                vec[k] += as_rational(c)
            if i == j:
                if any(vec):
                    problems.append(f"[{i + 1},{i + 1}] must vanish")
                continue
            a, b, sign = (i, j, 1) if i < j else (j, i, -1)
            signed = [sign * v for v in vec]
            if (a, b) in seen and seen[(a, b)] != signed:
                problems.append(f"inconsistent values for [{a + 1},{b + 1}]")
            seen[(a, b)] = signed
        for (a, b), vec in seen.items():
            table[a][b] = vec
            table[b][a] = [-v for v in vec]
        if problems:
            raise InvalidAlgebra(problems)
        ctx = _gram_context(gram, n)
        return cls(table, ctx, name=name, labels=labels)

    def with_gram(self, gram: Sequence[Sequence] | Matrix | GramContext, name: str | None = None) -> MetricLieAlgebra:
        return MetricLieAlgebra(self.table, _gram_context(gram, self.n), self.name if name is None else name,
                                self.labels, check=False)

    def change_basis(self, basis: Matrix, labels: Sequence[str] | None = None) -> MetricLieAlgebra:
        """Same metric Lie algebra in the basis given by the columns of ``basis``."""
        binv = basis.inverse()
        cols = basis.columns()
        n = self.n
        table = [[binv @ self.bracket(cols[a], cols[b]) for b in range(n)] for a in range(n)]
        g = basis.T @ self.gram.gram @ basis
        return MetricLieAlgebra(table, GramContext(g, g.inverse()), self.name, labels, check=False)

    # ------------------------------------------------------------- validation

    def jacobi_violations(self) -> list[tuple[int, int, int, int]]:
        """Quadruples (i, j, k, l), 1-based, where the Jacobi sum has a nonzero l-component."""
        n, c = self.n, self.table
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        s = ZERO
                        for m in range(n):
                            s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                        if s:
                            out.append((i + 1, j + 1, k + 1, l + 1))
        return out

    def violations(self) -> list[str]:
        problems = []
        for i in range(self.n):
            for j in range(self.n):
                if self.table[i][j] != tuple(-v for v in self.table[j][i]):
                    problems.append(f"bracket table not antisymmetric at ({i + 1},{j + 1})")
        problems += [f"Jacobi identity fails for (i,j,k)=({i},{j},{k}) in component {l}"
                     for i, j, k, l in self.jacobi_violations()]
        g = self.gram.gram
        if not g.is_symmetric():
            problems.append("Gram matrix is not symmetric")
        else:
            bad = first_nonpositive_minor(g)
            if bad is not None:
                problems.append(f"Gram matrix is not positive definite: leading minor of order {bad} is not positive")
        return problems

    # ----------------------------------------------------------- basic algebra

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        return tuple(ONE if k == i else ZERO for k in range(self.n))

    def bracket(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        n = self.n
        out = [ZERO] * n
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if not y[j]:
                    continue
                f = x[i] * y[j]
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += f * c
        return tuple(out)

    def ad(self, x: Sequence) -> Matrix:
        x = _vec(x, self.n)
        return Matrix.from_columns([self.bracket(x, self.basis_vector(j)) for j in range(self.n)], self.n)

    def ad_star(self, x: Sequence) -> Matrix:
        """Metric adjoint G^-1 ad_x^T G."""
        return self.gram.gram_inv @ self.ad(x).T @ self.gram.gram

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        return self.gram.inner(u, v)

    @cached_property
    def connection(self) -> tuple[Matrix, ...]:
        """A_j = nabla_{b_j}, from nabla_x y = 1/2([x,y] - ad*_x y - ad*_y x)."""
        n = self.n
        stars = [self.ad_star(self.basis_vector(i)) for i in range(n)]
        out = []
        for j in range(n):
            cols = []
            for i in range(n):
                br = self.table[j][i]
                cols.append(tuple(HALF * (br[k] - stars[j].rows[k][i] - stars[i].rows[k][j]) for k in range(n)))
            out.append(Matrix.from_columns(cols, n))
        return tuple(out)

    def nabla(self, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
        x = _vec(x, self.n)
        y = _vec(y, self.n)
        out = [ZERO] * self.n
        for j, xj in enumerate(x):
            if xj:
                v = self.connection[j] @ y
                for k in range(self.n):
                    out[k] += xj * v[k]
        return tuple(out)

    # ------------------------------------------------------------ d and delta

    @cached_property
    def d_images(self) -> tuple[SymTensor, ...]:
        """d(y_b) for each basis vector; d is the derivation they determine."""
        n = self.n
        gi = self.gram.gram_inv.rows
        out = []
        for b in range(n):
            acc = SymTensor.zero(n, 2)
            for l in range(n):
                col = self.connection[l].column(b)  # D_{A_l} y_b = A_l b_b
                if not any(col):
                    continue
                lin = SymTensor.vector(col)
                left = SymTensor.vector([gi[k][l] for k in range(n)])
                acc = acc + left * lin
            out.append(acc)
        return tuple(out)

    def d(self, K: SymTensor) -> SymTensor:
        """Symmetrized covariant derivative, degree +1."""
        self._check_tensor(K)
        if K.degree < 0:
            return SymTensor.zero(self.n, K.degree + 1)
        if not any(img for img in self.d_images):
            return SymTensor.zero(self.n, K.degree + 1)
        return apply_derivation(self.d_images, K)

    def delta(self, K: SymTensor) -> SymTensor:
        """Formal divergence -sum_ij (G^-1)_ij b_i -| nabla_{b_j} K, degree -1."""
        self._check_tensor(K)
        n = self.n
        if K.degree < 1:
            return SymTensor.zero(n, K.degree - 1)
        gi = self.gram.gram_inv.rows
        out = SymTensor.zero(n, K.degree - 1)
        for j in range(n):
            DK = derivation_apply(self.connection[j], K)
            if DK.is_zero():
                continue
            for i in range(n):
                if gi[i][j]:
                    out = out - contract(self.basis_vector(i), DK, self.gram) * gi[i][j]
        return out

    def _check_tensor(self, K: SymTensor) -> None:
        if K.n != self.n:
            raise ValueError(f"tensor dimension {K.n} does not match algebra dimension {self.n}")

    def d_matrix(self, p: int) -> Matrix:
        return self._operator("d", p)

    def delta_matrix(self, p: int) -> Matrix:
        return self._operator("delta", p)

    def L_matrix(self, p: int) -> Matrix:
        """L: Sym^p -> Sym^(p+2)."""
        return self._operator("L", p)

    def Lambda_matrix(self, p: int) -> Matrix:
        return self._operator("Lambda", p)

    def operators(self, p: int) -> DegreeOperators:
        return DegreeOperators(p, self.d_matrix(p), self.delta_matrix(p))

    @cached_property
    def _cache(self) -> dict:
        return {}

    def _operator(self, kind: str, p: int) -> Matrix:
        key = (kind, p)
        if key in self._cache:
            return self._cache[key]
        n = self.n
        shift = {"d": 1, "delta": -1, "L": 2, "Lambda": -2}[kind]
        if p < 0:
            m = Matrix.zeros(dim_sym(n, p + shift), 0)
        else:
            op = {
                "d": self.d,
                "delta": self.delta,
                "L": lambda K: lefschetz_L(K, self.gram),
                "Lambda": lambda K: lambda_op(K, self.gram),
            }[kind]
            m = operator_matrix(op, n, p, p + shift)
        self._cache[key] = m
        return m

    # ------------------------------------------------------------- predicates

    @cached_property
    def predicates(self) -> StructuralPredicates:
        n, c = self.n, self.table
        # x is central iff sum_i x_i c[i][j][k] = 0 for all j, k
        rows = [[c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
        center = kernel(Matrix(rows, n)) if rows else Subspace.full(n)
        derived = Subspace.span([c[i][j] for i in range(n) for j in range(i + 1, n)], n)
        unimodular = all(sum(c[i][j][j] for j in range(n)) == 0 for i in range(n))
        abelian = derived.dim == 0
        two_step = not abelian and center.contains(derived)
        ad_inv = all(self.ad_star(self.basis_vector(i)) == -self.ad(self.basis_vector(i)) for i in range(n))
        return StructuralPredicates(center, derived, unimodular, two_step, ad_inv, abelian)

    def structural_predicates(self) -> StructuralPredicates:
        return self.predicates

    # ------------------------------------------------------------------- I/O

    def bracket_list(self) -> list[tuple[int, int, tuple[Fraction, ...]]]:
        """Nonzero brackets [b_i, b_j] with i < j (0-based)."""
        return [(i, j, self.table[i][j]) for i in range(self.n) for j in range(i + 1, self.n)
                if any(self.table[i][j])]

    def describe_brackets(self) -> list[str]:
        out = []
        for i, j, vec in self.bracket_list():
            rhs = SymTensor.vector(vec).format(self.labels)
            out.append(f"[{self.labels[i]},{self.labels[j]}] = {rhs}")
        return out

    def __repr__(self) -> str:
        return f"MetricLieAlgebra({self.name or 'unnamed'}, n={self.n})"


def _gram_context(gram, n: int) -> GramContext:
    if gram is None:
        return GramContext.identity(n)
    if isinstance(gram, GramContext):
        return gram
    g = gram if isinstance(gram, Matrix) else Matrix(gram)
    if g.shape != (n, n):
        raise InvalidAlgebra([f"Gram matrix must be {n}x{n}"])
    if not g.is_symmetric():
        raise InvalidAlgebra(["Gram matrix is not symmetric"])
    bad = first_nonpositive_minor(g)
    if bad is not None:
        raise InvalidAlgebra([f"Gram matrix is not positive definite: leading minor of order {bad} is not positive"])
    return GramContext(g, g.inverse())


def adjointness_witness(alg: MetricLieAlgebra, p: int) -> tuple[SymTensor, SymTensor, Fraction, Fraction] | None:
    """First basis pair (A in Sym^p, B in Sym^(p+1)) with <dA,B> != <A,delta B>.

    Compares the matrices D^T Q_(p+1) and Q_p Delta, where Q is the Gram
    matrix of the induced inner product on monomials.
    """
    n = alg.n
    lhs = alg.d_matrix(p).T @ inner_product_matrix(n, p + 1, alg.gram)
    rhs = inner_product_matrix(n, p, alg.gram) @ alg.delta_matrix(p + 1)
    if lhs == rhs:
        return None
    for a, (row_l, row_r) in enumerate(zip(lhs.rows, rhs.rows)):
        for b, (x, y) in enumerate(zip(row_l, row_r)):
            if x != y:
                A = SymTensor.monomial(monomials(n, p)[a])
                B = SymTensor.monomial(monomials(n, p + 1)[b])
                return A, B, x, y
    raise AssertionError("unreachable")
