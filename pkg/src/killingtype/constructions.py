"""Special families and the structural checks tied to them.

* reductive slices: a vector t whose orthogonal complement E is ad_t-stable
  and on which ad_x is skew for x in E;
* central extensions R·t ⊕_ω h by a closed 2-form;
* Milnor bases of 3-dimensional unimodular algebras and the tensor J;
* codimension-1 abelian ideals of 4-dimensional algebras with 1-dimensional
  derived ideal;
* seeded random positive definite Gram matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .killing import killing_basis, killing_space
from .lie import InvalidAlgebra, MetricLieAlgebra
from .linalg import ZERO, Matrix, Subspace, as_rational, kernel
from .symalg import (
    GramContext,
    SymTensor,
    derivation_apply,
    lefschetz_L,
    metric_tensor,
    monomials,
)


# ---------------------------------------------------------------- random data

def random_gram(n: int, rng: random.Random) -> Matrix:
    """G = AᵀA + I with A an integer matrix with entries in [-3, 3]."""
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    return Matrix([[sum(a[k][i] * a[k][j] for k in range(n)) + (i == j) for j in range(n)] for i in range(n)])


def random_rational(rng: random.Random, bound: int = 5, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
        if q or not nonzero:
            return q


def random_invertible(n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


# ------------------------------------------------------------ reductive slice

@dataclass
class SliceReport:
    t: tuple[Fraction, ...]
    E: Subspace
    ad_t_preserves_E: bool
    skew_on_E: bool
    invariance_witness: tuple | None = None  # (e,) with g(t, [t, e]) != 0
    skew_witness: tuple | None = None  # (x, y, z) E-basis indices with nonzero defect
    dt_zero: bool = True
    even_in_t: dict[int, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.ad_t_preserves_E and self.skew_on_E

    def to_dict(self) -> dict:
        from .linalg import format_rational

        out = {
            "t": [format_rational(x) for x in self.t],
            "holds": self.holds,
            "ad_t_preserves_E": self.ad_t_preserves_E,
            "skew_on_E": self.skew_on_E,
            "dt_zero": self.dt_zero,
            "even_in_t": {str(p): v for p, v in sorted(self.even_in_t.items())},
        }
        if self.invariance_witness is not None:
            out["invariance_witness"] = list(self.invariance_witness)
        if self.skew_witness is not None:
            out["skew_witness"] = list(self.skew_witness)
        return out


def orthogonal_complement(alg: MetricLieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    return kernel(Matrix([alg.gram.lower(v) for v in vectors], alg.n))


def slice_basis(alg: MetricLieAlgebra, t: Sequence) -> Matrix:
    """Columns t, e_1, ..., e_(n-1) with the e_i spanning the complement of t."""
    E = orthogonal_complement(alg, [t])
    return Matrix.from_columns([tuple(as_rational(x) for x in t)] + list(E.basis), alg.n)


def check_reductive_slice(alg: MetricLieAlgebra, t: Sequence, max_degree: int = 4) -> SliceReport:
    """Test whether E = t^⊥ is ad_t-invariant and every ad_x, x in E, is skew on E.

    When both hold and dt != 0, also check that computed Killing tensors of
    degree <= max_degree have only even powers of t in the basis (t, E).
    """
    t = tuple(as_rational(x) for x in t)
    if len(t) != alg.n:
        raise ValueError(f"vector must have {alg.n} components")
    if not any(t):
        raise ValueError("t must be nonzero")
    E = orthogonal_complement(alg, [t])
    Eb = E.basis
    inv_wit = None
    for a, e in enumerate(Eb):
        if alg.inner(t, alg.bracket(t, e)):
            inv_wit = (a,)
            break
    skew_wit = None
    for a, x in enumerate(Eb):
        for b, y in enumerate(Eb):
            xy = alg.bracket(x, y)
            for c, z in enumerate(Eb):
                if alg.inner(xy, z) + alg.inner(y, alg.bracket(x, z)):
                    skew_wit = (a, b, c)
                    break
            if skew_wit:
                break
        if skew_wit:
            break
    report = SliceReport(t, E, inv_wit is None, skew_wit is None, inv_wit, skew_wit)
    report.dt_zero = alg.d(SymTensor.vector(t)).is_zero()
    if report.holds and not report.dt_zero:
        adapted = alg.change_basis(slice_basis(alg, t))
        for p in range(max_degree + 1):
            report.even_in_t[p] = all(
                all(e[0] % 2 == 0 for e in K.coeffs) for K in killing_basis(adapted, p)
            )
    return report


def complement_metric(alg: MetricLieAlgebra, t: Sequence) -> SymTensor:
    """L_E = L - t²/|t|², the metric tensor of t^⊥."""
    tv = SymTensor.vector(t)
    return metric_tensor(alg.gram) - tv * tv / alg.gram.inner(t, t)


def verify_dLE(alg: MetricLieAlgebra, t: Sequence, k_max: int = 4, p_max: int = 2) -> bool:
    """[d, L_E^k] = -2k (t·dt/|t|²) L_E^(k-1) on all monomials of degree <= p_max."""
    tv = SymTensor.vector(t)
    LE = complement_metric(alg, t)
    factor = tv * alg.d(tv) / alg.gram.inner(t, t)
    for k in range(1, k_max + 1):
        LEk, LEk1 = LE ** k, LE ** (k - 1)
        for p in range(p_max + 1):
            for e in monomials(alg.n, p):
                K = SymTensor.monomial(e)
                lhs = alg.d(LEk * K) - LEk * alg.d(K)
                if lhs != factor * LEk1 * K * (-2 * k):
                    return False
    return True


# ---------------------------------------------------------- central extension

class NotClosed(ValueError):
    pass


@dataclass(frozen=True)
class CentralExtensionSpec:
    base: MetricLieAlgebra
    omega: Matrix  # omega[i][j] = ω(b_i, b_j)

    def __post_init__(self):
        n = self.base.n
        if self.omega.shape != (n, n):
            raise ValueError(f"ω must be {n}x{n}")
        if not (self.omega + self.omega.T).is_zero():
            raise ValueError("ω must be antisymmetric")

    @classmethod
    def from_form(cls, base: MetricLieAlgebra, entries: dict[tuple[int, int], object]) -> CentralExtensionSpec:
        """ω from {(i, j): value} meaning value·b_i∧b_j (0-based)."""
        n = base.n
        w = [[ZERO] * n for _ in range(n)]
        for (i, j), c in entries.items():
            c = as_rational(c)
            w[i][j] += c
            w[j][i] -= c
        return cls(base, Matrix(w))

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        rows = self.omega.rows
        return sum((x[i] * rows[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]), ZERO)

    def closedness_violations(self) -> list[tuple[int, int, int]]:
        """Basis triples (1-based) where ω([x,y],z) + ω([y,z],x) + ω([z,x],y) != 0."""
        h = self.base
        out = []
        for i in range(h.n):
            for j in range(i + 1, h.n):
                for k in range(j + 1, h.n):
                    x, y, z = h.basis_vector(i), h.basis_vector(j), h.basis_vector(k)
                    s = (self.form(h.bracket(x, y), z) + self.form(h.bracket(y, z), x)
                         + self.form(h.bracket(z, x), y))
                    if s:
                        out.append((i + 1, j + 1, k + 1))
        return out

    def is_closed(self) -> bool:
        return not self.closedness_violations()

    def endomorphism(self) -> Matrix:
        """The skew endomorphism Ω with g(Ωx, y) = ω(x, y)."""
        return (self.base.gram.gram_inv @ self.omega).scale(-1)


def extension_table(spec: CentralExtensionSpec) -> list[list[list[Fraction]]]:
    h, n = spec.base, spec.base.n
    table = [[[ZERO] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            table[i][j] = list(h.table[i][j]) + [spec.omega.rows[i][j]]
    return table


def central_extension(spec: CentralExtensionSpec, name: str | None = None) -> MetricLieAlgebra:
    """R·t ⊕_ω h with t central, orthogonal to h and of unit length; t is the last basis vector."""
    violations = spec.closedness_violations()
    if violations:
        raise NotClosed(f"ω is not closed on basis triples {violations}")
    h, n = spec.base, spec.base.n
    g = [list(row) + [ZERO] for row in h.gram.gram.rows] + [[ZERO] * n + [Fraction(1)]]
    gm = Matrix(g)
    labels = list(h.labels) + ["t"]
    return MetricLieAlgebra(extension_table(spec), GramContext(gm, gm.inverse()),
                            name or f"{h.name}+ω", labels)


def embed(K: SymTensor, n: int) -> SymTensor:
    """View a tensor on h (first variables) as a tensor on a larger algebra."""
    extra = (0,) * (n - K.n)
    return SymTensor._raw(n, K.degree, {e + extra: c for e, c in K.coeffs.items()})


def omega_action(spec: CentralExtensionSpec, K: SymTensor) -> SymTensor:
    """ω acting on Sym h as the derivation extension of its skew endomorphism."""
    return derivation_apply(spec.endomorphism(), K)


def verify_extension_d(spec: CentralExtensionSpec, p: int) -> bool:
    """d(R) = d₀R - ω(R)·t for every monomial R in Sym^p h."""
    g = central_extension(spec)
    n = spec.base.n
    t = SymTensor.variable(n + 1, n)
    for e in monomials(n, p):
        R = SymTensor.monomial(e)
        rhs = embed(spec.base.d(R), n + 1) - embed(omega_action(spec, R), n + 1) * t
        if g.d(embed(R, n + 1)) != rhs:
            return False
    return True


# -------------------------------------------------------------------- Milnor

@dataclass(frozen=True)
class MilnorBasis:
    """[x,y] = a z, [y,z] = b x, [z,x] = c y with x, y, z orthonormal."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for k in ("a", "b", "c"):
            v = as_rational(getattr(self, k))
            if not v:
                raise ValueError("Milnor constants must be nonzero")
            object.__setattr__(self, k, v)

    @property
    def alpha(self) -> Fraction:
        return self.c - self.a

    @property
    def beta(self) -> Fraction:
        return self.a - self.b

    @property
    def gamma(self) -> Fraction:
        return self.b - self.c

    @property
    def generic(self) -> bool:
        return bool(self.alpha and self.beta and self.gamma)

    @property
    def kind(self) -> str:
        pos = sum(v > 0 for v in (self.a, self.b, self.c))
        return "su(2)" if pos in (0, 3) else "sl(2,R)"


def milnor_algebra(m: MilnorBasis, name: str | None = None) -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(
        3, {(0, 1): {2: m.a}, (1, 2): {0: m.b}, (2, 0): {1: m.c}},
        name=name or f"milnor({m.a},{m.b},{m.c})", labels=["x", "y", "z"],
    )


def milnor_J(m: MilnorBasis) -> SymTensor:
    """J = α y² - β x²."""
    x, y = SymTensor.variable(3, 0), SymTensor.variable(3, 1)
    return y * y * m.alpha - x * x * m.beta


def milnor_omega(p, q, r) -> Matrix:
    """ω = p x∧y + q y∧z + r z∧x as an antisymmetric matrix."""
    p, q, r = (as_rational(v) for v in (p, q, r))
    return Matrix([[0, p, -r], [-p, 0, q], [r, -q, 0]])


def milnor_xi(p, q, r) -> SymTensor:
    """ξ = 2(q x + r y + p z)."""
    return SymTensor.vector([2 * as_rational(q), 2 * as_rational(r), 2 * as_rational(p)])


@dataclass
class MilnorIdentities:
    J: SymTensor
    xi: SymTensor
    J_killing: bool
    omega_J_exact: bool  # ω(J) = d₀ξ
    omega_L0_zero: bool
    omega_xi_zero: bool

    @property
    def all_hold(self) -> bool:
        return self.J_killing and self.omega_J_exact and self.omega_L0_zero and self.omega_xi_zero


def milnor_identities(m: MilnorBasis, pqr: Sequence = (1, 1, 1)) -> MilnorIdentities:
    alg = milnor_algebra(m)
    spec = CentralExtensionSpec(alg, milnor_omega(*pqr))
    J = milnor_J(m)
    xi = milnor_xi(*pqr)
    L0 = metric_tensor(alg.gram)
    return MilnorIdentities(
        J=J,
        xi=xi,
        J_killing=alg.d(J).is_zero(),
        omega_J_exact=omega_action(spec, J) == alg.d(xi),
        omega_L0_zero=omega_action(spec, L0).is_zero(),
        omega_xi_zero=omega_action(spec, xi).is_zero(),
    )


def milnor_extension(m: MilnorBasis, pqr: Sequence = (1, 1, 1)) -> MetricLieAlgebra:
    p, q, r = (as_rational(v) for v in pqr)
    spec = CentralExtensionSpec(milnor_algebra(m), milnor_omega(p, q, r))
    return central_extension(spec, name=f"central-extension({m.a},{m.b},{m.c},{p},{q},{r})")


def qjl_basis(m: MilnorBasis, p: int) -> Subspace:
    """span{J^i L^k : 2i + 2k = p} inside Sym^p."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    n = 3
    if p % 2:
        return Subspace.zero(len(monomials(n, p)))
    alg = milnor_algebra(m)
    J = milnor_J(m)
    gens = []
    for i in range(p // 2 + 1):
        K = J ** i
        for _ in range(p // 2 - i):
            K = lefschetz_L(K, alg.gram)
        gens.append(K.to_vector() if K.degree == p else SymTensor.zero(n, p).to_vector())
    return Subspace.span(gens, len(monomials(n, p)))


def verify_killing_spanning(m: MilnorBasis, p: int) -> bool:
    """Killing p-tensors are exactly the polynomials in J and L of degree p."""
    if not m.generic:
        raise ValueError("spanning claim needs α, β, γ all nonzero")
    return qjl_basis(m, p) == killing_space(milnor_algebra(m), p)


# ------------------------------------------------------ codimension-1 ideals

class NotFound(ValueError):
    pass


def is_abelian_ideal(alg: MetricLieAlgebra, space: Subspace) -> bool:
    n = alg.n
    for u in space.basis:
        for w in space.basis:
            if any(alg.bracket(u, w)):
                return False
        for i in range(n):
            if alg.bracket(alg.basis_vector(i), u) not in space:
                return False
    return True


def _multiple_of(vec: Sequence[Fraction], u: Sequence[Fraction]) -> Fraction:
    """The scalar s with vec = s·u (vec is known to lie on the line of u)."""
    k = next(i for i, c in enumerate(u) if c)
    s = vec[k] / u[k]
    if any(v != s * c for v, c in zip(vec, u)):
        raise NotFound("bracket does not lie in the derived ideal")
    return s


def find_codim1_abelian_ideal(alg: MetricLieAlgebra) -> Subspace:
    """A 3-dimensional abelian ideal of a 4-dimensional algebra with dim g′ = 1."""
    if alg.n != 4:
        raise NotFound(f"algebra has dimension {alg.n}, need 4")
    derived = alg.predicates.derived
    if derived.dim != 1:
        raise NotFound(f"derived ideal has dimension {derived.dim}, need 1")
    u = derived.basis[0]
    f = [_multiple_of(alg.bracket(alg.basis_vector(i), u), u) for i in range(alg.n)]
    if any(f):
        ideal = kernel(Matrix([f], alg.n))
    else:
        x, y, z = orthogonal_complement(alg, [u]).basis
        beta = _multiple_of(alg.bracket(z, x), u)
        gamma = _multiple_of(alg.bracket(z, y), u)
        if beta or gamma:
            v = tuple(gamma * a - beta * b for a, b in zip(x, y))
        else:
            v = x
        ideal = Subspace.span([u, v, z], alg.n)
    if ideal.dim != 3 or not is_abelian_ideal(alg, ideal):
        raise NotFound("construction did not produce a codimension-1 abelian ideal")
    return ideal


def dimg1_algebra(alpha=0, beta=1, gamma=2, f=1, name: str | None = None) -> MetricLieAlgebra:
    """[e1,e2] = α e4, [e3,e1] = β e4, [e3,e2] = γ e4, [e3,e4] = f e4; needs α f = 0."""
    alpha, beta, gamma, f = (as_rational(v) for v in (alpha, beta, gamma, f))
    if alpha * f:
        raise InvalidAlgebra(["solvable4-dimg1 needs α·f = 0 (Jacobi)"])
    if not (alpha or beta or gamma or f):
        raise InvalidAlgebra(["solvable4-dimg1 needs a nonzero parameter"])
    return MetricLieAlgebra.from_brackets(
        4, {(0, 1): {3: alpha}, (2, 0): {3: beta}, (2, 1): {3: gamma}, (2, 3): {3: f}},
        name=name or f"solvable4-dimg1({alpha},{beta},{gamma},{f})",
    )


def random_dimg1_algebra(rng: random.Random) -> MetricLieAlgebra:
    """A dim g′ = 1 algebra in a random basis with a random metric."""
    while True:
        alpha, beta, gamma, f = (rng.randint(-3, 3) for _ in range(4))
        if rng.random() < 0.5:
            alpha = 0
        else:
            f = 0
        if alpha or beta or gamma or f:
            break
    base = dimg1_algebra(alpha, beta, gamma, f)
    moved = base.change_basis(random_invertible(4, rng))
    return moved.with_gram(random_gram(4, rng), name=f"{base.name} (random basis)")
