"""The symmetric algebra of a metric vector space as a polynomial ring.

A degree-p symmetric tensor is a homogeneous polynomial of degree p in
commuting variables y_1..y_n, one per basis vector b_i. The symmetric
product is polynomial multiplication. With this normalisation contraction
by a vector is a first-order differential operator, and the induced metric
satisfies <y^a, y^a> = a! in an orthonormal basis.

Non-orthonormal bases are handled without square roots. The Gram matrix G
and its inverse enter the operators explicitly:

    v -| K   = sum_k (G v)_k  dK/dy_k
    L        = sum_kl (G^-1)_kl y_k y_l
    Lambda K = sum_kl G_kl d^2K/dy_k dy_l
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import ONE, ZERO, Matrix, as_rational, format_rational, is_positive_definite, solve

Exponent = tuple[int, ...]
Poly = dict[Exponent, Fraction]


def dim_sym(n: int, p: int) -> int:
    """Number of monomials of degree p in n variables; 0 for negative p."""
    if n < 1:
        raise ValueError("dimension must be positive")
    if p < 0:
        return 0
    return comb(n + p - 1, p)


@lru_cache(maxsize=None)
def monomials(n: int, p: int) -> tuple[Exponent, ...]:
    """Exponent vectors of degree p in graded-lex order (y_1^p first)."""
    if p < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n), p):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, p: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomials(n, p))}


def _unit(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# raw polynomial kernels (dicts exponent -> Fraction)


def _poly_mul(a: Mapping[Exponent, Fraction], b: Mapping[Exponent, Fraction]) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = _add_exp(ea, eb)
            out[key] = out.get(key, ZERO) + ca * cb
    return {k: v for k, v in out.items() if v}


def _derive(coeffs: Mapping[Exponent, Fraction], images: Sequence[Mapping[Exponent, Fraction]]) -> Poly:
    """Apply the derivation sending y_b to images[b] (all of one degree)."""
    out: Poly = {}
    for e, c in coeffs.items():
        for b, eb in enumerate(e):
            img = images[b]
            if not eb or not img:
                continue
            base = e[:b] + (eb - 1,) + e[b + 1:]
            f = c * eb
            for ie, w in img.items():
                key = _add_exp(base, ie)
                out[key] = out.get(key, ZERO) + f * w
    return {k: v for k, v in out.items() if v}


def _second_derivative(coeffs: Mapping[Exponent, Fraction], weights: Sequence[Sequence[Fraction]]) -> Poly:
    """sum_kl weights[k][l] d^2/dy_k dy_l."""
    n = len(weights)
    out: Poly = {}
    pairs = [(k, l, weights[k][l]) for k in range(n) for l in range(n) if weights[k][l]]
    for e, c in coeffs.items():
        for k, l, w in pairs:
            if k == l:
                m = e[k] * (e[k] - 1)
                if not m:
                    continue
                key = e[:k] + (e[k] - 2,) + e[k + 1:]
            else:
                m = e[k] * e[l]
                if not m:
                    continue
                lst = list(e)
                lst[k] -= 1
                lst[l] -= 1
                key = tuple(lst)
            out[key] = out.get(key, ZERO) + c * w * m
    return {k: v for k, v in out.items() if v}


# --------------------------------------------------------------------------
# tensors


@dataclass(frozen=True, eq=False)
class SymTensor:
    """Homogeneous symmetric tensor: exponent vector -> coefficient."""

    n: int
    degree: int
    coeffs: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.n or any(x < 0 for x in e) or sum(e) != self.degree:
                raise ValueError(f"exponent {e} does not index Sym^{self.degree} of dimension {self.n}")
            c = as_rational(c)
            if c:
                clean[e] = c
        if self.degree < 0 and clean:
            raise ValueError("negative-degree tensors must be zero")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def _raw(cls, n: int, degree: int, coeffs: Poly) -> SymTensor:
        t = object.__new__(cls)
        object.__setattr__(t, "n", n)
        object.__setattr__(t, "degree", degree)
        object.__setattr__(t, "coeffs", coeffs)
        return t

    @classmethod
    def zero(cls, n: int, degree: int) -> SymTensor:
        return cls._raw(n, degree, {})

    @classmethod
    def scalar(cls, n: int, value=1) -> SymTensor:
        return cls(n, 0, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, i: int) -> SymTensor:
        """The basis vector b_i (0-based) as a degree-1 tensor."""
        return cls._raw(n, 1, {_unit(n, i): ONE})

    @classmethod
    def vector(cls, values: Sequence) -> SymTensor:
        n = len(values)
        return cls(n, 1, {_unit(n, i): v for i, v in enumerate(values)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> SymTensor:
        e = tuple(exponent)
        return cls(len(e), sum(e), {e: coeff})

    @classmethod
    def from_vector(cls, n: int, degree: int, vec: Sequence) -> SymTensor:
        basis = monomials(n, degree)
        if len(vec) != len(basis):
            raise ValueError("coordinate vector has the wrong length")
        return cls._raw(n, degree, {e: as_rational(v) for e, v in zip(basis, vec) if v})

    def to_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.coeffs.get(e, ZERO) for e in monomials(self.n, self.degree))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(exponent), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        if self.n != other.n:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.degree, frozenset(self.coeffs.items())))

    def _check(self, other: SymTensor) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} != {other.n}")

    def __add__(self, other: SymTensor) -> SymTensor:
        self._check(other)
        if not other.coeffs and other.degree != self.degree:
            return self
        if not self.coeffs and other.degree != self.degree:
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add tensors of degrees {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, ZERO) + c
        return SymTensor._raw(self.n, self.degree, {e: c for e, c in out.items() if c})

    def __neg__(self) -> SymTensor:
        return SymTensor._raw(self.n, self.degree, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: SymTensor) -> SymTensor:
        return self + (-other)

    def __mul__(self, other) -> SymTensor:
        if isinstance(other, SymTensor):
            self._check(other)
            if self.degree < 0 or other.degree < 0:
                return SymTensor.zero(self.n, self.degree + other.degree)
            return SymTensor._raw(self.n, self.degree + other.degree, _poly_mul(self.coeffs, other.coeffs))
        c = as_rational(other)
        if not c:
            return SymTensor.zero(self.n, self.degree)
        return SymTensor._raw(self.n, self.degree, {e: c * v for e, v in self.coeffs.items()})

    def __rmul__(self, other) -> SymTensor:
        return self * other

    def __truediv__(self, other) -> SymTensor:
        return self * (1 / as_rational(other))

    def __pow__(self, k: int) -> SymTensor:
        if k < 0:
            raise ValueError("negative power")
        out = SymTensor.scalar(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def partial(self, k: int) -> SymTensor:
        """Formal derivative d/dy_k (contraction by the dual basis vector)."""
        out = {}
        for e, c in self.coeffs.items():
            if e[k]:
                out[e[:k] + (e[k] - 1,) + e[k + 1:]] = c * e[k]
        return SymTensor._raw(self.n, self.degree - 1, out)

    def variable_degree(self, indices: Iterable[int]) -> set[int]:
        """Set of partial degrees in the given variables over all monomials."""
        idx = list(indices)
        return {sum(e[i] for i in idx) for e in self.coeffs}

    def project(self, indices: Iterable[int], partial_degree: int) -> SymTensor:
        """Component whose total degree in the given variables is fixed."""
        idx = list(indices)
        return SymTensor._raw(
            self.n, self.degree,
            {e: c for e, c in self.coeffs.items() if sum(e[i] for i in idx) == partial_degree},
        )

    def content_normalized(self) -> SymTensor:
        """Integer coefficients with content 1, first nonzero (basis order) positive."""
        if not self.coeffs:
            return self
        den = 1
        from math import gcd, lcm

        for c in self.coeffs.values():
            den = lcm(den, c.denominator)
        ints = {e: c.numerator * (den // c.denominator) for e, c in self.coeffs.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        first = next(e for e in monomials(self.n, self.degree) if e in ints)
        sign = -1 if ints[first] < 0 else 1
        return SymTensor._raw(self.n, self.degree, {e: Fraction(sign * v // g) for e, v in ints.items()})

    def format(self, labels: Sequence[str] | None = None) -> str:
        return format_tensor(self, labels)

    def __repr__(self) -> str:
        return f"SymTensor(n={self.n}, degree={self.degree}, {format_tensor(self)})"


def format_tensor(K: SymTensor, labels: Sequence[str] | None = None) -> str:
    """Human-readable form using products of basis names, e.g. ``e1·e6 - 2 e2^2``."""
    if labels is None:
        labels = [f"e{i + 1}" for i in range(K.n)]
    if not K.coeffs:
        return "0"
    parts = []
    for e in monomials(K.n, K.degree):
        c = K.coeffs.get(e)
        if c is None:
            continue
        factors = [labels[i] if k == 1 else f"{labels[i]}^{k}" for i, k in enumerate(e) if k]
        mono = "·".join(factors)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)} {mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# metric context


@dataclass(frozen=True, eq=False)
class GramContext:
    """A positive definite Gram matrix and its exact inverse."""

    gram: Matrix
    gram_inv: Matrix

    @classmethod
    def from_matrix(cls, gram: Matrix | Sequence[Sequence]) -> GramContext:
        g = gram if isinstance(gram, Matrix) else Matrix(gram)
        if not is_positive_definite(g):
            raise ValueError("Gram matrix is not positive definite")
        return cls(g, g.inverse())

    @classmethod
    def identity(cls, n: int) -> GramContext:
        eye = Matrix.identity(n)
        return cls(eye, eye)

    @property
    def n(self) -> int:
        return self.gram.nrows

    @property
    def is_orthonormal(self) -> bool:
        return self.gram == Matrix.identity(self.n)

    def inner(self, u: Sequence, v: Sequence) -> Fraction:
        """g(u, v) for coordinate vectors."""
        g = self.gram.rows
        return sum(
            (as_rational(u[i]) * g[i][j] * as_rational(v[j]) for i in range(self.n) for j in range(self.n)
             if u[i] and v[j] and g[i][j]),
            ZERO,
        )

    def lower(self, v: Sequence) -> tuple[Fraction, ...]:
        """Covector G v, the coefficients of v -| as a derivation."""
        return self.gram @ [as_rational(x) for x in v]


def quadratic_tensor(Q: Matrix | Sequence[Sequence]) -> SymTensor:
    """The degree-2 tensor sum_kl Q_kl y_k y_l."""
    rows = Q.rows if isinstance(Q, Matrix) else [[as_rational(x) for x in r] for r in Q]
    n = len(rows)
    out: Poly = {}
    for k in range(n):
        for l in range(n):
            if rows[k][l]:
                e = _add_exp(_unit(n, k), _unit(n, l))
                out[e] = out.get(e, ZERO) + rows[k][l]
    return SymTensor._raw(n, 2, {e: c for e, c in out.items() if c})


def second_order(K: SymTensor, Q: Matrix | Sequence[Sequence]) -> SymTensor:
    """sum_kl Q_kl d^2K/dy_k dy_l, degree -2."""
    if K.degree < 2:
        return SymTensor.zero(K.n, K.degree - 2)
    rows = Q.rows if isinstance(Q, Matrix) else [[as_rational(x) for x in r] for r in Q]
    return SymTensor._raw(K.n, K.degree - 2, _second_derivative(K.coeffs, rows))


def metric_tensor(ctx: GramContext) -> SymTensor:
    """The tensor L = sum_i e_i·e_i for an orthonormal basis e_i."""
    return quadratic_tensor(ctx.gram_inv)


# --------------------------------------------------------------------------
# operations


def multiply(a: SymTensor, b: SymTensor) -> SymTensor:
    return a * b


def contract(v: Sequence, K: SymTensor, ctx: GramContext) -> SymTensor:
    """v -| K: the derivation y_k -> g(v, b_k), lowering degree by one."""
    if K.degree < 1:
        raise ValueError("contraction of a degree-0 tensor")
    if len(v) != K.n:
        raise ValueError("vector and tensor dimensions differ")
    w = ctx.lower(v)
    constant = (0,) * K.n
    images = [{constant: c} if c else {} for c in w]
    return SymTensor._raw(K.n, K.degree - 1, _derive(K.coeffs, images))


def permanent(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Ryser's formula."""
    n = len(rows)
    if n == 0:
        return ONE
    total = ZERO
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = ONE
        for row in rows:
            s = sum((row[j] for j in cols), ZERO)
            if not s:
                prod = ZERO
                break
            prod *= s
        if prod:
            total += -prod if (n - len(cols)) % 2 else prod
    return total


def _expand(e: Exponent) -> list[int]:
    return [i for i, k in enumerate(e) for _ in range(k)]


def monomial_inner_product(a: Exponent, b: Exponent, ctx: GramContext) -> Fraction:
    """<y^a, y^b>: permanent of the Gram submatrix of the two index multisets."""
    if sum(a) != sum(b):
        raise ValueError("inner product of tensors of different degrees")
    g = ctx.gram.rows
    ia, ib = _expand(a), _expand(b)
    return permanent([[g[i][j] for j in ib] for i in ia])


def inner_product(a: SymTensor, b: SymTensor, ctx: GramContext) -> Fraction:
    a._check(b)
    if a.degree != b.degree:
        raise ValueError(f"inner product of degrees {a.degree} and {b.degree}")
    if ctx.is_orthonormal:
        total = ZERO
        for e, c in a.coeffs.items():
            d = b.coeffs.get(e)
            if d:
                w = 1
                for k in e:
                    w *= factorial(k)
                total += c * d * w
        return total
    total = ZERO
    for ea, ca in a.coeffs.items():
        for eb, cb in b.coeffs.items():
            total += ca * cb * monomial_inner_product(ea, eb, ctx)
    return total


def permanent_bruteforce(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    total = ZERO
    for sigma in permutations(range(n)):
        prod = ONE
        for i in range(n):
            prod *= rows[i][sigma[i]]
        total += prod
    return total


def lefschetz_L(K: SymTensor, ctx: GramContext) -> SymTensor:
    """Multiplication by the metric tensor, degree +2."""
    return metric_tensor(ctx) * K


def lambda_op(K: SymTensor, ctx: GramContext) -> SymTensor:
    """Metric contraction sum_kl G_kl d^2/dy_k dy_l, degree -2."""
    return second_order(K, ctx.gram)


def deg(K: SymTensor) -> SymTensor:
    return K * K.degree


def linear_images(M: Matrix) -> list[Poly]:
    """y_b -> sum_a M_ab y_a: images of the variables under an endomorphism."""
    n = M.nrows
    return [{_unit(n, a): M.rows[a][b] for a in range(n) if M.rows[a][b]} for b in range(n)]


def derivation_apply(M: Matrix, K: SymTensor) -> SymTensor:
    """Extension of the endomorphism M (columns = images) as a derivation."""
    if M.nrows != K.n or M.ncols != K.n:
        raise ValueError("endomorphism and tensor dimensions differ")
    return SymTensor._raw(K.n, K.degree, _derive(K.coeffs, linear_images(M)))


def apply_derivation(images: Sequence[SymTensor], K: SymTensor) -> SymTensor:
    """Derivation determined by the images of the variables (all of one degree)."""
    shift = None
    for img in images:
        if img.coeffs:
            shift = img.degree - 1
            break
    if shift is None:
        return SymTensor.zero(K.n, K.degree)
    return SymTensor._raw(K.n, K.degree + shift, _derive(K.coeffs, [img.coeffs for img in images]))


def sym_of_endo(M: Matrix, ctx: GramContext) -> SymTensor:
    """S_M = 1/2 sum_i M e_i · e_i, i.e. 1/2 sum_al (M G^-1)_al y_a y_l."""
    n = ctx.n
    mg = M @ ctx.gram_inv
    out: Poly = {}
    half = Fraction(1, 2)
    for a in range(n):
        for l in range(n):
            c = mg.rows[a][l]
            if c:
                e = _add_exp(_unit(n, a), _unit(n, l))
                out[e] = out.get(e, ZERO) + half * c
    return SymTensor._raw(n, 2, {e: c for e, c in out.items() if c})


def operator_matrix(op: Callable[[SymTensor], SymTensor], n: int, p: int, q: int) -> Matrix:
    """Matrix of a linear map Sym^p -> Sym^q in the monomial bases."""
    rows = dim_sym(n, q)
    cols = []
    for e in monomials(n, p):
        img = op(SymTensor._raw(n, p, {e: ONE}))
        if img.coeffs and img.degree != q:
            raise ValueError(f"operator lands in degree {img.degree}, expected {q}")
        cols.append(img.to_vector() if q >= 0 else ())
    return Matrix.from_columns(cols, rows)


def inner_product_matrix(n: int, p: int, ctx: GramContext) -> Matrix:
    basis = monomials(n, p)
    size = len(basis)
    rows = [[ZERO] * size for _ in range(size)]
    for i, a in enumerate(basis):
        for j in range(i, size):
            if ctx.is_orthonormal:
                v = inner_product(SymTensor._raw(n, p, {a: ONE}), SymTensor._raw(n, p, {basis[j]: ONE}), ctx)
            else:
                v = monomial_inner_product(a, basis[j], ctx)
            rows[i][j] = rows[j][i] = v
    return Matrix(rows, size)


def trace_free_decompose(K: SymTensor, ctx: GramContext) -> tuple[SymTensor, SymTensor]:
    """K = K0 + L·R with Lambda K0 = 0; solves (Lambda L) R = Lambda K."""
    n, p = K.n, K.degree
    if p < 2:
        return K, SymTensor.zero(n, p - 2)
    lam_k = lambda_op(K, ctx)
    if lam_k.is_zero():
        return K, SymTensor.zero(n, p - 2)
    system = operator_matrix(lambda T: lambda_op(lefschetz_L(T, ctx), ctx), n, p - 2, p - 2)
    sol = solve(system, lam_k.to_vector())
    if sol is None:  # Lambda L is positive definite on Sym^(p-2)
        raise ArithmeticError("trace-free decomposition system is inconsistent")
    R = SymTensor.from_vector(n, p - 2, sol)
    return K - lefschetz_L(R, ctx), R


def linear_substitution(K: SymTensor, images: Sequence[SymTensor]) -> SymTensor:
    """Algebra map sending y_i to the linear form images[i]."""
    if len(images) != K.n:
        raise ValueError("one image per variable required")
    m = images[0].n
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in powers:
            powers[key] = {(0,) * m: ONE} if k == 0 else _poly_mul(power(i, k - 1), images[i].coeffs)
        return powers[key]

    out: Poly = {}
    for e, c in K.coeffs.items():
        term: Poly = {(0,) * m: c}
        for i, k in enumerate(e):
            if k:
                term = _poly_mul(term, power(i, k))
        for key, v in term.items():
            out[key] = out.get(key, ZERO) + v
    return SymTensor._raw(m, K.degree, {e: v for e, v in out.items() if v})


def change_basis(K: SymTensor, basis: Matrix) -> SymTensor:
    """Rewrite K in the basis whose vectors are the columns of ``basis``.

    If b'_j = sum_i B_ij b_i then b_i = sum_j (B^-1)_ji b'_j, so the
    variable y_i is replaced by sum_j (B^-1)_ji y'_j.
    """
    binv = basis.inverse()
    n = basis.nrows
    images = [SymTensor.vector([binv.rows[j][i] for j in range(n)]) for i in range(n)]
    return linear_substitution(K, images)
