"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Row reduction has two exact
routes: fraction-free Gauss-Jordan (Bareiss) for small systems, and a
multimodular reduction for large ones. The multimodular route reduces the
matrix modulo word-size primes with the kernel in :mod:`killingtype.kernels`,
lifts the reduced echelon form by Chinese remaindering and rational
reconstruction, and accepts the lift only after verifying it exactly. No
floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

import numpy as np

from . import kernels

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

# Below this many (rows * cols * min(rows, cols)) elementary steps the
# fraction-free route is cheaper than the modular machinery.
BAREISS_WORK_LIMIT = 60_000
MAX_PRIMES = 400


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                q = int(den)
                if q <= 0:
                    raise ValueError(f"denominator must be positive in {value!r}")
                return Fraction(int(num), q)
            return Fraction(int(text))
        except ValueError as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def _trusted(cls, rows: tuple[tuple[Fraction, ...], ...], ncols: int) -> Matrix:
        m = cls.__new__(cls)
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls._trusted(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], nrows: int) -> Matrix:
        cols = [tuple(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length does not match nrows")
        return cls._trusted(tuple(zip(*cols)) if cols else tuple(() for _ in range(nrows)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [tuple(c) for c in zip(*self.rows)] if self.nrows else [() for _ in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix._trusted(tuple(self.columns()), self.nrows)

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __neg__(self) -> Matrix:
        return Matrix._trusted(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = as_rational(c)
        return Matrix._trusted(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("inner dimensions differ")
            out = []
            for row in self.rows:
                acc = [ZERO] * other.ncols
                for k, a in enumerate(row):
                    if a:
                        for j, b in enumerate(other.rows[k]):
                            if b:
                                acc[j] += a * b
                out.append(tuple(acc))
            return Matrix._trusted(tuple(out), other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match ncols")
        return tuple(sum((a * v for a, v in zip(row, vec) if a and v), ZERO) for row in self.rows)

    def is_zero(self) -> bool:
        return all(not a for row in self.rows for a in row)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return Matrix._trusted(
            tuple(r + s for r, s in zip(self.rows, other.rows)), self.ncols + other.ncols
        )

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def inverse(self) -> Matrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [r + tuple(ONE if i == j else ZERO for j in range(n)) for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) != n:
            raise ZeroDivisionError("singular matrix")
        return Matrix._trusted(tuple(tuple(r[n:]) for r in red), n)


# --------------------------------------------------------------------------
# integer scaling


def _integer_row(row: Sequence) -> list[int] | None:
    """Primitive integer multiple of a row of ints/Fractions; None for a zero row."""
    den = 1
    for x in row:
        if x and type(x) is not int and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        ints = [int(x) for x in row]
    else:
        ints = [x.numerator * (den // x.denominator) if x else 0 for x in row]
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g == 0:
        return None
    if g > 1:
        ints = [v // g for v in ints]
    return ints


# --------------------------------------------------------------------------
# fraction-free elimination


def bareiss_rref(int_rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Fraction-free Gauss-Jordan elimination of an integer matrix.

    Every intermediate entry is an integer (a minor of the input); after the
    last pivot all pivot entries share one value and division by it yields
    the reduced row echelon form.
    """
    a = [list(r) for r in int_rows]
    m = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        piv_row = a[r]
        pv = piv_row[c]
        for i in range(m):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                for j in range(ncols):
                    row[j] = (pv * row[j] - f * piv_row[j]) // prev
            elif pv != prev:
                for j in range(ncols):
                    if row[j]:
                        row[j] = pv * row[j] // prev
        prev = pv
        pivots.append(c)
        r += 1
    red = [[Fraction(x, prev) if x else ZERO for x in a[i]] for i in range(r)]
    return red, pivots


def naive_rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Textbook Gauss-Jordan with Fraction arithmetic; kept as a reference."""
    a = [[as_rational(x) for x in r] for r in rows]
    m = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


# --------------------------------------------------------------------------
# multimodular elimination


def _is_prime32(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 7, 61):  # deterministic below 4.7e9
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    q = (1 << 31) - 1
    while True:
        if _is_prime32(q):
            yield q
        q -= 2


_PRIMES: list[int] = []


def _prime(i: int) -> int:
    if len(_PRIMES) <= i:
        gen = _prime_stream()
        _PRIMES.clear()
        _PRIMES.extend(next(gen) for _ in range(max(i + 1, 2 * len(_PRIMES), 16)))
    return _PRIMES[i]


def rational_reconstruction(u: int, m: int) -> Fraction | None:
    """Return a/b with |a|, b <= sqrt(m/2) and a = b*u (mod m), if one exists."""
    u %= m
    if u == 0:
        return ZERO
    bound = isqrt(m // 2)
    r0, r1 = m, u
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


class _ModularImages:
    """Reductions of a fixed integer matrix modulo many primes.

    Entries are split once into 31-bit limbs so that every reduction is a
    handful of vectorised int64 operations, whatever the entry size.
    """

    def __init__(self, int_rows: list[list[int]], ncols: int):
        m = len(int_rows)
        limit = 1 << 62
        flat = [x for r in int_rows for x in r]
        self.shape = (m, ncols)
        if all(-limit < x < limit for x in flat):
            self.small = np.array(flat, dtype=np.int64).reshape(m, ncols)
            return
        self.small = None
        self.negative = np.array([x < 0 for x in flat], dtype=bool).reshape(m, ncols)
        mags = [abs(x) for x in flat]
        nlimbs = max(1, (max(mags).bit_length() + 30) // 31)
        mask = (1 << 31) - 1
        self.limbs = [
            np.array([(x >> (31 * k)) & mask for x in mags], dtype=np.int64).reshape(m, ncols)
            for k in range(nlimbs)
        ]

    def mod(self, p: int) -> np.ndarray:
        if self.small is not None:
            return np.ascontiguousarray(self.small % p)
        acc = np.zeros(self.shape, dtype=np.int64)
        base = (1 << 31) % p
        w = 1
        for limb in self.limbs:
            acc = (acc + (limb % p) * w) % p
            w = w * base % p
        acc[self.negative] = (p - acc[self.negative]) % p
        return acc


def _verify(int_rows: list[list[int]], ncols: int, pivots: list[int], free: list[int],
            lifted: list[list[Fraction]]) -> bool:
    """Check that every input row lies in the row space of the candidate RREF.

    The candidate has identity pivot columns and entries ``lifted[i][t]`` in
    free column ``free[t]``. A vector is in its row span iff it is
    annihilated by the canonical kernel basis (one vector per free column).
    """
    if not free:
        return True
    r = len(pivots)
    # kernel vector for free column f: den at f, -num at the pivot coordinates
    kmat = np.zeros((ncols, len(free)), dtype=object)
    for t, f in enumerate(free):
        den = 1
        for i in range(r):
            x = lifted[i][t]
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        kmat[f, t] = den
        for i in range(r):
            x = lifted[i][t]
            if x:
                kmat[pivots[i], t] = -x.numerator * (den // x.denominator)
    a = np.array(int_rows, dtype=object).reshape(len(int_rows), ncols)
    prod = a.dot(kmat)
    return not any(prod.flat)


def multimodular_rref(int_rows: list[list[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Certified reduced row echelon form of an integer matrix.

    Reducing modulo a prime never increases the rank and, for equal rank,
    never moves pivots to earlier columns; primes whose (rank, pivots)
    signature is not the best seen so far are discarded. Only the free
    (non-pivot) columns are lifted, since pivot columns are unit vectors.
    The lifted candidate is accepted once every input row is verified to
    lie in its row space: together with rank_Q >= rank_p this pins the
    row space.
    """
    images = _ModularImages(int_rows, ncols)
    best_key = None
    residues = None  # object array of CRT residues, pivot rows x free columns
    modulus = 1
    pending: list[tuple[np.ndarray, int]] = []
    count = 0
    next_try = 1
    free: list[int] = []
    for i in range(MAX_PRIMES):
        p = _prime(i)
        a = images.mod(p)
        pivots = list(kernels.rref_mod(a, p))
        r = len(pivots)
        key = (-r, pivots)
        if best_key is not None and key > best_key:
            continue
        if best_key is None or key < best_key:
            best_key = key
            pivot_set = set(pivots)
            free = [j for j in range(ncols) if j not in pivot_set]
            residues, modulus, pending, count, next_try = None, 1, [], 0, 1
        pending.append((a[:r][:, free].astype(object), p))
        count += 1
        if count < next_try:
            continue
        next_try = max(count + 1, (count * 3 + 1) // 2)
        if residues is not None:
            pending.append((residues, modulus))
        residues, modulus = _crt_tree(pending)
        pending = []
        lifted = _lift(residues, modulus)
        if lifted is None:
            continue
        if _verify(int_rows, ncols, pivots, free, lifted):
            return _assemble(lifted, pivots, free, ncols), pivots
    return bareiss_rref(int_rows, ncols)


def _crt_pair(a: tuple[np.ndarray, int], b: tuple[np.ndarray, int]) -> tuple[np.ndarray, int]:
    (ra, ma), (rb, mb) = a, b
    inv = pow(ma % mb, -1, mb)
    return ra + ma * (((rb - ra) * inv) % mb), ma * mb


def _crt_tree(items: list[tuple[np.ndarray, int]]) -> tuple[np.ndarray, int]:
    """Combine residue arrays modulo pairwise coprime moduli, balanced pairwise."""
    while len(items) > 1:
        merged = [_crt_pair(items[k], items[k + 1]) for k in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    return items[0]


def _assemble(lifted: list[list[Fraction]], pivots: list[int], free: list[int], ncols: int) -> list[list[Fraction]]:
    out = []
    for i, row in enumerate(lifted):
        full = [ZERO] * ncols
        full[pivots[i]] = ONE
        for f, x in zip(free, row):
            full[f] = x
        out.append(full)
    return out


def _lift(residues: np.ndarray, modulus: int) -> list[list[Fraction]] | None:
    """Rational reconstruction of every residue, reusing a common denominator.

    Once some denominator ``den`` is known, a residue u is accepted as
    w/den when the balanced residue w of u*den is tiny compared with the
    modulus (a random residue passes with probability about 2^-32); the
    final answer is certified by the caller in any case.
    """
    half = modulus // 2
    small = modulus >> 33
    den = 1
    out = []
    for row in residues:
        new_row = []
        for u in row:
            u = int(u)
            if u == 0:
                new_row.append(ZERO)
                continue
            w = (u * den) % modulus
            if w > half:
                w -= modulus
            if -small <= w <= small:
                new_row.append(Fraction(w, den) if den != 1 else Fraction(w))
                continue
            q = rational_reconstruction(u, modulus)
            if q is None:
                return None
            den = lcm(den, q.denominator)
            new_row.append(q)
        out.append(new_row)
    return out


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    int_rows = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError("row length does not match ncols")
        ir = _integer_row([x if type(x) is int or isinstance(x, Fraction) else as_rational(x) for x in row])
        if ir is not None:
            int_rows.append(ir)
    if not int_rows:
        return [], []
    m = len(int_rows)
    if m * ncols * min(m, ncols) <= BAREISS_WORK_LIMIT:
        return bareiss_rref(int_rows, ncols)
    return multimodular_rref(int_rows, ncols)


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by the RREF of a basis, hence canonical."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        red, piv = rref(list(vectors), ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim).rows, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple[Fraction, ...]:
        """Remainder of ``v`` after eliminating the pivot coordinates."""
        out = [as_rational(x) for x in v]
        if len(out) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, c in zip(self.basis, self.pivots):
            f = out[c]
            if f:
                for j, b in enumerate(row):
                    if b:
                        out[j] -= f * b
        return tuple(out)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of ``v`` in the canonical basis, or None if v is outside."""
        if v not in self:
            return None
        return tuple(as_rational(v[c]) for c in self.pivots)

    def contains(self, other: Subspace) -> bool:
        return all(b in self for b in other.basis)

    def __add__(self, other: Subspace) -> Subspace:
        _check_ambient(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return Matrix.from_columns(self.basis, self.ambient_dim)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def _kernel_vectors(rows: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Null space basis, one primitive integer vector per free column."""
    red, piv = rref(rows, ncols)
    pivot_set = set(piv)
    vectors = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        den = 1
        for row in red:
            x = row[f]
            if x and x.denominator != 1:
                den = lcm(den, x.denominator)
        v = [0] * ncols
        v[f] = den
        for row, c in zip(red, piv):
            x = row[f]
            if x:
                v[c] = -x.numerator * (den // x.denominator)
        vectors.append(v)
    return vectors


def _int_rows(vectors: Iterable[Sequence]) -> list[list[int]]:
    out = []
    for v in vectors:
        ir = _integer_row(v)
        if ir is not None:
            out.append(ir)
    return out


def _combine(coeffs: list[list[int]], basis: list[list[int]], n: int) -> list[list[int]]:
    """Integer linear combinations: rows of coeffs @ basis."""
    if not coeffs or not basis:
        return []
    c = np.array(coeffs, dtype=object).reshape(len(coeffs), len(basis))
    b = np.array(basis, dtype=object).reshape(len(basis), n)
    return [[int(x) for x in row] for row in c.dot(b)]


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    return Subspace.span(_kernel_vectors(m.rows, m.ncols), m.ncols)


def image(m: Matrix) -> Subspace:
    """Column span of ``m``."""
    return Subspace.span(m.columns(), m.nrows)


def rank(m: Matrix) -> int:
    return m.rank()


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the null space of [A | -B] on stacked basis columns."""
    _check_ambient(a, b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient_dim)
    n = a.ambient_dim
    ai, bi = _int_rows(a.basis), _int_rows(b.basis)
    rows = [[r[i] for r in ai] + [-r[i] for r in bi] for i in range(n)]
    combos = _kernel_vectors(rows, a.dim + b.dim)
    return Subspace.span(_combine([lam[: a.dim] for lam in combos], ai, n), n)


def preimage(m: Matrix, target: Subspace | Matrix) -> Subspace:
    """``{v : m v in target}``; the target is a subspace or the image of a matrix.

    Passing a matrix avoids reducing its column span first, which matters
    when that span has a small spanning set but a bulky echelon form.
    """
    if isinstance(target, Matrix):
        if target.nrows != m.nrows:
            raise ValueError("target matrix lives in the wrong space")
        ti = [list(c) for c in target.columns()]
    else:
        if target.ambient_dim != m.nrows:
            raise ValueError("target subspace lives in the wrong space")
        ti = _int_rows(target.basis)
    rows = [list(m.rows[i]) + [-t[i] for t in ti] for i in range(m.nrows)]
    combos = _kernel_vectors(rows, m.ncols + len(ti))
    return Subspace.span((v[: m.ncols] for v in combos), m.ncols)


def map_subspace(m: Matrix, space: Subspace) -> Subspace:
    """The image m(space), computed in integers up to a global scalar."""
    if space.ambient_dim != m.ncols:
        raise ValueError("subspace does not live in the domain")
    if not space.dim:
        return Subspace.zero(m.nrows)
    den = 1
    for row in m.rows:
        for x in row:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
    mi = [[x.numerator * (den // x.denominator) for x in row] for row in m.rows]
    vi = _int_rows(space.basis)
    # rows of vi @ mi^T
    mt = [list(col) for col in zip(*mi)] if mi else []
    return Subspace.span(_combine(vi, mt, m.nrows), m.nrows)


def rank_lower_bound(m: Matrix, prime_index: int = 0) -> int:
    """Rank modulo a word-size prime, a certified lower bound for the rank over Q."""
    rows = _int_rows(m.rows)
    if not rows:
        return 0
    p = _prime(prime_index)
    a = _ModularImages(rows, m.ncols).mod(p)
    return len(kernels.rref_mod(a, p))


def column_rank(m: Matrix) -> int:
    """Exact rank, short-circuiting when full column rank is visible modulo a prime."""
    if m.ncols == 0:
        return 0
    if rank_lower_bound(m) == m.ncols:
        return m.ncols
    return m.rank()


def solve(m: Matrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """A particular exact solution of ``m x = rhs``, or None if inconsistent."""
    rhs = [as_rational(x) for x in rhs]
    if len(rhs) != m.nrows:
        raise ValueError("rhs length does not match the number of rows")
    n = m.ncols
    red, piv = rref([list(r) + [b] for r, b in zip(m.rows, rhs)], n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def leading_principal_minors(g: Matrix) -> list[Fraction]:
    """All leading principal minors, computed by fraction-free elimination.

    Without row exchanges the k-th Bareiss pivot equals the k-th leading
    minor. If a minor vanishes the elimination cannot continue without
    pivoting, and the remaining minors are evaluated one by one.
    """
    n = g.nrows
    if n != g.ncols:
        raise ValueError("minors of a non-square matrix")
    den = 1
    for row in g.rows:
        for x in row:
            den = lcm(den, x.denominator)
    a = [[x.numerator * (den // x.denominator) for x in row] for row in g.rows]
    minors: list[Fraction] = []
    prev = 1
    for k in range(n):
        pv = a[k][k]
        if pv == 0:
            minors.extend(determinant(Matrix._trusted(tuple(r[: j + 1] for r in g.rows[: j + 1]), j + 1))
                          for j in range(k, n))
            return minors
        minors.append(Fraction(pv, den ** (k + 1)))
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pv * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = pv
    return minors


def determinant(g: Matrix) -> Fraction:
    n = g.nrows
    if n != g.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in g.rows]
    det = ONE
    for c in range(n):
        k = next((i for i in range(c, n) if a[i][c]), None)
        if k is None:
            return ZERO
        if k != c:
            a[c], a[k] = a[k], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def is_positive_definite(g: Matrix) -> bool:
    """Sylvester's criterion, exactly."""
    if not g.is_symmetric():
        raise ValueError("positive-definiteness test requires a symmetric matrix")
    return all(m > 0 for m in leading_principal_minors(g))


def first_nonpositive_minor(g: Matrix) -> int | None:
    """1-based order of the first non-positive leading minor, if any."""
    for k, m in enumerate(leading_principal_minors(g), start=1):
        if m <= 0:
            return k
    return None
