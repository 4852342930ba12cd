"""Named metric Lie algebras with expected results attached.

Names may carry parameters, e.g. ``milnor(1,2,-3)`` or
``direct-sum(heisenberg-h3)``. Every entry lists expectations
``(check, args, expected, source)`` where ``source`` is one of

* ``stated``: a value taken from the published analysis of the example,
* ``trivial``: immediate from the definitions,
* ``derived``: computed once by an independent method and frozen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .constructions import (
    MilnorBasis,
    dimg1_algebra,
    find_codim1_abelian_ideal,
    milnor_algebra,
    milnor_extension,
)
from .killing import check_killing_type, conformal_killing_space, is_killing, killing_space
from .lie import InvalidAlgebra, MetricLieAlgebra, adjointness_witness
from .linalg import ZERO, Matrix, as_rational
from .symalg import GramContext, dim_sym


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class Expectation:
    check: str
    args: tuple
    expected: Any
    source: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[..., MetricLieAlgebra]
    params: tuple[tuple[str, Any], ...]  # (name, default)
    description: str
    expectations: Callable[[tuple], list[Expectation]] = field(repr=False, default=lambda args: [])

    def signature(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(p for p, _ in self.params)})"


# ------------------------------------------------------------------ builders

def abelian(n=3) -> MetricLieAlgebra:
    n = int(n)
    if n < 1:
        raise InvalidAlgebra(["abelian(n) needs n >= 1"])
    return MetricLieAlgebra.from_brackets(n, {}, name=f"abelian({n})")


def heisenberg() -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(3, {(0, 1): {2: 1}}, name="heisenberg-h3")


def h3_plus_r() -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(4, {(0, 1): {2: 1}}, name="h3-plus-R")


def free_two_step() -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(
        6, {(0, 1): {3: 1}, (0, 2): {4: 1}, (1, 2): {5: 1}}, name="free-2step-3gen")


def milnor(a=1, b=2, c=3) -> MetricLieAlgebra:
    m = MilnorBasis(a, b, c)
    return milnor_algebra(m, name=f"milnor({m.a},{m.b},{m.c})")


def central_ext(a=1, b=2, c=3, p=1, q=1, r=1) -> MetricLieAlgebra:
    return milnor_extension(MilnorBasis(a, b, c), (p, q, r))


def solvable2() -> MetricLieAlgebra:
    return MetricLieAlgebra.from_brackets(2, {(0, 1): {1: 1}}, name="solvable2")


def solvable4_dimg1(alpha=0, beta=1, gamma=2, f=1) -> MetricLieAlgebra:
    return dimg1_algebra(alpha, beta, gamma, f)


def direct_sum(entry="milnor(1,2,3)") -> MetricLieAlgebra:
    """Orthogonal direct sum of a catalog entry with a 1-dimensional abelian ideal."""
    return direct_sum_of(build(str(entry)))


# -------------------------------------------------------------- expectations

def _e(check, args, expected, source) -> Expectation:
    return Expectation(check, tuple(args), expected, source)


def _abelian_exp(args):
    n = int(args[0])
    return [
        _e("d_vanishes", [6], True, "trivial"),
        _e("killing_dim", [3], dim_sym(n, 3), "trivial"),
        _e("killing_type", [4], True, "trivial"),
    ]


def _h3_exp(args):
    return [
        _e("center_dim", [], 1, "trivial"),
        _e("derived_dim", [], 1, "trivial"),
        _e("two_step", [], True, "trivial"),
        _e("killing_dim", [1], 1, "derived"),
        _e("adjoint", [4], True, "stated"),
        _e("killing_type", [6], True, "stated"),
    ]


def _h3r_exp(args):
    return [
        _e("two_step", [], True, "trivial"),
        _e("center_dim", [], 2, "trivial"),
        _e("codim1_ideal", [], True, "stated"),
        _e("killing_type", [5], True, "stated"),
    ]


T_FREE = {"degree": 2, "coeffs": {"1,0,0,0,0,1": "1", "0,1,0,0,1,0": "-1", "0,0,1,1,0,0": "1"}}


def _free_exp(args):
    return [
        _e("center_dim", [], 3, "stated"),
        _e("derived_dim", [], 3, "stated"),
        _e("two_step", [], True, "stated"),
        _e("killing_dim", [1], 3, "stated"),
        _e("is_killing", [T_FREE], True, "stated"),
        _e("killing_type", [4], True, "stated"),
    ]


def _milnor_exp(args):
    m = MilnorBasis(*args)
    out = [
        _e("unimodular", [], True, "trivial"),
        _e("center_dim", [], 0, "trivial"),
        _e("ck_equals_killing", [2], True, "stated"),
        _e("killing_type", [6], True, "stated"),
    ]
    if m.generic:
        out += [
            _e("killing_dim", [1], 0, "stated"),
            _e("killing_dim", [2], 2, "stated"),
            _e("killing_dim", [4], 3, "derived"),
        ]
    if m.a == m.b == m.c:
        out.append(_e("d_vanishes", [6], True, "stated"))
    return out


def _ext_exp(args):
    return [
        _e("center_dim", [], 1, "trivial"),
        _e("ck_equals_killing", [2], True, "stated"),
        _e("killing_type", [5], True, "stated"),
    ]


def _solvable2_exp(args):
    return [
        _e("unimodular", [], False, "trivial"),
        _e("adjoint", [2], False, "derived"),
        _e("killing_type", [6], True, "derived"),
    ]


def _dimg1_exp(args):
    return [
        _e("derived_dim", [], 1, "trivial"),
        _e("codim1_ideal", [], True, "stated"),
        _e("killing_type", [5], True, "stated"),
    ]


def _direct_exp(args):
    return [
        _e("ck_equals_killing", [2], True, "stated"),
        _e("killing_type", [4], True, "stated"),
    ]


ENTRIES: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("abelian", abelian, (("n", 3),), "abelian Lie algebra R^n", _abelian_exp),
        CatalogEntry("heisenberg-h3", heisenberg, (), "3-dimensional Heisenberg algebra", _h3_exp),
        CatalogEntry("h3-plus-R", h3_plus_r, (), "Heisenberg algebra plus a line", _h3r_exp),
        CatalogEntry("free-2step-3gen", free_two_step, (),
                     "free 2-step nilpotent algebra on three generators", _free_exp),
        CatalogEntry("milnor", milnor, (("a", 1), ("b", 2), ("c", 3)),
                     "[x,y]=az, [y,z]=bx, [z,x]=cy in an orthonormal basis", _milnor_exp),
        CatalogEntry("central-extension", central_ext,
                     (("a", 1), ("b", 2), ("c", 3), ("p", 1), ("q", 1), ("r", 1)),
                     "milnor(a,b,c) extended by ω = p x∧y + q y∧z + r z∧x", _ext_exp),
        CatalogEntry("solvable2", solvable2, (), "[e1,e2]=e2, not unimodular", _solvable2_exp),
        CatalogEntry("solvable4-dimg1", solvable4_dimg1,
                     (("alpha", 0), ("beta", 1), ("gamma", 2), ("f", 1)),
                     "4-dimensional with 1-dimensional derived ideal", _dimg1_exp),
        CatalogEntry("direct-sum", direct_sum, (("entry", "milnor(1,2,3)"),),
                     "orthogonal direct sum with R", _direct_exp),
    ]
}


# ------------------------------------------------------------------- parsing

def split_args(text: str) -> list[str]:
    """Split at commas that are not nested inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise ValueError(f"unbalanced parentheses in {text!r}")
        cur.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur).strip())
    return out


def parse_name(spec: str) -> tuple[str, list[str]]:
    spec = spec.strip()
    if "(" not in spec:
        return spec, []
    if not spec.endswith(")"):
        raise ValueError(f"malformed entry name {spec!r}")
    base, inner = spec[:spec.index("(")], spec[spec.index("(") + 1:-1]
    return base.strip(), split_args(inner) if inner.strip() else []


def resolve(spec: str, params: Sequence | None = None) -> tuple[CatalogEntry, tuple]:
    base, args = parse_name(spec)
    if base not in ENTRIES:
        raise UnknownEntry(base)
    entry = ENTRIES[base]
    if params is not None:
        args = list(params)
    if len(args) > len(entry.params):
        raise ValueError(f"{entry.signature()} takes at most {len(entry.params)} parameters")
    values = []
    for k, (pname, default) in enumerate(entry.params):
        raw = args[k] if k < len(args) else default
        if isinstance(default, str):
            values.append(str(raw))
        elif pname == "n":
            values.append(int(raw))
        else:
            values.append(as_rational(raw))
    return entry, tuple(values)


def list_entries() -> list[str]:
    return list(ENTRIES)


def build(spec: str, params: Sequence | None = None) -> MetricLieAlgebra:
    """Build a validated algebra from a name such as ``milnor(1,-2,3)``."""
    entry, args = resolve(spec, params)
    return entry.builder(*args)


def expectations(spec: str) -> list[Expectation]:
    entry, args = resolve(spec)
    return entry.expectations(args)


# -------------------------------------------------------------------- checks

def _is_killing(alg, literal):
    from .io import tensor_from_literal

    return is_killing(alg, tensor_from_literal(literal, alg.n))


def _codim1(alg):
    try:
        find_codim1_abelian_ideal(alg)
    except ValueError:
        return False
    return True


CHECKS: dict[str, Callable[..., Any]] = {
    "killing_dim": lambda alg, p: killing_space(alg, p).dim,
    "conformal_dim": lambda alg, p: conformal_killing_space(alg, p).dim,
    "ck_equals_killing": lambda alg, p: all(
        conformal_killing_space(alg, q) == killing_space(alg, q) for q in range(1, p + 1)),
    "killing_type": lambda alg, p: all(check_killing_type(alg, q).verdict for q in range(p + 1)),
    "d_vanishes": lambda alg, p: all(alg.d_matrix(q).is_zero() for q in range(p + 1)),
    "center_dim": lambda alg: alg.predicates.center.dim,
    "derived_dim": lambda alg: alg.predicates.derived.dim,
    "two_step": lambda alg: alg.predicates.is_two_step_nilpotent,
    "unimodular": lambda alg: alg.predicates.is_unimodular,
    "adjoint": lambda alg, p: all(adjointness_witness(alg, q) is None for q in range(p + 1)),
    "is_killing": _is_killing,
    "codim1_ideal": _codim1,
}


@dataclass
class ExpectationResult:
    entry: str
    expectation: Expectation
    actual: Any

    @property
    def ok(self) -> bool:
        return self.actual == self.expectation.expected

    def to_dict(self) -> dict:
        return {
            "entry": self.entry,
            "check": self.expectation.check,
            "args": [a if not isinstance(a, dict) else "tensor" for a in self.expectation.args],
            "expected": self.expectation.expected,
            "actual": self.actual,
            "source": self.expectation.source,
            "ok": self.ok,
        }


def run_expectations(spec: str) -> list[ExpectationResult]:
    alg = build(spec)
    results = []
    for exp in expectations(spec):
        actual = CHECKS[exp.check](alg, *exp.args)
        results.append(ExpectationResult(alg.name, exp, actual))
    return results


def direct_sum_of(alg: MetricLieAlgebra) -> MetricLieAlgebra:
    """Orthogonal sum alg ⊕ R for an arbitrary algebra."""
    n = alg.n
    table = [[tuple(alg.table[i][j]) + (ZERO,) if i < n and j < n else (ZERO,) * (n + 1)
              for j in range(n + 1)] for i in range(n + 1)]
    g = Matrix([list(row) + [ZERO] for row in alg.gram.gram.rows] + [[ZERO] * n + [Fraction(1)]])
    return MetricLieAlgebra(table, GramContext(g, g.inverse()), f"direct-sum({alg.name})", list(alg.labels) + ["s"])


__all__ = [
    "CHECKS",
    "ENTRIES",
    "CatalogEntry",
    "Expectation",
    "ExpectationResult",
    "UnknownEntry",
    "build",
    "direct_sum_of",
    "expectations",
    "list_entries",
    "parse_name",
    "run_expectations",
]
