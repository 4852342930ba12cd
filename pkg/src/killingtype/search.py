"""Seeded random exploration of algebra families without a known answer.

Each trial draws an algebra from the family together with a random positive
definite Gram matrix, runs the Killing-type check up to a degree bound and
records the verdicts. Results are empirical and say nothing beyond the
degrees and metrics actually sampled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .constructions import random_gram
from .io import algebra_to_doc, tensor_to_literal
from .killing import check_killing_type
from .lie import MetricLieAlgebra
from .linalg import format_rational


def _small(rng: random.Random) -> int:
    return rng.randint(-3, 3)


def solvable4_dimg2(rng: random.Random) -> MetricLieAlgebra:
    """R² ⋉ R² where e1, e2 act on span{e3, e4} by commuting matrices A and sA + tI."""
    while True:
        A = [[_small(rng), _small(rng)], [_small(rng), _small(rng)]]
        s, t = _small(rng), _small(rng)
        B = [[s * A[i][j] + t * (i == j) for j in range(2)] for i in range(2)]
        brackets = {}
        for src, M in ((0, A), (1, B)):
            for col in range(2):
                image = {2 + row: M[row][col] for row in range(2) if M[row][col]}
                if image:
                    brackets[(src, 2 + col)] = image
        alg = MetricLieAlgebra.from_brackets(4, brackets, name=f"solvable4-dimg2(A={A},s={s},t={t})")
        if alg.predicates.derived.dim == 2:
            return alg


def solvable4_heisenberg_commutator(rng: random.Random) -> MetricLieAlgebra:
    """R·e4 ⋉ h3 where e4 acts by m on span{e1, e2} and by tr(m) on the center e3; m invertible."""
    while True:
        m = [[_small(rng), _small(rng)], [_small(rng), _small(rng)]]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            break
    tr = m[0][0] + m[1][1]
    brackets = {(0, 1): {2: 1}}
    for col in range(2):
        image = {row: m[row][col] for row in range(2) if m[row][col]}
        if image:
            brackets[(3, col)] = image
    if tr:
        brackets[(3, 2)] = {2: tr}
    return MetricLieAlgebra.from_brackets(4, brackets, name=f"solvable4-heisenberg-commutator(m={m})")


FAMILIES: dict[str, Callable[[random.Random], MetricLieAlgebra]] = {
    "solvable4-dimg2": solvable4_dimg2,
    "solvable4-heisenberg-commutator": solvable4_heisenberg_commutator,
}


@dataclass
class SearchResult:
    family: str
    seed: int
    trials: int
    max_degree: int
    records: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)

    @property
    def all_true(self) -> bool:
        return not self.witnesses

    def to_dict(self) -> dict:
        true = sum(r["verdict"] for r in self.records)
        return {
            "family": self.family,
            "seed": self.seed,
            "trials": self.trials,
            "max_degree": self.max_degree,
            "verdict_counts": {"true": true, "false": len(self.records) - true},
            "records": self.records,
            "witnesses": self.witnesses,
        }


def run_search(family: str, sampler: Callable[[random.Random], MetricLieAlgebra], trials: int, seed: int,
               max_degree: int) -> SearchResult:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    result = SearchResult(family, seed, trials, max_degree)
    for k in range(trials):
        base = sampler(rng)
        gram = random_gram(base.n, rng)
        alg = base.with_gram(gram)
        degrees = []
        witness = None
        for p in range(max_degree + 1):
            rep = check_killing_type(alg, p)
            degrees.append({"p": p, "verdict": rep.verdict, "dim_conformal": rep.dim_conformal,
                            "dim_killing_type": rep.dim_killing_type})
            if not rep.verdict and witness is None:
                witness = (p, rep.witness)
        record = {
            "trial": k,
            "algebra": base.name,
            "gram": [[format_rational(x) for x in row] for row in gram.rows],
            "verdict": witness is None,
            "degrees": degrees,
        }
        result.records.append(record)
        if witness is not None:
            doc = algebra_to_doc(alg)
            doc["witness"] = tensor_to_literal(witness[1])
            doc["trial"] = k
            result.witnesses.append(doc)
    return result


def fixed_sampler(alg: MetricLieAlgebra) -> Callable[[random.Random], MetricLieAlgebra]:
    return lambda rng: alg

