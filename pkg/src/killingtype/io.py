"""JSON documents for algebras and tensors.

Algebra document::

    {"name": "h3", "dimension": 3,
     "brackets": [{"i": 1, "j": 2, "result": {"3": "1"}}],
     "gram": [["1", "0", "0"], ...]}          # optional, default identity

Indices are 1-based with i < j. Tensor literal::

    {"degree": 2, "coeffs": {"1,0,1": "3/2"}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .lie import InvalidAlgebra, MetricLieAlgebra
from .linalg import Matrix, as_rational, format_rational
from .symalg import SymTensor, monomials


class DocumentError(ValueError):
    """Malformed input document."""


def _rational(value, where: str):
    try:
        return as_rational(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: malformed rational {value!r}") from exc


def tensor_to_literal(K: SymTensor) -> dict:
    return {
        "degree": K.degree,
        "coeffs": {
            ",".join(map(str, e)): format_rational(K.coeffs[e])
            for e in monomials(K.n, K.degree) if e in K.coeffs
        },
    }


def tensor_from_literal(doc: Any, n: int) -> SymTensor:
    if not isinstance(doc, dict) or "degree" not in doc or "coeffs" not in doc:
        raise DocumentError("tensor literal needs 'degree' and 'coeffs'")
    p = doc["degree"]
    if not isinstance(p, int) or isinstance(p, bool) or p < 0:
        raise DocumentError("tensor degree must be a non-negative integer")
    if not isinstance(doc["coeffs"], dict):
        raise DocumentError("tensor 'coeffs' must be an object")
    coeffs = {}
    for key, value in doc["coeffs"].items():
        try:
            e = tuple(int(x) for x in str(key).split(","))
        except ValueError as exc:
            raise DocumentError(f"bad multi-index {key!r}") from exc
        if len(e) != n or any(x < 0 for x in e) or sum(e) != p:
            raise DocumentError(f"multi-index {key!r} does not index Sym^{p} in dimension {n}")
        coeffs[e] = _rational(value, f"coefficient of {key}")
    return SymTensor(n, p, coeffs)


def algebra_to_doc(alg: MetricLieAlgebra) -> dict:
    doc: dict[str, Any] = {
        "name": alg.name,
        "dimension": alg.n,
        "brackets": [
            {"i": i + 1, "j": j + 1, "result": {str(k + 1): format_rational(c) for k, c in enumerate(vec) if c}}
            for i, j, vec in alg.bracket_list()
        ],
    }
    if alg.gram.gram != Matrix.identity(alg.n):
        doc["gram"] = [[format_rational(x) for x in row] for row in alg.gram.gram.rows]
    if alg.labels != tuple(f"e{i + 1}" for i in range(alg.n)):
        doc["labels"] = list(alg.labels)
    return doc


def algebra_from_doc(doc: Any) -> MetricLieAlgebra:
    """Parse and validate; raises DocumentError or InvalidAlgebra."""
    if not isinstance(doc, dict):
        raise DocumentError("algebra document must be a JSON object")
    n = doc.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("'dimension' must be a positive integer")
    brackets = {}
    raw = doc.get("brackets", [])
    if not isinstance(raw, list):
        raise DocumentError("'brackets' must be a list")
    for entry in raw:
        if not isinstance(entry, dict) or not {"i", "j", "result"} <= entry.keys():
            raise DocumentError("each bracket needs i, j and result")
        i, j = entry["i"], entry["j"]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise DocumentError("bracket indices must be integers")
        if not 1 <= i < j <= n:
            raise DocumentError(f"bracket indices must satisfy 1 <= i < j <= {n}, got ({i},{j})")
        if (i - 1, j - 1) in brackets:
            raise DocumentError(f"bracket [{i},{j}] given twice")
        if not isinstance(entry["result"], dict):
            raise DocumentError("bracket result must be an object")
        result = {}
        for k, c in entry["result"].items():
            try:
                kk = int(k)
            except ValueError as exc:
                raise DocumentError(f"bad result index {k!r}") from exc
            if not 1 <= kk <= n:
                raise DocumentError(f"result index {kk} out of range")
            result[kk - 1] = _rational(c, f"bracket [{i},{j}]")
        brackets[(i - 1, j - 1)] = result
    gram = None
    if doc.get("gram") is not None:
        g = doc["gram"]
        if not isinstance(g, list) or len(g) != n or any(not isinstance(r, list) or len(r) != n for r in g):
            raise DocumentError(f"'gram' must be a {n}x{n} array")
        gram = [[_rational(x, "gram") for x in row] for row in g]
    labels = doc.get("labels")
    return MetricLieAlgebra.from_brackets(n, brackets, gram, name=str(doc.get("name", "")), labels=labels)


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(doc: Any, path: str | Path | None = None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


__all__ = [
    "DocumentError",
    "InvalidAlgebra",
    "algebra_from_doc",
    "algebra_to_doc",
    "read_json",
    "tensor_from_literal",
    "tensor_to_literal",
    "write_json",
]
