"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a property violation was found,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from pathlib import Path

from . import catalog
from .io import DocumentError, algebra_from_doc, read_json, tensor_from_literal, tensor_to_literal, write_json
from .killing import check_killing_type, conformal_factor, conformal_killing_space, killing_completion, killing_space
from .lie import InvalidAlgebra, MetricLieAlgebra
from .search import FAMILIES, fixed_sampler, run_search
from .symalg import SymTensor, dim_sym

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # usage errors count as invalid input, keeping 2 for violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ loading

def _read_doc(path: str):
    try:
        return read_json(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: not valid JSON ({exc})", EXIT_INVALID) from exc


def _looks_like_path(target: str) -> bool:
    return target.endswith(".json") or os.sep in target


def load_target(target: str) -> tuple[MetricLieAlgebra, dict | None]:
    """An algebra from a file path or a catalog name; also returns the raw document."""
    if os.path.exists(target) or _looks_like_path(target):
        doc = _read_doc(target)
        try:
            return algebra_from_doc(doc), doc
        except (DocumentError, InvalidAlgebra) as exc:
            raise CliError(f"{target}: {exc}", EXIT_INVALID) from exc
    try:
        return catalog.build(target), None
    except catalog.UnknownEntry as exc:
        raise CliError(f"unknown catalog entry {exc.args[0]!r}; see 'catalog list'", EXIT_INVALID) from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"{target}: {exc}", EXIT_INVALID) from exc


def _emit(args, payload: dict, text: str) -> None:
    out = write_json(payload) if args.format == "json" else text
    if args.output:
        try:
            Path(args.output).write_text(out, encoding="utf-8")
        except OSError as exc:
            raise CliError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from exc
    else:
        sys.stdout.write(out)


def _fmt(K: SymTensor, alg: MetricLieAlgebra) -> str:
    return K.format(alg.labels)


# ----------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    doc = _read_doc(args.file)
    try:
        alg = algebra_from_doc(doc)
    except (DocumentError, InvalidAlgebra) as exc:
        problems = getattr(exc, "problems", None) or [str(exc)]
        payload = {"valid": False, "problems": problems}
        _emit(args, payload, "invalid\n" + "".join(f"  {p}\n" for p in problems))
        return EXIT_INVALID
    pred = alg.predicates.to_dict()
    payload = {"valid": True, "name": alg.name, "dimension": alg.n, "predicates": pred}
    lines = [f"valid: {alg.name or args.file} (dimension {alg.n})"]
    lines += [f"  {k}: {v}" for k, v in pred.items()]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_spaces(args) -> int:
    alg, _ = load_target(args.target)
    p = args.degree
    ks = killing_space(alg, p)
    cks = conformal_killing_space(alg, p)
    kb = [SymTensor.from_vector(alg.n, p, v).content_normalized() for v in ks.basis]
    cb = [SymTensor.from_vector(alg.n, p, v).content_normalized() for v in cks.basis]
    payload = {
        "algebra": alg.name,
        "p": p,
        "dim_sym": dim_sym(alg.n, p),
        "killing": {"dim": ks.dim, "basis": [tensor_to_literal(K) for K in kb]},
        "conformal": {"dim": cks.dim, "basis": [tensor_to_literal(K) for K in cb]},
    }
    lines = [f"{alg.name}  p={p}  dim Sym^{p} = {dim_sym(alg.n, p)}", f"Killing: dim {ks.dim}"]
    lines += [f"  {_fmt(K, alg)}" for K in kb]
    lines.append(f"conformal Killing: dim {cks.dim}")
    lines += [f"  {_fmt(K, alg)}" for K in cb]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check_type(args) -> int:
    alg, _ = load_target(args.target)
    reports, timings = [], []
    for p in range(args.max_degree + 1):
        t0 = time.perf_counter()
        reports.append(check_killing_type(alg, p))
        timings.append(time.perf_counter() - t0)
    all_true = all(r.verdict for r in reports)
    payload = {
        "algebra": alg.name,
        "dimension": alg.n,
        "max_degree": args.max_degree,
        "predicates": alg.predicates.to_dict(),
        "reports": [r.to_dict() for r in reports],
        "all_true": all_true,
    }
    if args.timing:
        payload["seconds"] = [round(t, 3) for t in timings]
    head = f"{'p':>2} {'Sym':>5} {'K':>5} {'Im L':>5} {'CK':>5} {'KT':>5}  verdict  cross"
    lines = [f"{alg.name} (dimension {alg.n})", head]
    for r, t in zip(reports, timings):
        row = (f"{r.p:>2} {r.dim_sym:>5} {r.dim_killing:>5} {r.dim_image_L:>5} {r.dim_conformal:>5} "
               f"{r.dim_killing_type:>5}  {str(r.verdict):<7}  {r.cross_check}")
        if args.timing:
            row += f"  {t:.2f}s"
        lines.append(row)
        if r.witness is not None:
            lines.append(f"   witness: {_fmt(r.witness, alg)}")
    lines.append("of Killing type in all degrees checked" if all_true else "NOT of Killing type")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if all_true else EXIT_VIOLATION


def _load_tensor(args, alg: MetricLieAlgebra, doc: dict | None) -> SymTensor:
    if args.tensor:
        tdoc = _read_doc(args.tensor)
    elif doc is not None and "witness" in doc:
        tdoc = doc
    else:
        raise CliError("no tensor given and the algebra document has no 'witness'", EXIT_INVALID)
    if isinstance(tdoc, dict) and "witness" in tdoc:
        tdoc = tdoc["witness"]
    try:
        return tensor_from_literal(tdoc, alg.n)
    except DocumentError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc


def cmd_complete(args) -> int:
    alg, doc = load_target(args.target)
    K = _load_tensor(args, alg, doc)
    B = conformal_factor(alg, K)
    R = killing_completion(alg, K)
    killing = alg.d(K).is_zero()
    payload = {
        "algebra": alg.name,
        "tensor": tensor_to_literal(K),
        "killing": killing,
        "conformal": B is not None,
        "conformal_factor": tensor_to_literal(B) if B is not None else None,
        "completion": tensor_to_literal(R) if R is not None else None,
        "of_killing_type": R is not None,
    }
    lines = [f"K = {_fmt(K, alg)}", f"Killing: {killing}"]
    if B is None:
        lines.append("not conformal Killing")
    else:
        lines.append(f"conformal Killing: dK = L·({_fmt(B, alg)})")
    lines.append(f"completion R = {_fmt(R, alg)}  (K + L·R is Killing)" if R is not None else "no completion R exists")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_VIOLATION if B is not None and R is None else EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = [{"name": e.signature(), "description": e.description,
                    "defaults": [str(d) for _, d in e.params]} for e in catalog.ENTRIES.values()]
        lines = [f"{e['name']:<40} {e['description']}" for e in entries]
        _emit(args, {"entries": entries}, "\n".join(lines) + "\n")
        return EXIT_OK
    names = args.names or catalog.list_entries()
    results = []
    for name in names:
        try:
            results += catalog.run_expectations(name)
        except catalog.UnknownEntry as exc:
            raise CliError(f"unknown catalog entry {exc.args[0]!r}", EXIT_INVALID) from exc
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"{name}: {exc}", EXIT_INVALID) from exc
    ok = all(r.ok for r in results)
    lines = []
    for r in results:
        e = r.expectation
        shown = ",".join("tensor" if isinstance(a, dict) else str(a) for a in e.args)
        lines.append(f"{'ok  ' if r.ok else 'FAIL'} {r.entry:<32} {e.check}({shown}) = {r.actual!r}"
                     f"  expected {e.expected!r} [{e.source}]")
    lines.append(f"{sum(r.ok for r in results)}/{len(results)} expectations hold")
    _emit(args, {"results": [r.to_dict() for r in results], "all_ok": ok}, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def cmd_search(args) -> int:
    if args.trials < 1:
        raise CliError("--trials must be at least 1", EXIT_INVALID)
    if args.family in FAMILIES:
        sampler = FAMILIES[args.family]
    else:
        alg, _ = load_target(args.family)
        sampler = fixed_sampler(alg)
    result = run_search(args.family, sampler, args.trials, args.seed, args.max_degree)
    payload = result.to_dict()
    written = []
    if result.witnesses:
        wdir = Path(args.witness_dir)
        try:
            wdir.mkdir(parents=True, exist_ok=True)
            for w in result.witnesses:
                path = wdir / f"witness-{_slug(args.family)}-seed{args.seed}-trial{w['trial']}.json"
                write_json(w, path)
                written.append(str(path))
        except OSError as exc:
            raise CliError(f"cannot write witness files: {exc.strerror or exc}", EXIT_IO) from exc
    counts = payload["verdict_counts"]
    lines = [f"family {args.family}, seed {args.seed}, degrees <= {args.max_degree}",
             f"verdict true in {counts['true']}/{args.trials} trials"]
    for rec in result.records:
        lines.append(f"  trial {rec['trial']}: {rec['verdict']}  {rec['algebra']}")
    lines += [f"witness written to {p}" for p in written]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if result.all_true else EXIT_VIOLATION


# ------------------------------------------------------------------- parser

def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--output", help="write the report to this file instead of stdout")

    parser = _Parser(prog="killingtype", description="Killing and conformal Killing tensors on metric Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spaces", parents=[common], help="Killing and conformal Killing spaces in one degree")
    p.add_argument("target", help="algebra file or catalog name")
    p.add_argument("--degree", type=_nonneg, default=2)
    p.set_defaults(func=cmd_spaces)

    p = sub.add_parser("check-type", parents=[common], help="per-degree Killing-type verdicts")
    p.add_argument("target", help="algebra file or catalog name")
    p.add_argument("--max-degree", type=_nonneg, default=6)
    p.add_argument("--timing", action="store_true", help="include per-degree running times")
    p.set_defaults(func=cmd_check_type)

    p = sub.add_parser("complete", parents=[common], help="find R with K + L·R Killing")
    p.add_argument("target", help="algebra file (may embed a 'witness' tensor) or catalog name")
    p.add_argument("tensor", nargs="?", help="tensor file")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("catalog", parents=[common], help="built-in algebras")
    p.add_argument("action", choices=["list", "run"])
    p.add_argument("names", nargs="*")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("search", parents=[common], help="random metrics on an algebra family")
    p.add_argument("family", help=f"one of {', '.join(FAMILIES)}, a catalog name or an algebra file")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=_nonneg, default=6)
    p.add_argument("--witness-dir", default="witnesses")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
