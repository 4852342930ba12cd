from __future__ import annotations

from fractions import Fraction

import pytest

from killingtype.catalog import (
    CHECKS,
    ENTRIES,
    UnknownEntry,
    build,
    expectations,
    list_entries,
    parse_name,
    resolve,
    run_expectations,
    split_args,
)
from killingtype.lie import InvalidAlgebra

from conftest import CATALOG

REQUIRED = {
    "abelian", "heisenberg-h3", "h3-plus-R", "free-2step-3gen", "milnor", "central-extension",
    "solvable2", "solvable4-dimg1", "direct-sum",
}


def test_registry_covers_required_entries():
    assert REQUIRED <= set(list_entries())


@pytest.mark.parametrize("name", sorted(set(list_entries()) | set(CATALOG)))
def test_expectations_pass(name):
    results = run_expectations(name)
    assert results, f"{name} has no expectations"
    bad = [r.to_dict() for r in results if not r.ok]
    assert not bad


@pytest.mark.parametrize("name", list_entries())
def test_expectation_metadata(name):
    for exp in expectations(name):
        assert exp.source in {"stated", "trivial", "derived"}
        assert exp.check in CHECKS


def test_free_two_step_brackets():
    alg = build("free-2step-3gen")
    assert alg.describe_brackets() == ["[e1,e2] = e4", "[e1,e3] = e5", "[e2,e3] = e6"]


def test_milnor_brackets():
    alg = build("milnor(1,2,3)")
    assert alg.describe_brackets() == ["[x,y] = z", "[x,z] = -3 y", "[y,z] = 2 x"]


def test_parsing():
    assert split_args("1, milnor(1,2,3) ,x") == ["1", "milnor(1,2,3)", "x"]
    assert parse_name("direct-sum(milnor(1,1,1))") == ("direct-sum", ["milnor(1,1,1)"])
    assert parse_name("solvable2") == ("solvable2", [])
    entry, args = resolve("milnor(1/2,-2)")
    assert entry.name == "milnor" and args == (Fraction(1, 2), -2, 3)
    assert build("milnor", ["1", "1", "1"]).name == build("milnor(1,1,1)").name


@pytest.mark.parametrize("bad", ["milnor(1,2", "milnor)1(", "milnor(1,2,3,4)", "milnor(1,x,3)"])
def test_malformed_names(bad):
    with pytest.raises(ValueError):
        build(bad)


def test_unknown_and_invalid():
    with pytest.raises(UnknownEntry):
        build("sl3")
    with pytest.raises(ValueError):
        build("milnor(1,0,3)")
    with pytest.raises(InvalidAlgebra):
        build("solvable4-dimg1(1,1,1,1)")
    with pytest.raises((ValueError, InvalidAlgebra)):
        build("abelian(0)")


def test_entry_signatures():
    assert ENTRIES["milnor"].signature() == "milnor(a,b,c)"
    assert ENTRIES["solvable2"].signature() == "solvable2"
