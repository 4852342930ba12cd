from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings

from killingtype.catalog import build
from killingtype.constructions import random_gram

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Catalog names used by the operator and regression checks.
CATALOG = [
    "abelian(3)",
    "heisenberg-h3",
    "h3-plus-R",
    "free-2step-3gen",
    "milnor(1,2,3)",
    "milnor(1,1,1)",
    "milnor(1,2,-3)",
    "central-extension(1,2,3,1,1,1)",
    "central-extension(1,1,1,1,0,0)",
    "solvable2",
    "solvable4-dimg1(0,1,2,1)",
    "solvable4-dimg1(1,1,2,0)",
    "direct-sum(milnor(1,2,3))",
    "direct-sum(milnor(1,1,1))",
]

TWO_STEP = ["heisenberg-h3", "h3-plus-R", "free-2step-3gen"]


def with_random_gram(name: str, seed: int):
    alg = build(name)
    return alg.with_gram(random_gram(alg.n, random.Random(seed)), name=f"{alg.name} [gram seed {seed}]")


@pytest.fixture(scope="session")
def catalog_algebras():
    return {name: build(name) for name in CATALOG}


# -- one PASS/FAIL line per acceptance criterion

_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    name = report.nodeid.split(marker, 1)[1]
    number = int(name.split("_", 1)[0])
    title = name.split("_", 1)[1].replace("_", " ")
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[number] = (title, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title}")
