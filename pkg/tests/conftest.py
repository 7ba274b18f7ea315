import json
from fractions import Fraction

import pytest

from beideals.algebra import B2, BEAlgebra
from beideals.fixtures import (
    EXAMPLE1_ELEMENTS,
    EXAMPLE1_FUNCTION,
    EXAMPLE1_TABLE,
    EXAMPLE2_ELEMENTS,
    EXAMPLE2_FUNCTION,
    EXAMPLE2_TABLE,
    example1,
    example2,
)
from beideals.nstructures import NFunction

_acceptance_lines = []


def F(s) -> Fraction:
    return Fraction(str(s))


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def ex2():
    return example2()


@pytest.fixture
def b2():
    return B2


def b2f(one, a) -> NFunction:
    """N-function on the two-element algebra with f(1)=one, f(a)=a."""
    return NFunction(B2, (F(one), F(a)))


@pytest.fixture
def files(tmp_path):
    """Example algebras and functions written to disk in the documented formats."""
    paths = {}
    for name, doc in {
        "ex1": {"elements": EXAMPLE1_ELEMENTS, "table": EXAMPLE1_TABLE},
        "ex2": {"elements": EXAMPLE2_ELEMENTS, "table": EXAMPLE2_TABLE},
        "f1": {"function": EXAMPLE1_FUNCTION},
        "f2": {"function": EXAMPLE2_FUNCTION},
        "b2": {"elements": ["1", "a"], "table": [["1", "a"], ["1", "1"]]},
        "b2bad": {"function": {"1": "-0.1", "a": "-0.9"}},
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
        paths[name] = p
    return paths


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number, description, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        _acceptance_lines.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_acceptance_lines, key=lambda p: p[0]):
        terminalreporter.write_line(line)
