"""Shared, cached constructions. Building Drin(S3) and its reflective
algebras is the expensive part of the suite, so everything is memoized
per session."""

from functools import lru_cache

import pytest

from reflectum.comodule import regular_comodule_algebra, trivial_comodule_algebra
from reflectum.doubles import catalog_group, drinfeld_double, find_ribbon, group_algebra
from reflectum.reflective import reflective_algebra


@lru_cache(maxsize=None)
def double(name: str):
    G = catalog_group(name)
    H0 = group_algebra(G)
    D, R = drinfeld_double(H0)
    return G, H0, D, R


@lru_cache(maxsize=None)
def reflective(name: str, which: str = "k"):
    G, H0, D, R = double(name)
    A = trivial_comodule_algebra(D) if which == "k" else regular_comodule_algebra(D)
    return reflective_algebra(D, R, A)


@lru_cache(maxsize=None)
def ribbon(name: str):
    _, _, D, R = double(name)
    return find_ribbon(D, R)


@pytest.fixture(scope="session")
def c2():
    return double("C2")


@pytest.fixture(scope="session")
def c3():
    return double("C3")


@pytest.fixture(scope="session")
def s3():
    return double("S3")


ACCEPTANCE: dict = {}


def record(number: int, ok: bool, label: str) -> None:
    """Store and print one acceptance line; the summary hook repeats them."""
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'}  {label}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
