from pathlib import Path

import pytest

from fusionkit import catalog
from fusionkit import perm as P

GROUPS_DIR = Path(__file__).resolve().parent.parent / "groups"


def gens(text, degree):
    return P.parse_generators(text, degree)


def sub(G, text):
    return G.subgroup(gens=gens(text, G.degree))


@pytest.fixture
def s3():
    return catalog.symmetric(3)


@pytest.fixture
def s4():
    return catalog.symmetric(4)


@pytest.fixture
def a4():
    return catalog.alternating(4)


@pytest.fixture
def d8_in_s4(s4):
    return sub(s4, "(1 2 3 4); (1 3)")


@pytest.fixture
def v4_normal(s4):
    return sub(s4, "(1 2)(3 4); (1 3)(2 4)")


@pytest.fixture
def groups_dir():
    return GROUPS_DIR


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
