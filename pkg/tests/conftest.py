import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hdx import Cochain, FiniteAbelianGroup, complete_complex  # noqa: E402

FROZEN = json.loads((Path(__file__).parent / "data" / "oracle_values.json").read_text())
ACCEPTANCE_LINES: list[str] = []
Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
TWO_TRIANGLES = {(1, 2, 3): 1, (1, 2, 4): 1}


def frac(s):
    return Fraction(s)


def face_key(text):
    return tuple(int(v) for v in text.split(","))


@pytest.fixture(scope="session")
def frozen():
    return FROZEN


@pytest.fixture(scope="session")
def k7():
    return complete_complex(7, 2)


@pytest.fixture
def edge(k7):
    return Cochain.indicator(k7, 1, Z2, [(1, 2)])


@pytest.fixture
def star(k7):
    return Cochain.indicator(k7, 1, Z2, [(0, v) for v in range(1, 7)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
