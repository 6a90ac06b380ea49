from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import strategies as st

from jacobibound.diffpoly import parse_system
from jacobibound.trop_core import NEG_INF, OrderMatrix, parse_matrix

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden_matrix():
    def load(name: str) -> OrderMatrix:
        return parse_matrix((GOLDEN / f"{name}.mat").read_text())

    return load


@pytest.fixture
def golden_system():
    def load(name: str):
        return parse_system((GOLDEN / f"{name}.sys").read_text())

    return load


def order_entries(lo: int = -3, hi: int = 6, neg_inf: bool = True):
    value = st.integers(lo, hi)
    return st.one_of(st.just(NEG_INF), value) if neg_inf else value


@st.composite
def order_matrices(draw, max_s: int = 4, max_n: int = 4, square: bool = False, wide: bool = False, lo: int = -3, hi: int = 6, neg_inf: bool = True):
    s = draw(st.integers(1, max_s))
    if square:
        n = s
    elif wide:
        n = draw(st.integers(s, max(s, max_n)))
    else:
        n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.lists(order_entries(lo, hi, neg_inf), min_size=n, max_size=n), min_size=s, max_size=s))
    return OrderMatrix(rows)


@st.composite
def bit_matrices(draw, max_s: int = 6, max_n: int = 7):
    s = draw(st.integers(1, max_s))
    n = draw(st.integers(1, max_n))
    return draw(st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=s, max_size=s))


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion at the end of the run
# ---------------------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
