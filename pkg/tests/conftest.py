import numpy as np
import pytest
from hypothesis import strategies as st

from schmidt_locc import make_schmidt

REF_STATE = (0.45, 0.39, 0.16)
REF_PHI1 = (0.49, 0.33676028, 0.17323972)
REF_PHI2 = (0.49, 0.33676030, 0.17323970)


@st.composite
def schmidt_vectors(draw, min_rank=2, max_rank=6, floor=0.0):
    """Sorted probability vectors built from positive weights."""
    d = draw(st.integers(min_rank, max_rank))
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=d, max_size=d))
    x = np.asarray(w) / np.sum(w)
    if floor:
        x = (1.0 - d * floor) * x + floor
    return make_schmidt(x)


@pytest.fixture
def ref_state():
    return make_schmidt(REF_STATE)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(label, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
