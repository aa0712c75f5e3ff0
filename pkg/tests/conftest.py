from __future__ import annotations

import pytest
from hypothesis import strategies as st

from focusprop.model import FocusInstance, FocusParams, Infeasible, IntInterval, Variant

I = IntInterval
ACCEPTANCE_LINES: list[str] = []

BOOL = (I(0, 0), I(1, 1), I(0, 1))


def outcome(fn, inst):
    """Domains after ``fn`` or the string ``"infeasible"``."""
    try:
        return fn(inst).domains()
    except Infeasible:
        return "infeasible"


@st.composite
def instances(draw, variant: Variant, n_max: int = 7, k_max: int = 1):
    lo_n = 2 if variant.springy else 1
    n = draw(st.integers(lo_n, n_max))
    k = draw(st.integers(0, k_max))
    xs = tuple(I(d.lo + k, d.hi + k) for d in draw(st.lists(st.sampled_from(BOOL), min_size=n, max_size=n)))
    length = draw(st.integers(lo_n, n))
    h = draw(st.integers(0, length - 2)) if variant.springy else 0
    a, b = sorted(draw(st.lists(st.integers(0, n), min_size=2, max_size=2)))
    zc = None
    if variant.weighted:
        c, d = sorted(draw(st.lists(st.integers(0, n + 1), min_size=2, max_size=2)))
        zc = I(c, d)
    return FocusInstance(xs, I(a, b), FocusParams(k, length, h, variant), zc)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record
