from __future__ import annotations

import pytest

from cma import PrimeField, Rationals, jordan_block
from cma.matrix import block_diag


def jordan_sum(field, *blocks):
    """Direct sum of Jordan blocks given as ``(size, eigenvalue)`` pairs."""
    return block_diag(*(jordan_block(field, size, ev) for size, ev in blocks))


@pytest.fixture
def Q():
    return Rationals()


@pytest.fixture
def F2():
    return PrimeField(2)


@pytest.fixture
def F3():
    return PrimeField(3)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture(params=["Q", "F5"])
def jt_pair(request):
    """``J3(0)+J1(0)+J1(1)`` and ``J3(1)+J2(1)``: related through the J-transform."""
    F = Rationals() if request.param == "Q" else PrimeField(5)
    return jordan_sum(F, (3, 0), (1, 0), (1, 1)), jordan_sum(F, (3, 1), (2, 1))


@pytest.fixture
def d_equivalent_pair(Q):
    """``J5+J4+J1`` and ``J5+J2+J1`` at eigenvalue 0."""
    return jordan_sum(Q, (5, 0), (4, 0), (1, 0)), jordan_sum(Q, (5, 0), (2, 0), (1, 0))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
