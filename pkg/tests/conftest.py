import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

ROOT = Path(__file__).resolve().parent.parent
SPECS = ROOT / "demos" / "specs"

CRITERIA_LINES = []

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def mp(x):
    """Exact-enough mpf from a Fraction at the current working precision."""
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def encloses(ball, ref, dps=60):
    """Oracle containment: lo <= ref <= hi compared at ``dps`` digits.

    The oracle itself is only good to about ``dps - 5`` digits, so a
    reference that lands within that relative slack of an endpoint counts.
    """
    with mpmath.workdps(dps):
        slack = abs(ref) * mpmath.mpf(10) ** (5 - dps)
        return mp(ball.lo) - slack <= ref <= mp(ball.hi) + slack


@pytest.fixture
def specs():
    return SPECS


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(CRITERIA_LINES):
            terminalreporter.write_line(line)
