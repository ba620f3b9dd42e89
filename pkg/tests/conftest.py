from fractions import Fraction

import pytest

from n2kit.verma import HighestWeight

# generic weight: no accidental singular vectors at low level
GENERIC_HW = HighestWeight.of(Fraction(1, 3), Fraction(-2, 7), Fraction(5, 4))


@pytest.fixture
def generic_hw():
    return GENERIC_HW


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=str):
        terminalreporter.write_line(results[key])
