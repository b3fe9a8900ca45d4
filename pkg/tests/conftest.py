import sys

import pytest

from etdyn.classify import SystemPresentation
from etdyn.laurent import parse_poly


def system(name, f, g):
    return SystemPresentation(name, parse_poly(f, 2), parse_poly(g, 1))


@pytest.fixture
def helmet():
    return system("helmet", "1+u1+u2", "u3-2")


@pytest.fixture
def tilted_pair():
    return (system("g1", "1+u1+u2", "u3^2+2*u3+10"),
            system("g2", "1+u1+u2", "u3^2+4*u3+10"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(k))
