import re

import pytest

from crystalzeta import build_zeta_M, isolate_zeros
from crystalzeta.io import load_bundled_ordinates
from crystalzeta.zerofind import Rectangle

R = Rectangle(-21.0, 22.0, -10.0, 80.0)

_criteria = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if m is None:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.failed:
        _criteria[key] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {name}")


@pytest.fixture(scope="session")
def zeta_m():
    return build_zeta_M()


@pytest.fixture(scope="session")
def zeta_m_zeros(zeta_m):
    return isolate_zeros(zeta_m, R)


@pytest.fixture(scope="session")
def zeta_zeros_seq():
    return load_bundled_ordinates()
