import sys

import pytest

from combdual.presentation import BUNDLED, load_bundled


@pytest.fixture(params=sorted(BUNDLED))
def bundled(request):
    P, U = load_bundled(request.param)
    return request.param, P, U


@pytest.fixture
def prefix():
    return load_bundled("INST-PAPER")


@pytest.fixture
def ray():
    return load_bundled("INST-RAY")


@pytest.fixture
def fin():
    return load_bundled("INST-FIN")


@pytest.fixture
def fan1():
    return load_bundled("INST-FAN1")


@pytest.fixture
def fan2():
    return load_bundled("INST-FAN2")


@pytest.fixture
def inc3():
    return load_bundled("INST-INC3")


@pytest.fixture
def mixed():
    return load_bundled("INST-MIXED")


def pytest_terminal_summary(terminalreporter):
    mod = next((m for n, m in list(sys.modules.items()) if n.endswith("test_acceptance")), None)
    lines = getattr(mod, "LINES", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
