import pytest

from flowdec.generators import chk_network
from flowdec.graph import MultiDag, validate
from flowdec.structure import make_chk

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def diamond():
    # s=0, a=1, b=2, t=3
    return MultiDag.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def path3():
    return MultiDag.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def ch2():
    return make_chk(2)


@pytest.fixture
def ch2_net():
    """CH_2 carrying the minimal value-4 flow with (u,v) unused."""
    return chk_network(2)


@pytest.fixture
def parallel53():
    return validate((2, [(0, 1), (0, 1)]), [5, 3])
