import math

import pytest

# high-precision values (mpmath, 30 digits), frozen
PI0 = 3.1533480949371623482681015895
SECH_PI = 0.0862667383340544146965540463314
COSH_2PI = 267.746761483748222245931879901
TANH_PI = 0.996272076220749944264690580013
S2 = {0.5: 17.4287170358769365601168540794,
      1.0: 1.61367395084581738783572427657,
      2.0: 0.196368119795042632869569002253}
S3_1 = 1.26859225054809648777611936302
S4_1 = 1.12842990465264031522109202272
STUDENT3_CHF_L1_PI = 0.350080434986693292734906865452
STUDENT3_CHF_L2_T1 = 0.40627280056000183175608406603
IID0_L1 = 0.162282600666355976484335932968
Q_L1_L1 = 0.00372097507139810672616715340684

TWO_PI = 2.0 * math.pi

SEED = 20261014

_criteria = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (passed, detail)."""
    def record(passed, detail=""):
        _criteria.append((request.node.name, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _criteria:
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}: {detail}")
