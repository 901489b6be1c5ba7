import pytest
from hypothesis import HealthCheck, settings

from netcolor.netspace import NetworkSpace

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def star3():
    """Star with hub h and unit spokes to leaves 0, 1, 2."""
    return NetworkSpace([(i, "h", i, 1) for i in range(3)])


@pytest.fixture
def k4():
    return NetworkSpace(
        [("ab", "a", "b", 1), ("ac", "a", "c", 1), ("ad", "a", "d", 1),
         ("bc", "b", "c", 1), ("bd", "b", "d", 1), ("cd", "c", "d", 1)]
    )


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
