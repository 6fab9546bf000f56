import os

import pytest
from hypothesis import HealthCheck, settings

from anderson_ring import RingSpec

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

SUITE = ["Z4", "Z5", "Z6", "Z8", "Z9", "Z12", "Z30", "Z2xZ3", "Z2xZ9", "Z4xZ3"]
SMALL = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z9", "Z2xZ2", "Z2xZ3", "Z2xZ4", "Z3xZ3"]


@pytest.fixture(params=SUITE)
def suite_ring(request) -> RingSpec:
    return RingSpec.parse(request.param)


# acceptance criteria record one line each; printed after the run regardless of capture
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
