import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from sphertwist.linalg import QQ, PrimeField

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

FIELDS = [PrimeField(32003), QQ]


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def fld(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
