import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from holocone import rank1, spin, sym_real

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ALGEBRAS = [rank1(), sym_real(2), sym_real(3), spin(3), spin(4), spin(5)]
RANK2 = [sym_real(2), spin(3), spin(4)]

_ACCEPTANCE: list[str] = []


def acceptance_line(criterion: str, ok: bool, detail: str) -> None:
    _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(params=ALGEBRAS, ids=lambda a: a.name)
def algebra(request):
    return request.param


@pytest.fixture(params=RANK2, ids=lambda a: a.name)
def rank2(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
