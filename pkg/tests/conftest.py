import pytest
from hypothesis import HealthCheck, settings

from tregular.hypercomplex import StepList, paravector_basis, w_h_basis
from tregular.tpoly import family

settings.register_profile(
    "ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("ci")

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ex036():
    T, B = StepList((0, 3, 6)), paravector_basis(6)
    return T, B, family(T, B)


@pytest.fixture(scope="session")
def ex147():
    T, B = StepList((1, 4, 7)), w_h_basis(6, 6)
    return T, B, family(T, B)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, label = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {label}")
