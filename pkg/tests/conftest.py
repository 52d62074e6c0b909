import numpy as np
import pytest

from samuelson import ModelParams

_ACCEPTANCE = []


def random_strict_params(rng, b_max=3.0, P_range=(-500.0, 500.0)):
    while True:
        c1, c2 = rng.uniform(0.01, 0.99, size=2)
        if c1 + c2 < 0.995:
            break
    return ModelParams(c1, c2, rng.uniform(0.01, b_max), rng.uniform(*P_range))


def random_boundary_params(rng, b_max=3.0, P_range=(-100.0, 100.0)):
    c1 = rng.uniform(0.02, 0.98)
    return ModelParams(c1, 1.0 - c1, rng.uniform(0.05, b_max), rng.uniform(*P_range), "extended")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def acceptance_report():
    def record(number, title, ok, detail=""):
        _ACCEPTANCE.append((number, title, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}  {detail}")
