import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")

# (criterion id, label, passed, detail) rows filled by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def record_criterion():
    def record(cid, label, passed, detail=""):
        ACCEPTANCE.append((cid, label, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, label, passed, detail in sorted(ACCEPTANCE, key=lambda r: (int(str(r[0]).rstrip("ab")), str(r[0]))):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {cid:>4} {label}" + (f"  ({detail})" if detail else ""))
