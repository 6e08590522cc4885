import numpy as np
import pytest
from hypothesis import strategies as st

from gemqec.pauli import PauliOperator


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pauli_strings(n_min=1, n_max=5):
    """Hypothesis strategy for signed Pauli labels of a fixed random length."""
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.tuples(st.sampled_from(["", "-", "i", "-i"]), st.text("IXYZ", min_size=n, max_size=n))
    ).map(lambda t: PauliOperator.from_string(t[0] + t[1]))


def pauli_pairs(n_min=1, n_max=5):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.tuples(
            st.text("IXYZ", min_size=n, max_size=n),
            st.text("IXYZ", min_size=n, max_size=n),
            st.sampled_from(["", "-", "i", "-i"]),
        )
    ).map(lambda t: (PauliOperator.from_string(t[2] + t[0]), PauliOperator.from_string(t[1])))


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for an acceptance criterion, with its runtime."""
    import time

    state = {"label": request.node.name, "start": time.perf_counter()}
    yield state
    elapsed = time.perf_counter() - state["start"]
    failed = getattr(request.node, "rep_call", None) is None or request.node.rep_call.failed
    line = f"{'FAIL' if failed else 'PASS'}  {state['label']}  ({elapsed:.1f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
