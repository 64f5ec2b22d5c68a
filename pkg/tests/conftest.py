import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

ACCEPTANCE_LINES = []


def complex_matrices(max_dim=5, bound=10.0):
    """Hypothesis strategy for small dense complex square matrices."""
    finite = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    parts = st.builds(complex, finite, finite)
    return st.integers(1, max_dim).flatmap(
        lambda n: arrays(np.complex128, (n, n), elements=parts))


def matrix_pairs(max_dim=4, bound=10.0):
    finite = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    parts = st.builds(complex, finite, finite)
    return st.integers(1, max_dim).flatmap(
        lambda n: st.tuples(arrays(np.complex128, (n, n), elements=parts),
                            arrays(np.complex128, (n, n), elements=parts)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
