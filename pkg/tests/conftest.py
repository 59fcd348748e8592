import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polydiag.partitions import IntegerPartition, _canonical

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def set_partitions(draw, min_n=1, max_n=8, n=None):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return _canonical(n, labels)


@st.composite
def integer_partitions_st(draw, max_weight=6, min_weight=1):
    w = draw(st.integers(min_weight, max_weight))
    parts = []
    left = w
    while left:
        v = draw(st.integers(1, left))
        parts.append(v)
        left -= v
    return IntegerPartition(tuple(parts))


# acceptance lines are collected here and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
