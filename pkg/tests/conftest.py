import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from signedhom.core import SignedGraph

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def signed_graphs(draw, min_n=1, max_n=6, max_m=10, simple=False):
    n = draw(st.integers(min_n, max_n))
    if simple:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_m, len(pairs)))) if pairs else []
        edges = [(u, v, draw(st.sampled_from((1, -1)))) for u, v in chosen]
    else:
        vert = st.integers(0, n - 1)
        edges = draw(st.lists(st.tuples(vert, vert, st.sampled_from((1, -1))), max_size=max_m))
    return SignedGraph(n, edges)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
