"""Shared test metrics, random points and hypothesis strategies."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from paraholo.core import ParaComplex
from paraholo.metric import build_metric

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# para-holomorphic test metrics (unbarred block only, upper triangle)
HOLO = {
    "quad1": (1, [["1 + z1*z1"]]),
    "exp1": (1, [["2*exp(z1)"]]),
    "warped2": (2, [["1", "0"], [None, "1 + z1*z1"]]),
    "mixed2": (2, [["2 + z2", "z1"], [None, "3 + z1*z2"]]),
    "twisted2": (2, [["1 + z1*z2", "e*z1"], [None, "2 + exp(z2)"]]),
}

NONHOLO = {
    "bar1": (1, [["2 + zb1"]]),
    "sum1": (1, [["3 + z1 + zb1"]]),
    "herm2": (2, [["2 + z1*zb1", "0"], [None, "2"]]),
    "cross2": (2, [["3", "zb2"], [None, "3 + zb1"]]),
}


def metric(name):
    n, G = {**HOLO, **NONHOLO}[name]
    return build_metric(n, G)


def random_points(n: int, count: int, seed: int = 0, radius: float = 0.3) -> list[tuple]:
    rng = np.random.default_rng(seed)
    return [tuple(ParaComplex(*rng.uniform(-radius, radius, 2)) for _ in range(n)) for _ in range(count)]


@pytest.fixture(params=sorted(HOLO))
def holo_metric(request):
    return metric(request.param)


@pytest.fixture(params=sorted(NONHOLO))
def nonholo_metric(request):
    return metric(request.param)


@pytest.fixture
def flat2():
    return build_metric(2, [["1", "0"], [None, "1"]])


finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
small = st.floats(min_value=-0.3, max_value=0.3, allow_nan=False, allow_infinity=False)
pcs = st.builds(ParaComplex, finite, finite)
small_pcs = st.builds(ParaComplex, small, small)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
