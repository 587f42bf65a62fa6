import random

import pytest
from hypothesis import settings

from crscalar.exactalg import free_ring, random_poly, sphere_ring

settings.register_profile("exact", max_examples=40, deadline=None)
settings.load_profile("exact")


@pytest.fixture
def S():
    return sphere_ring()


@pytest.fixture
def F():
    return free_ring()


def seeded_polys(ring, count, degree, seed=0, **kw):
    rng = random.Random(seed)
    return [random_poly(ring, degree, rng, **kw) for _ in range(count)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
