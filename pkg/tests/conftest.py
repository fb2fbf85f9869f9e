import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lpa_ideals.fixtures import load
from lpa_ideals.poly import GF, QQ, Poly
from lpa_ideals.verify import STRATA, GenConfig, random_graph, random_ideal

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def fx():
    return load


def polys(field=QQ, max_degree=4, nonzero=False, lo=-5, hi=5):
    coeffs = st.lists(st.integers(lo, hi), min_size=1, max_size=max_degree + 1)
    s = coeffs.map(lambda cs: Poly(cs, field))
    return s.filter(bool) if nonzero else s


fields = st.sampled_from([QQ, GF(2), GF(3), GF(5)])


@st.composite
def graphs(draw, max_vertices=5):
    seed = draw(st.integers(0, 10**6))
    stratum = draw(st.sampled_from(STRATA))
    return random_graph(GenConfig(max_vertices=max_vertices), random.Random(seed), stratum)


@st.composite
def graph_with_ideals(draw, k=3, max_vertices=5):
    seed = draw(st.integers(0, 10**6))
    stratum = draw(st.sampled_from(STRATA))
    cfg = GenConfig(max_vertices=max_vertices)
    rng = random.Random(seed)
    g = random_graph(cfg, rng, stratum)
    return g, [random_ideal(g, cfg, rng) for _ in range(k)]


ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
