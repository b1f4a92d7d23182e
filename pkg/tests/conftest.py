import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from kgideals.corpus import random_1graph, random_dynsys, random_kgraph
from kgideals.fixtures import fx1, fx2, fx3

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def g1():
    return fx1(1)


@pytest.fixture
def g2():
    return fx2()


@pytest.fixture
def g3():
    return fx3()


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def one_graphs():
    return seeds.map(lambda s: random_1graph(random.Random(s)))


def two_graphs():
    return seeds.map(lambda s: random_kgraph(random.Random(s), 2))


def any_graphs():
    return st.tuples(seeds, st.sampled_from([1, 2, 2, 3])).map(
        lambda p: random_kgraph(random.Random(p[0]), p[1], 4 if p[1] < 3 else 3)
    )


def dynsystems(d=None):
    ranks = st.just(d) if d else st.integers(1, 3)
    return st.tuples(seeds, ranks).map(lambda p: random_dynsys(random.Random(p[0]), p[1], 4))
