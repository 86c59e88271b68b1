import numpy as np
import pytest
from hypothesis import settings

from synq.game import (
    GameSpec,
    Graph,
    complete_graph,
    cycle_graph,
    make_graph_game,
    petersen_graph,
    random_graph,
)

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

SUITE_SEED = 20240


def named_graphs():
    out = {f"K{n}": complete_graph(n) for n in range(2, 6)}
    out.update({f"C{n}": cycle_graph(n) for n in range(4, 8)})
    out["Petersen"] = petersen_graph()
    return out


def random_suite(count=100, seed=SUITE_SEED):
    rng = np.random.Generator(np.random.PCG64(seed))
    graphs = []
    for _ in range(count):
        n = int(rng.integers(2, 9))
        p = float(rng.uniform(0.2, 0.9))
        graphs.append(random_graph(n, p, rng))
    return graphs


def graph_suite():
    """The 100 seeded random graphs on at most 8 vertices plus the named ones."""
    return [(f"rand{i:03d}", g) for i, g in enumerate(random_suite())] + list(named_graphs().items())


@pytest.fixture(scope="session")
def c5():
    return make_graph_game(cycle_graph(5))


@pytest.fixture(scope="session")
def crafted_star():
    """Two-element game whose only extra zero is lambda(0,0,0,1); (star) fails."""
    return GameSpec.synchronous(2, 2, [(0, 0, 0, 1)])


@pytest.fixture(scope="session")
def crafted_counit():
    return GameSpec.synchronous(2, 2, [(0, 1, 0, 1)])
