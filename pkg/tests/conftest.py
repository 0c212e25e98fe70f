import pytest

from hhskit import (
    TreeOfFlatsConfig,
    interval_complex,
    toy2_config,
    tree_of_flats,
)


@pytest.fixture(scope="session")
def toy1_small():
    return tree_of_flats(TreeOfFlatsConfig(1, 1))[1]


@pytest.fixture(scope="session")
def toy1_medium():
    return tree_of_flats(TreeOfFlatsConfig(2, 1))[1]


@pytest.fixture(scope="session")
def toy1_deep():
    return tree_of_flats(TreeOfFlatsConfig(1, 2))[1]


@pytest.fixture(scope="session")
def toy2():
    return interval_complex(toy2_config())[1]


def random_tree(rng, n):
    """Uniform random attachment tree on n vertices."""
    edges = [(rng.randrange(i), i, 1) for i in range(1, n)]
    from hhskit import build_graph

    return build_graph(n, edges)
