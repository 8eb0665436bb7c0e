import os

import pytest

from trapspaces import GeneratorConfig, generate, parse_network

EXAMPLE_TEXT = """\
targets, factors
v1, v1 | v2
v2, v1 & v4
v3, !v1 & v4
v4, !v3
"""

NEGATION_CYCLE_TEXT = """\
targets, factors
v1, !v2
v2, v1
"""


@pytest.fixture(scope="session")
def example_net():
    return parse_network(EXAMPLE_TEXT)


@pytest.fixture(scope="session")
def example_graph(example_net):
    from trapspaces import build_graph

    return build_graph(example_net)


@pytest.fixture(scope="session")
def negation_cycle():
    return parse_network(NEGATION_CYCLE_TEXT)


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "example.bnet"
    path.write_text(EXAMPLE_TEXT, encoding="utf-8")
    return str(path)


def corpus(count, sizes=(4, 5, 6, 7, 8, 9, 10), k=3.0, seed0=0):
    """Deterministic stream of random networks cycling through the sizes."""
    for i in range(count):
        n = sizes[i % len(sizes)]
        yield generate(GeneratorConfig(n=n, k=k, seed=seed0 + i))


def fixture_path(name):
    return os.path.join(os.path.dirname(__file__), "fixtures", name)
