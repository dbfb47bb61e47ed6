import os

import pytest

from leavitt.fields import make_field
from leavitt.graphs import load_graph

GRAPH_DIR = os.path.join(os.path.dirname(__file__), "graphs")


def graph_path(name):
    return os.path.join(GRAPH_DIR, name + ".json")


def load(name):
    return load_graph(graph_path(name))


CORPUS = [
    "a3",
    "loop",
    "toeplitz",
    "two_loops",
    "cycle3_tail",
    "two_sinks",
    "cycle2",
    "cycle3",
]


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in CORPUS}


@pytest.fixture(scope="session")
def QQ():
    return make_field("Q")


@pytest.fixture(scope="session")
def GF2():
    return make_field("gf2")


@pytest.fixture(scope="session")
def GF4():
    return make_field("gf2^2")


@pytest.fixture(scope="session")
def GF5():
    return make_field("gf5")
