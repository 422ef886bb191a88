#!/usr/bin/env python3
#
# conftest.py - shared pytest fixtures for the tracesim tests

"""
conftest.py - shared pytest fixtures for the tracesim tests
"""

# import modules
#
import random

# 3rd party imports
#
import networkx as nx
import pytest

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        build_topology, \
        generate_ba


def complete_graph(n):
    """
    Return K_n as a Topology.
    """
    return build_topology([(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n):
    """
    Return the path 0 - 1 - ... - n-1.
    """
    return build_topology([(i, i + 1) for i in range(n - 1)])


def random_connected_graph(rng, n, extra):
    """
    Return a random connected Topology: a random spanning tree plus extra random edges.
    """
    edges = [(v, rng.randrange(v)) for v in range(1, n)]
    for _ in range(extra):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v))
    return build_topology(edges, node_count=n)


def random_graph(rng, n, p):
    """
    Return a G(n, p) Topology built with the python random module, or None when edgeless.
    """
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if not edges:
        return None
    return build_topology(edges, node_count=n)


def to_networkx(t):
    """
    Return t as an undirected networkx Graph.
    """
    g = nx.Graph()
    g.add_nodes_from(range(t.node_count))
    g.add_edges_from(t.edges())
    return g


@pytest.fixture
def triangle():
    return build_topology([(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star():
    """
    Hub 0 with leaves 1..5.
    """
    return build_topology([(0, v) for v in range(1, 6)])


@pytest.fixture
def pyrng():
    return random.Random(20261017)


@pytest.fixture(scope="session")
def ba_small():
    """
    BA(200, 3), shared by tests that only read it.
    """
    return generate_ba(200, 3, 7)


@pytest.fixture(scope="session")
def ba_large():
    """
    BA(2000, 3), used by the route length and hub avoidance checks.
    """
    return generate_ba(2000, 3, 11)
