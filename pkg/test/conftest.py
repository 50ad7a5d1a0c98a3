"""
Shared fixtures for the agglom test suite.
Puts src/ on the import path the same way run.py does.
"""

import os
import random
import sys

import networkx as nx
import pytest

src_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'src')
sys.path.insert(0, src_path)

import multigraph as mg  # noqa: E402


@pytest.fixture
def p2():
    return mg.path_graph(2)


@pytest.fixture
def p3():
    return mg.path_graph(3)


@pytest.fixture
def c3():
    return mg.cycle_graph(3)


@pytest.fixture
def c4():
    return mg.cycle_graph(4)


@pytest.fixture
def k4():
    return mg.complete_graph(4)


@pytest.fixture
def b2():
    return mg.banana_graph(2)


def make_random_graph(rng, max_vertices, max_edges, connected=True):
    """Random loopless multigraph; a spanning tree first when connected."""
    n = rng.randint(2, max_vertices)
    vs = tuple("v%d" % (i + 1) for i in range(n))
    pairs = []
    if connected:
        for i in range(1, n):
            pairs.append((vs[rng.randrange(i)], vs[i]))
    extra = rng.randint(0, max(0, max_edges - len(pairs)))
    for _ in range(extra):
        u, w = rng.sample(vs, 2)
        pairs.append((u, w))
    return mg.from_edge_list(vs, pairs)


def small_multigraphs(max_vertices, max_edges):
    """
    Every simple graph with at most max_vertices vertices and max_edges edges,
    each followed by a copy with its first edge doubled when that still fits.
    """
    graphs = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_vertices or h.number_of_edges() > max_edges:
            continue
        vs = tuple("v%d" % (i + 1) for i in range(n))
        pairs = [(vs[u], vs[w]) for u, w in h.edges()]
        graphs.append(mg.from_edge_list(vs, pairs))
        if pairs and len(pairs) < max_edges:
            graphs.append(mg.from_edge_list(vs, [pairs[0]] + pairs))
    return graphs


@pytest.fixture
def random_graph():
    def factory(seed, max_vertices=5, max_edges=7, connected=True):
        return make_random_graph(random.Random(seed), max_vertices, max_edges, connected)
    return factory


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive checks over the full acceptance boxes; deselect with -m 'not slow'")
