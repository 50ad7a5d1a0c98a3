#!/usr/bin/env python
"""
Agglom Agglomerations
The monoid A(G): weights on vertices and edges with every vertex at least as
heavy as its incident edges, under pointwise addition.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

try:
    from .errors import AgglomerationError, GraphError
    from .multigraph import (Multigraph, Subgraph, connected_components, degrees,
                             enumerate_connected_subgraphs, is_connected, is_connected_subgraph,
                             subgraph_to_graph)
except ImportError:
    from errors import AgglomerationError, GraphError
    from multigraph import (Multigraph, Subgraph, connected_components, degrees,
                            enumerate_connected_subgraphs, is_connected, is_connected_subgraph,
                            subgraph_to_graph)

log = logging.getLogger(__name__)


def _is_valid(g: Multigraph, values: Tuple[int, ...]) -> bool:
    n = g.order
    for j, (u, v) in enumerate(g.end_indices):
        w = values[n + j]
        if values[u] < w or values[v] < w:
            return False
    return all(x >= 0 for x in values)


@dataclass(frozen=True)
class Agglomeration:
    """
    An element of A(G).

    `values` lists the weights of the vertices followed by the edges, both in
    the graph's declaration order.
    """

    graph: Multigraph = field(repr=False)
    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        expected = self.graph.order + self.graph.size
        if len(values) != expected:
            raise AgglomerationError("expected %d weights, got %d" % (expected, len(values)))
        for key, x in zip(self.graph.vertices + self.graph.edges, values):
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise AgglomerationError("weight of %s must be a nonnegative integer, got %r" % (key, x))
        n = self.graph.order
        for j, (u, v) in enumerate(self.graph.end_indices):
            w = values[n + j]
            for end in (u, v):
                if values[end] < w:
                    raise AgglomerationError("vertex %s has weight %d below incident edge %s weight %d"
                                             % (self.graph.vertices[end], values[end], self.graph.edges[j], w))

    def __getitem__(self, key: str) -> int:
        g = self.graph
        if key in g.vertex_index:
            return self.values[g.vertex_index[key]]
        if key in g.edge_index:
            return self.values[g.order + g.edge_index[key]]
        raise AgglomerationError("unknown vertex or edge: %s" % key)

    @property
    def weights(self) -> Dict[str, int]:
        return dict(zip(self.graph.vertices + self.graph.edges, self.values))

    @property
    def vertex_values(self) -> Tuple[int, ...]:
        return self.values[:self.graph.order]

    @property
    def edge_values(self) -> Tuple[int, ...]:
        return self.values[self.graph.order:]

    @property
    def is_zero(self) -> bool:
        return not any(self.values)

    def __add__(self, other):
        return add(self, other)

    def __repr__(self):
        nonzero = ", ".join("%s:%d" % (k, w) for k, w in self.weights.items() if w)
        return "Agglomeration(%s)" % (nonzero or "0")


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def zero(g: Multigraph) -> Agglomeration:
    return Agglomeration(g, (0,) * (g.order + g.size))


def from_mapping(g: Multigraph, weights: Mapping[str, int]) -> Agglomeration:
    """Build from an identifier -> weight map; omitted identifiers are 0."""
    values = [0] * (g.order + g.size)
    for key, w in weights.items():
        if key in g.vertex_index:
            values[g.vertex_index[key]] = w
        elif key in g.edge_index:
            values[g.order + g.edge_index[key]] = w
        else:
            raise AgglomerationError("unknown vertex or edge: %s" % key)
    return Agglomeration(g, tuple(values))


def indicator(g: Multigraph, s: Subgraph) -> Agglomeration:
    """1_{G'}: weight 1 on the members of s, 0 elsewhere."""
    if s.graph != g:
        raise AgglomerationError("subgraph belongs to a different graph")
    values = [0] * (g.order + g.size)
    for v in s.vertices:
        values[g.vertex_index[v]] = 1
    for e in s.edges:
        values[g.order + g.edge_index[e]] = 1
    return Agglomeration(g, tuple(values))


def vertex_indicator(g: Multigraph, v: str) -> Agglomeration:
    if v not in g.vertex_index:
        raise GraphError("unknown vertex: %s" % v)
    return indicator(g, Subgraph(g, (v,)))


def edge_indicator(g: Multigraph, e: str) -> Agglomeration:
    """1_{(r(e),e)}: the edge together with its two endpoints."""
    return indicator(g, Subgraph(g, g.endpoints(e), (e,)))


def all_ones(g: Multigraph) -> Agglomeration:
    return Agglomeration(g, (1,) * (g.order + g.size))


def scale(a: Agglomeration, n: int) -> Agglomeration:
    if n < 0:
        raise AgglomerationError("cannot scale by a negative factor %d" % n)
    return Agglomeration(a.graph, tuple(n * x for x in a.values))


def agglomerations_in_box(g: Multigraph, bound: int) -> Iterator[Agglomeration]:
    """Every agglomeration with all weights <= bound, vertices varying slowest."""
    n = g.order
    for vertex_values in itertools.product(range(bound + 1), repeat=n):
        ranges = [range(min(vertex_values[u], vertex_values[v]) + 1) for u, v in g.end_indices]
        for edge_values in itertools.product(*ranges):
            yield Agglomeration(g, vertex_values + edge_values)


def parse_agglomeration(g: Multigraph, text: str) -> Agglomeration:
    """Parse the flat JSON map format; omitted keys mean 0."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AgglomerationError("malformed agglomeration JSON: %s" % e) from None
    if not isinstance(doc, dict):
        raise AgglomerationError("agglomeration JSON must be an object of identifier -> integer")
    return from_mapping(g, doc)


def agglomeration_to_json(a: Agglomeration, sparse: bool = False) -> dict:
    if sparse:
        return {k: w for k, w in a.weights.items() if w}
    return a.weights


# ---------------------------------------------------------------------------
# Monoid operations
# ---------------------------------------------------------------------------

def _same_graph(a: Agglomeration, b: Agglomeration):
    if a.graph != b.graph:
        raise AgglomerationError("agglomerations live on different graphs")


def add(a: Agglomeration, b: Agglomeration) -> Agglomeration:
    _same_graph(a, b)
    return Agglomeration(a.graph, tuple(x + y for x, y in zip(a.values, b.values)))


def subtract_values(g: Multigraph, x: Tuple[int, ...], y: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
    """Raw form of try_subtract on weight tuples."""
    diff = tuple(p - q for p, q in zip(x, y))
    if _is_valid(g, diff):
        return diff
    return None


def try_subtract(a: Agglomeration, b: Agglomeration) -> Optional[Agglomeration]:
    """
    The c with b + c = a, if it is an agglomeration.

    Returns:
        Agglomeration or None; not None exactly when b divides a
    """
    _same_graph(a, b)
    diff = subtract_values(a.graph, a.values, b.values)
    if diff is None:
        return None
    return Agglomeration(a.graph, diff)


def divides(b: Agglomeration, a: Agglomeration) -> bool:
    return try_subtract(a, b) is not None


def support(a: Agglomeration) -> Subgraph:
    g = a.graph
    return Subgraph(g,
                    tuple(v for v, x in zip(g.vertices, a.vertex_values) if x),
                    tuple(e for e, x in zip(g.edges, a.edge_values) if x))


def split_max(a: Agglomeration) -> Tuple[Agglomeration, Agglomeration]:
    """
    Split off the indicator of the items carrying the maximum weight.

    Raises:
        AgglomerationError: zero input
    """
    if a.is_zero:
        raise AgglomerationError("cannot split the zero agglomeration")
    top = max(a.values)
    b = Agglomeration(a.graph, tuple(1 if x == top else 0 for x in a.values))
    return b, Agglomeration(a.graph, tuple(x - y for x, y in zip(a.values, b.values)))


def split_support(a: Agglomeration) -> Tuple[Agglomeration, Agglomeration]:
    """(1_supp(a), a - 1_supp(a)); raises for the zero agglomeration."""
    if a.is_zero:
        raise AgglomerationError("cannot split the zero agglomeration")
    b = Agglomeration(a.graph, tuple(1 if x else 0 for x in a.values))
    return b, Agglomeration(a.graph, tuple(x - y for x, y in zip(a.values, b.values)))


def atomic_decomposition(a: Agglomeration) -> List[Agglomeration]:
    """
    Factor a into atoms by repeated support splitting.

    Each support indicator splits further into its connected components, so the
    number of rounds is max(a) and every returned piece is an atom.
    """
    pieces = []
    rest = a
    while not rest.is_zero:
        layer, rest = split_support(rest)
        pieces.extend(support_component_indicators(layer))
    return pieces


def support_component_indicators(a: Agglomeration) -> List[Agglomeration]:
    """Indicators of the connected components of supp(a), in canonical order."""
    g = a.graph
    pieces = [Subgraph(g, c.vertices, c.edges) for c in connected_components(subgraph_to_graph(support(a)))]
    pieces.sort(key=lambda s: s.sort_key)
    return [indicator(g, s) for s in pieces]


# ---------------------------------------------------------------------------
# Atoms and primes
# ---------------------------------------------------------------------------

def is_atom(a: Agglomeration) -> bool:
    """True iff a is the indicator of a non-null connected subgraph."""
    if any(x > 1 for x in a.values) or a.is_zero:
        return False
    return is_connected_subgraph(support(a))


def atoms(g: Multigraph) -> List[Agglomeration]:
    """Indicators of all non-null connected subgraphs, in canonical order."""
    return [indicator(g, s) for s in enumerate_connected_subgraphs(g)]


def is_prime_atom(g: Multigraph, a: Agglomeration) -> bool:
    """
    An atom is prime iff every vertex of its support has degree <= 1 in g.

    Raises:
        AgglomerationError: a is not an atom of A(g)
    """
    if a.graph != g:
        raise AgglomerationError("agglomeration belongs to a different graph")
    if not is_atom(a):
        raise AgglomerationError("%r is not an atom" % a)
    degs = degrees(g)
    return all(degs[i] <= 1 for i, x in enumerate(a.vertex_values) if x)


def sequence_length(g: Multigraph, a: Agglomeration) -> int:
    """l(a) = sum deg(v) a(v) - sum a(e)."""
    degs = degrees(g)
    return sum(d * x for d, x in zip(degs, a.vertex_values)) - sum(a.edge_values)


def davenport(g: Multigraph) -> int:
    """
    Davenport constant: max over components C of 2|E_C| - |V_C| + 1.

    A trivial component contributes 0, the sequence-length of its only atom.

    Raises:
        GraphError: null graph
    """
    if g.is_null:
        raise GraphError("the Davenport constant needs a non-null graph")
    return max(2 * c.size - c.order + 1 for c in connected_components(g))


def max_length_atoms(g: Multigraph) -> List[Agglomeration]:
    """
    Atoms whose sequence-length equals the Davenport constant.

    Raises:
        GraphError: disconnected, null or trivial graph
    """
    if g.is_null or not is_connected(g):
        raise GraphError("max_length_atoms needs a connected graph")
    if g.order == 1:
        raise GraphError("max_length_atoms needs a non-trivial graph")
    target = davenport(g)
    found = [a for a in atoms(g) if sequence_length(g, a) == target]
    log.debug("%d atoms of maximal length %d", len(found), target)
    return found
