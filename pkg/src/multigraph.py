#!/usr/bin/env python
"""
Agglom Multigraph
Finite loopless multigraphs and the graph subroutines every other module uses:
components, cycles, connected subgraphs, spanning trees and tree packing.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind
from sympy.utilities.iterables import multiset_partitions

try:
    from . import config
    from .errors import GraphError, ResourceLimitError, VerificationError
except ImportError:
    import config
    from errors import GraphError, ResourceLimitError, VerificationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Multigraph:
    """
    A triple (V, E, r): vertices, edges and the incidence map r.

    Identifiers keep their declaration order; that order is the canonical order
    for every enumeration downstream. Parallel edges are allowed, loops are not.
    """

    vertices: Tuple[str, ...]
    edges: Tuple[str, ...] = ()
    ends: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "ends", tuple(tuple(pair) for pair in self.ends))

        if len(self.edges) != len(self.ends):
            raise GraphError("every edge needs exactly one pair of ends")
        seen = set()
        for name in self.vertices:
            if name in seen:
                raise GraphError("duplicate vertex identifier: %s" % name)
            seen.add(name)
        vertex_set = set(self.vertices)
        for name, pair in zip(self.edges, self.ends):
            if name in vertex_set:
                raise GraphError("identifier used for both a vertex and an edge: %s" % name)
            if name in seen:
                raise GraphError("duplicate edge identifier: %s" % name)
            seen.add(name)
            if len(pair) != 2:
                raise GraphError("edge %s must have exactly two ends" % name)
            for v in pair:
                if v not in vertex_set:
                    raise GraphError("edge %s references unknown vertex %s" % (name, v))
            if pair[0] == pair[1]:
                raise GraphError("loop edge %s at vertex %s" % (name, pair[0]))

    @cached_property
    def vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> Dict[str, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def end_indices(self) -> Tuple[Tuple[int, int], ...]:
        """Endpoints of every edge as vertex indices, aligned with `edges`."""
        idx = self.vertex_index
        return tuple((idx[u], idx[v]) for u, v in self.ends)

    @cached_property
    def incidence(self) -> Dict[str, Tuple[str, str]]:
        return dict(zip(self.edges, self.ends))

    @cached_property
    def incident(self) -> Tuple[Tuple[int, ...], ...]:
        """Edge indices incident with each vertex index, in edge order."""
        lists = [[] for _ in self.vertices]
        for j, (u, v) in enumerate(self.end_indices):
            lists[u].append(j)
            lists[v].append(j)
        return tuple(tuple(lst) for lst in lists)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def is_null(self) -> bool:
        return not self.vertices

    def endpoints(self, edge: str) -> Tuple[str, str]:
        try:
            return self.incidence[edge]
        except KeyError:
            raise GraphError("unknown edge: %s" % edge) from None

    def incident_edges(self, vertex: str) -> Tuple[str, ...]:
        if vertex not in self.vertex_index:
            raise GraphError("unknown vertex: %s" % vertex)
        return tuple(self.edges[j] for j in self.incident[self.vertex_index[vertex]])

    def __repr__(self):
        return "Multigraph(|V|=%d, |E|=%d)" % (self.order, self.size)


@dataclass(frozen=True)
class Subgraph:
    """A vertex subset with an edge subset on it, inside an ambient graph."""

    graph: Multigraph = field(repr=False)
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...] = ()

    def __post_init__(self):
        vidx = self.graph.vertex_index
        eidx = self.graph.edge_index
        for v in self.vertices:
            if v not in vidx:
                raise GraphError("subgraph vertex %s not in graph" % v)
        for e in self.edges:
            if e not in eidx:
                raise GraphError("subgraph edge %s not in graph" % e)
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices), key=vidx.__getitem__)))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges), key=eidx.__getitem__)))
        chosen = set(self.vertices)
        for e in self.edges:
            u, v = self.graph.incidence[e]
            if u not in chosen or v not in chosen:
                raise GraphError("subgraph edge %s has an endpoint outside the subgraph" % e)

    @classmethod
    def from_indices(cls, graph: Multigraph, vertex_ids: Sequence[int], edge_ids: Sequence[int]):
        return cls(graph, tuple(graph.vertices[i] for i in vertex_ids), tuple(graph.edges[j] for j in edge_ids))

    @property
    def sort_key(self):
        return (tuple(self.graph.vertex_index[v] for v in self.vertices),
                tuple(self.graph.edge_index[e] for e in self.edges))

    @property
    def is_null(self) -> bool:
        return not self.vertices

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Multigraph:
    """
    Parse a graph description.

    Args:
        text: JSON {"vertices": [...], "edges": [{"id": ..., "ends": [u, v]}, ...]}
              or the line format understood by parse_graph_text

    Returns:
        Multigraph: identifiers in document order

    Raises:
        GraphError: malformed document, duplicate identifier, loop, unknown vertex
    """
    stripped = text.lstrip()
    if not stripped.startswith("{"):
        return parse_graph_text(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphError("malformed graph JSON: %s" % e) from None
    return graph_from_json(doc)


def graph_from_json(doc) -> Multigraph:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise GraphError("graph JSON needs a 'vertices' list")
    vertices = doc["vertices"]
    edge_docs = doc.get("edges", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphError("'vertices' must be a list of strings")
    if not isinstance(edge_docs, list):
        raise GraphError("'edges' must be a list")
    edges, ends = [], []
    for item in edge_docs:
        if not isinstance(item, dict) or not isinstance(item.get("id"), str):
            raise GraphError("every edge needs a string 'id'")
        pair = item.get("ends")
        if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(v, str) for v in pair):
            raise GraphError("edge %s needs 'ends' with two vertex identifiers" % item["id"])
        edges.append(item["id"])
        ends.append(tuple(pair))
    return Multigraph(tuple(vertices), tuple(edges), tuple(ends))


def parse_graph_text(text: str) -> Multigraph:
    """
    Parse the line-oriented format: `v <name>`, `e <name> <v1> <v2>`, `#` comments.
    """
    vertices, edges, ends = [], [], []
    for line_num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 4:
            edges.append(parts[1])
            ends.append((parts[2], parts[3]))
        else:
            raise GraphError("line %d: expected 'v <name>' or 'e <name> <v1> <v2>', got %r" % (line_num, raw))
    return Multigraph(tuple(vertices), tuple(edges), tuple(ends))


def graph_to_json(g: Multigraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "ends": list(pair)} for e, pair in zip(g.edges, g.ends)],
    }


def to_networkx(g: Multigraph) -> nx.MultiGraph:
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(g.vertices)
    for e, (u, v) in zip(g.edges, g.ends):
        nxg.add_edge(u, v, key=e)
    return nxg


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def from_edge_list(vertices: Sequence[str], pairs: Sequence[Tuple[str, str]]) -> Multigraph:
    """Build a graph naming the edges e1, e2, ... in the given order."""
    return Multigraph(tuple(vertices), tuple("e%d" % (i + 1) for i in range(len(pairs))), tuple(pairs))


def _names(prefix, n):
    return tuple("%s%d" % (prefix, i + 1) for i in range(n))


def path_graph(n: int) -> Multigraph:
    vs = _names("v", n)
    return from_edge_list(vs, list(zip(vs, vs[1:])))


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices, got %d" % n)
    vs = _names("v", n)
    return from_edge_list(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def complete_graph(n: int) -> Multigraph:
    vs = _names("v", n)
    return from_edge_list(vs, list(itertools.combinations(vs, 2)))


def banana_graph(k: int) -> Multigraph:
    """B_k: two vertices joined by k parallel edges."""
    return from_edge_list(("v1", "v2"), [("v1", "v2")] * k)


def complete_bipartite_graph(m: int, n: int) -> Multigraph:
    left, right = _names("v", m), _names("w", n)
    return from_edge_list(left + right, [(v, w) for v in left for w in right])


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    """Union of two graphs whose identifiers do not clash."""
    return Multigraph(g.vertices + h.vertices, g.edges + h.edges, g.ends + h.ends)


def induced_subgraph(g: Multigraph, vertices: Sequence[str]) -> Subgraph:
    chosen = set(vertices)
    return Subgraph(g, tuple(vertices), tuple(e for e, (u, v) in zip(g.edges, g.ends) if u in chosen and v in chosen))


def full_subgraph(g: Multigraph) -> Subgraph:
    return Subgraph(g, g.vertices, g.edges)


def subgraph_to_graph(s: Subgraph) -> Multigraph:
    return Multigraph(s.vertices, s.edges, tuple(s.graph.incidence[e] for e in s.edges))


def same_labelled_graph(g: Multigraph, h: Multigraph) -> bool:
    """Equality of (V, E, r) as sets, ignoring declaration order."""
    if set(g.vertices) != set(h.vertices) or set(g.edges) != set(h.edges):
        return False
    return all(frozenset(g.incidence[e]) == frozenset(h.incidence[e]) for e in g.edges)


# ---------------------------------------------------------------------------
# Degrees and shape
# ---------------------------------------------------------------------------

def degree(g: Multigraph, v: str) -> int:
    """
    Number of edges incident with v; parallel edges each count.

    Raises:
        GraphError: unknown vertex
    """
    if v not in g.vertex_index:
        raise GraphError("unknown vertex: %s" % v)
    return len(g.incident[g.vertex_index[v]])


def degrees(g: Multigraph) -> Tuple[int, ...]:
    return tuple(len(lst) for lst in g.incident)


def max_degree(g: Multigraph) -> int:
    return max(degrees(g), default=0)


def min_degree(g: Multigraph) -> int:
    return min(degrees(g), default=0)


def is_simple(g: Multigraph) -> bool:
    pairs = [frozenset(p) for p in g.ends]
    return len(pairs) == len(set(pairs))


def isolated_vertices(g: Multigraph) -> Tuple[str, ...]:
    return tuple(v for v, lst in zip(g.vertices, g.incident) if not lst)


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def _is_connected(vertex_ids: Sequence[int], end_pairs: Sequence[Tuple[int, int]]) -> bool:
    if not vertex_ids:
        return False
    uf = UnionFind(vertex_ids)
    for u, v in end_pairs:
        uf.union(u, v)
    root = uf[vertex_ids[0]]
    return all(uf[x] == root for x in vertex_ids)


def is_connected(g: Multigraph) -> bool:
    return _is_connected(list(range(g.order)), g.end_indices)


def is_connected_subgraph(s: Subgraph) -> bool:
    g = s.graph
    return _is_connected([g.vertex_index[v] for v in s.vertices],
                         [g.end_indices[g.edge_index[e]] for e in s.edges])


def connected_components(g: Multigraph) -> List[Subgraph]:
    """
    Maximal connected pieces, ordered by their smallest vertex.

    Returns:
        list: one Subgraph per component (every vertex and edge in exactly one)
    """
    pieces = []
    for nodes in nx.connected_components(to_networkx(g)):
        pieces.append(induced_subgraph(g, sorted(nodes, key=g.vertex_index.__getitem__)))
    pieces.sort(key=lambda s: g.vertex_index[s.vertices[0]])
    return pieces


def component_graphs(g: Multigraph) -> List[Multigraph]:
    return [subgraph_to_graph(s) for s in connected_components(g)]


def is_acyclic(g: Multigraph) -> bool:
    """True iff g has no cycle; two parallel edges form a cycle."""
    uf = UnionFind(range(g.order))
    for u, v in g.end_indices:
        if uf[u] == uf[v]:
            return False
        uf.union(u, v)
    return True


def enumerate_connected_subgraphs(g: Multigraph) -> List[Subgraph]:
    """
    All non-null connected subgraphs in canonical (vertex-set, edge-set) order.

    Returns:
        list: Subgraphs; its length is the number of atoms of A(g)
    """
    found = []
    n = g.order
    ends = g.end_indices
    for mask in range(1, 1 << n):
        vs = [i for i in range(n) if mask >> i & 1]
        inner = [j for j, (u, v) in enumerate(ends) if mask >> u & 1 and mask >> v & 1]
        if not _is_connected(vs, [ends[j] for j in inner]):
            continue
        for r in range(len(vs) - 1, len(inner) + 1):
            for chosen in itertools.combinations(inner, r):
                if _is_connected(vs, [ends[j] for j in chosen]):
                    found.append((tuple(vs), chosen))
    found.sort()
    log.debug("%d connected subgraphs in %r", len(found), g)
    return [Subgraph.from_indices(g, vs, es) for vs, es in found]


# ---------------------------------------------------------------------------
# Spanning trees and packing
# ---------------------------------------------------------------------------

def _require_connected(g: Multigraph, what: str):
    if g.is_null:
        raise GraphError("%s needs a non-null graph" % what)
    if not is_connected(g):
        raise GraphError("%s needs a connected graph" % what)


def _spanning_tree_edge_sets(g: Multigraph) -> List[Tuple[int, ...]]:
    n = g.order
    ends = g.end_indices
    trees = []
    for chosen in itertools.combinations(range(g.size), n - 1):
        uf = UnionFind(range(n))
        for j in chosen:
            u, v = ends[j]
            if uf[u] == uf[v]:
                break
            uf.union(u, v)
        else:
            trees.append(chosen)
    return trees


def spanning_trees(g: Multigraph) -> List[Subgraph]:
    """
    All spanning trees; parallel edges give distinct trees.

    Raises:
        GraphError: null or disconnected graph
    """
    _require_connected(g, "spanning_trees")
    all_vertices = tuple(range(g.order))
    return [Subgraph.from_indices(g, all_vertices, es) for es in _spanning_tree_edge_sets(g)]


def _partition_packing_bound(g: Multigraph) -> int:
    best = None
    ends = g.end_indices
    for blocks in multiset_partitions(list(range(g.order))):
        if len(blocks) < 2:
            continue
        label = {v: i for i, block in enumerate(blocks) for v in block}
        cross = sum(1 for u, v in ends if label[u] != label[v])
        value = cross // (len(blocks) - 1)
        if best is None or value < best:
            best = value
    return best


def disjoint_spanning_trees(g: Multigraph, k: int) -> Optional[List[Subgraph]]:
    """
    Find k pairwise edge-disjoint spanning trees by exhaustive search.

    Returns:
        list of k Subgraphs, or None when no such family exists
    """
    _require_connected(g, "disjoint_spanning_trees")
    if k <= 0:
        return []
    trees = [frozenset(t) for t in _spanning_tree_edge_sets(g)]
    all_vertices = tuple(range(g.order))

    def search(start, used, chosen):
        if len(chosen) == k:
            return chosen
        for i in range(start, len(trees)):
            if trees[i].isdisjoint(used):
                hit = search(i + 1, used | trees[i], chosen + [i])
                if hit is not None:
                    return hit
        return None

    hit = search(0, frozenset(), [])
    if hit is None:
        return None
    return [Subgraph.from_indices(g, all_vertices, sorted(trees[i])) for i in hit]


def tree_packing_number_exhaustive(g: Multigraph) -> int:
    """Largest k with k edge-disjoint spanning trees, by direct search."""
    _require_connected(g, "tree_packing_number")
    if g.order == 1:
        raise GraphError("the trivial graph contains arbitrarily many (empty) spanning trees")
    k = g.size // (g.order - 1)
    while k > 1 and disjoint_spanning_trees(g, k) is None:
        k -= 1
    return k


def tree_packing_number(g: Multigraph) -> int:
    """
    Spanning tree packing number via the Nash-Williams/Tutte partition formula.

    Small graphs are cross-checked against the exhaustive search.

    Raises:
        GraphError: null, disconnected or trivial graph
        ResourceLimitError: more than MAX_PARTITION_VERTICES vertices
    """
    _require_connected(g, "tree_packing_number")
    if g.order == 1:
        raise GraphError("the trivial graph contains arbitrarily many (empty) spanning trees")
    if g.order > config.MAX_PARTITION_VERTICES:
        raise ResourceLimitError("tree packing over %d vertices exceeds the partition limit %d"
                                 % (g.order, config.MAX_PARTITION_VERTICES))
    tau = _partition_packing_bound(g)
    if g.order <= config.PACKING_CROSSCHECK_MAX_VERTICES and g.size <= config.PACKING_CROSSCHECK_MAX_EDGES:
        direct = tree_packing_number_exhaustive(g)
        if direct != tau:
            raise VerificationError("partition formula gives %d but search finds %d disjoint trees" % (tau, direct),
                                    graph_to_json(g))
        log.debug("tree packing %d cross-checked on %r", tau, g)
    return tau
