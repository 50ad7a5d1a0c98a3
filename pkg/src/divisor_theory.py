#!/usr/bin/env python
"""
Agglom Divisor Theory
The embedding of A(G) into a free monoid on edges, incidences and isolated
vertices, and the rank of the resulting class group.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

try:
    from .agglomeration import Agglomeration, all_ones, edge_indicator, from_mapping, vertex_indicator
    from .errors import AgglomerationError, GraphError
    from .multigraph import Multigraph, isolated_vertices
except ImportError:
    from agglomeration import Agglomeration, all_ones, edge_indicator, from_mapping, vertex_indicator
    from errors import AgglomerationError, GraphError
    from multigraph import Multigraph, isolated_vertices

log = logging.getLogger(__name__)


def incidence_key(e: str, v: str) -> str:
    return "%s|%s" % (e, v)


def coordinates(g: Multigraph) -> Tuple[str, ...]:
    """Coordinate keys: edges, then incidences in edge order, then isolated vertices."""
    keys = list(g.edges)
    for e, (u, v) in zip(g.edges, g.ends):
        keys += [incidence_key(e, u), incidence_key(e, v)]
    keys += list(isolated_vertices(g))
    return tuple(keys)


@dataclass(frozen=True)
class DivisorImage:
    """A vector of the free monoid, aligned with coordinates(graph)."""

    graph: Multigraph
    values: Tuple[int, ...]

    def as_dict(self) -> Dict[str, int]:
        return dict(zip(coordinates(self.graph), self.values))

    def __getitem__(self, key: str) -> int:
        try:
            return self.as_dict()[key]
        except KeyError:
            raise GraphError("unknown divisor coordinate: %s" % key) from None

    def __le__(self, other) -> bool:
        return all(x <= y for x, y in zip(self.values, other.values))


def phi(g: Multigraph, a: Agglomeration) -> DivisorImage:
    """
    f(e) = a(e), f(e,v) = a(v) - a(e), and f(v) = a(v) for isolated v.
    """
    values = [a[e] for e in g.edges]
    for e, (u, v) in zip(g.edges, g.ends):
        values += [a[u] - a[e], a[v] - a[e]]
    values += [a[v] for v in isolated_vertices(g)]
    return DivisorImage(g, tuple(values))


def from_dict(g: Multigraph, mapping: Dict[str, int]) -> DivisorImage:
    keys = coordinates(g)
    unknown = set(mapping) - set(keys)
    if unknown:
        raise GraphError("unknown divisor coordinate: %s" % sorted(unknown)[0])
    return DivisorImage(g, tuple(mapping.get(k, 0) for k in keys))


def pointwise_min(x: DivisorImage, y: DivisorImage) -> DivisorImage:
    return DivisorImage(x.graph, tuple(min(p, q) for p, q in zip(x.values, y.values)))


def satisfies_image_equations(image: DivisorImage) -> bool:
    """f(e,v) + f(e) is the same for every edge e at v, and all values are nonnegative."""
    if any(x < 0 for x in image.values):
        return False
    g = image.graph
    f = image.as_dict()
    for v in g.vertices:
        totals = {f[incidence_key(e, v)] + f[e] for e in g.incident_edges(v)}
        if len(totals) > 1:
            return False
    return True


def reconstruct(g: Multigraph, image: DivisorImage) -> Agglomeration:
    """
    Inverse of phi on its image.

    Raises:
        AgglomerationError: image violates the image equations
    """
    if not satisfies_image_equations(image):
        raise AgglomerationError("vector is not in the image of phi")
    f = image.as_dict()
    weights = {e: f[e] for e in g.edges}
    for v in g.vertices:
        incident = g.incident_edges(v)
        weights[v] = f[incidence_key(incident[0], v)] + f[incident[0]] if incident else f[v]
    return from_mapping(g, weights)


def basis_witnesses(g: Multigraph, coord: str) -> Tuple[Agglomeration, Agglomeration]:
    """
    Two agglomerations whose images have the unit vector at `coord` as pointwise min.

    Args:
        g: ambient graph
        coord: an edge "e", an incidence "e|v" or an isolated vertex "v"

    Returns:
        tuple: (a, b) with min(phi(a), phi(b)) the unit vector at coord

    Raises:
        GraphError: unknown coordinate
    """
    if coord not in coordinates(g):
        raise GraphError("unknown divisor coordinate: %s" % coord)
    if coord in g.edge_index:
        return edge_indicator(g, coord), all_ones(g)
    if coord in g.vertex_index:
        single = vertex_indicator(g, coord)
        return single, single
    e, v = coord.split("|", 1)
    weights = {x: 1 for x in g.vertices + g.edges}
    weights[e] = 0
    return vertex_indicator(g, v), from_mapping(g, weights)


def class_group_rank(g: Multigraph) -> int:
    """2|E| - |V| + (number of isolated vertices)."""
    return 2 * g.size - g.order + len(isolated_vertices(g))


def relation_matrix(g: Multigraph) -> List[List[int]]:
    """
    Rows f(e_v,v) + f(e_v) - f(e,v) - f(e) over coordinates(g), one per vertex v
    and incident edge e other than e_v, the first edge at v.
    """
    keys = coordinates(g)
    col = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in g.vertices:
        incident = g.incident_edges(v)
        for e in incident[1:]:
            row = [0] * len(keys)
            row[col[incidence_key(incident[0], v)]] += 1
            row[col[incident[0]]] += 1
            row[col[incidence_key(e, v)]] -= 1
            row[col[e]] -= 1
            rows.append(row)
    return rows


def _smith_diagonal(rows: List[List[int]], width: int) -> List[int]:
    if not rows or not width:
        return []
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


def class_group_rank_smith(g: Multigraph) -> int:
    """Rank of the relation matrix, read off its Smith normal form."""
    rank = len(_smith_diagonal(relation_matrix(g), len(coordinates(g))))
    log.debug("relation matrix of %r has rank %d", g, rank)
    return rank


def class_group_invariants(g: Multigraph) -> Tuple[int, Tuple[int, ...]]:
    """
    Cokernel of phi on quotient groups, from the Smith form of its matrix.

    Returns:
        tuple: (free rank, torsion invariants greater than 1)
    """
    keys = coordinates(g)
    n = g.order + g.size
    columns = []
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        columns.append(_phi_linear(g, unit))
    rows = [[columns[j][i] for j in range(n)] for i in range(len(keys))]
    diagonal = _smith_diagonal(rows, n)
    return len(keys) - len(diagonal), tuple(d for d in diagonal if d > 1)


def _phi_linear(g: Multigraph, values: List[int]) -> List[int]:
    """phi extended to arbitrary integer weight vectors."""
    n = g.order
    out = list(values[n:])
    for j, (u, v) in enumerate(g.end_indices):
        out += [values[u] - values[n + j], values[v] - values[n + j]]
    out += [values[g.vertex_index[v]] for v in isolated_vertices(g)]
    return out


def prime_divisor_classes(g: Multigraph) -> Dict[str, Tuple[int, ...]]:
    """Class of each prime divisor: its column in the relation matrix."""
    rows = relation_matrix(g)
    return {k: tuple(r[i] for r in rows) for i, k in enumerate(coordinates(g))}


def image_to_json(image: DivisorImage) -> dict:
    return image.as_dict()
