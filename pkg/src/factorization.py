#!/usr/bin/env python
"""
Agglom Factorization
Factorization enumeration and the arithmetical invariants of A(G): sets of
lengths, distances, catenary degree, omega, elasticity and refined elasticities.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

try:
    from . import config
    from .agglomeration import (Agglomeration, add, agglomerations_in_box, atoms, edge_indicator, indicator,
                                is_atom, subtract_values, vertex_indicator, zero)
    from .errors import FactorizationError, GraphError, VerificationError
    from .multigraph import (Multigraph, Subgraph, connected_components, degrees, disjoint_spanning_trees,
                             full_subgraph, is_acyclic, is_connected, is_simple, max_degree,
                             subgraph_to_graph, tree_packing_number)
except ImportError:
    import config
    from agglomeration import (Agglomeration, add, agglomerations_in_box, atoms, edge_indicator, indicator,
                               is_atom, subtract_values, vertex_indicator, zero)
    from errors import FactorizationError, GraphError, VerificationError
    from multigraph import (Multigraph, Subgraph, connected_components, degrees, disjoint_spanning_trees,
                            full_subgraph, is_acyclic, is_connected, is_simple, max_degree,
                            subgraph_to_graph, tree_packing_number)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """A multiset of atoms, canonically sorted, together with the element it factors."""

    element: Any
    atoms: Tuple[Any, ...]

    @property
    def length(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class LengthSet:
    lengths: Tuple[int, ...]
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(sorted(set(self.lengths))))

    def __contains__(self, k):
        return k in self.lengths

    def __iter__(self):
        return iter(self.lengths)

    def __len__(self):
        return len(self.lengths)

    @property
    def min(self) -> int:
        return self.lengths[0]

    @property
    def max(self) -> int:
        return self.lengths[-1]


@dataclass(frozen=True)
class FactorizationSet:
    element: Any
    factorizations: Tuple[Factorization, ...]
    complete: bool = True
    cap: Optional[int] = None

    def __iter__(self):
        return iter(self.factorizations)

    def __len__(self):
        return len(self.factorizations)

    @property
    def length_set(self) -> LengthSet:
        return LengthSet(tuple(z.length for z in self.factorizations), self.complete)


@dataclass(frozen=True)
class CatenaryResult:
    value: Optional[int]
    complete: bool
    factorization_count: int


@dataclass(frozen=True)
class OmegaResult:
    value: int
    complete: bool
    cap: int
    witness: Optional[Agglomeration] = None


@dataclass(frozen=True)
class Witness:
    """An element with two certified factorizations of different lengths."""

    element: Agglomeration
    short: Factorization
    long: Factorization
    construction: str

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.long.length, self.short.length)


@dataclass(frozen=True)
class HalfFactorialReport:
    half_factorial: bool
    witness: Optional[Witness] = None

    @property
    def lengths(self) -> Tuple[int, ...]:
        if self.witness is None:
            return ()
        return (self.witness.short.length, self.witness.long.length)


@dataclass(frozen=True)
class ElasticityReport:
    lower: Fraction
    upper: Fraction
    witness: Optional[Agglomeration] = None
    witness_lengths: Tuple[int, ...] = ()
    certificate: str = ""
    searched: int = 0

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class RefinedElasticityReport:
    k: int
    lower: int
    upper: int
    tree_packing: Optional[int] = None
    witness: Optional[Witness] = None
    element: Optional[Agglomeration] = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None


@dataclass(frozen=True)
class SemiLengthBound:
    value: Fraction
    r: Optional[Fraction]
    limit: str = ""


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

class Factorizer:
    """
    Factorization engine for a reduced atomic monoid given by its atoms.

    Elements and atoms are integer vectors; `subtract(x, y)` returns x - y when y
    divides x and None otherwise. Every factorization of x contains an atom that
    is positive on the first positive coordinate of x, so only those atoms are
    tried. Length sets and factorization sets are memoized on the remainder and
    filled bottom-up from an explicit stack.
    """

    def __init__(self, vectors: Sequence[Tuple[int, ...]], subtract: Callable, elements: Sequence = None,
                 memo_limit: Optional[int] = None):
        self.vectors = [tuple(v) for v in vectors]
        self.elements = list(elements) if elements is not None else self.vectors
        self.subtract = subtract
        self.memo_limit = config.FACTORIZER_MEMO_LIMIT if memo_limit is None else memo_limit
        self._covering: Dict[int, List[int]] = {}
        self._lengths: Dict[Tuple[int, ...], FrozenSet[int]] = {}
        self._factorizations: Dict[Tuple, Tuple[FrozenSet[Tuple[int, ...]], bool]] = {}

    def covering(self, i: int) -> List[int]:
        if i not in self._covering:
            self._covering[i] = [j for j, v in enumerate(self.vectors) if v[i] > 0]
        return self._covering[i]

    def branches(self, x: Tuple[int, ...]):
        """Pairs (atom index, remainder) over the atoms covering x's first positive coordinate."""
        for i, value in enumerate(x):
            if value:
                break
        else:
            return
        for j in self.covering(i):
            rest = self.subtract(x, self.vectors[j])
            if rest is not None:
                yield j, rest

    def _fill(self, x: Tuple[int, ...], memo: Dict, key: Callable, leaf, combine: Callable):
        """Memoize x and every remainder below it, children before parents."""
        children: Dict[Tuple[int, ...], list] = {}
        stack = [x]
        while stack:
            y = stack[-1]
            if key(y) in memo:
                stack.pop()
                continue
            if not any(y):
                memo[key(y)] = leaf
                stack.pop()
                continue
            if y not in children:
                children[y] = list(self.branches(y))
            pending = [rest for _, rest in children[y] if key(rest) not in memo]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            memo[key(y)] = combine(children.pop(y))

    def _trim(self):
        if len(self._lengths) + len(self._factorizations) > self.memo_limit:
            log.debug("clearing factorizer memo of %d entries", len(self._lengths) + len(self._factorizations))
            self.clear()

    def lengths(self, x: Tuple[int, ...]) -> FrozenSet[int]:
        x = tuple(x)
        if x not in self._lengths:
            self._trim()
            memo = self._lengths

            def combine(branches):
                return frozenset(k + 1 for _, rest in branches for k in memo[rest])

            self._fill(x, memo, lambda y: y, frozenset((0,)), combine)
        return self._lengths[x]

    def factorizations(self, x: Tuple[int, ...], cap: int) -> Tuple[List[Tuple[int, ...]], bool]:
        """
        All factorizations of x as sorted tuples of atom indices.

        Returns:
            tuple: (sorted list of at most `cap` factorizations, complete flag)
        """
        x = tuple(x)
        if (x, cap) not in self._factorizations:
            self._trim()
            memo = self._factorizations

            def combine(branches):
                found = set()
                complete = True
                for j, rest in branches:
                    sub, sub_complete = memo[(rest, cap)]
                    complete = complete and sub_complete
                    for z in sub:
                        found.add(tuple(sorted(z + (j,))))
                    if len(found) > cap:
                        complete = False
                        found = set(sorted(found)[:cap])
                return frozenset(found), complete

            self._fill(x, memo, lambda y: (y, cap), (frozenset(((),)), True), combine)
        found, complete = self._factorizations[(x, cap)]
        return sorted(found), complete

    def clear(self):
        self._lengths.clear()
        self._factorizations.clear()


@lru_cache(maxsize=32)
def factorizer_for(g: Multigraph) -> Factorizer:
    """Shared engine for A(g); atoms are enumerated once per graph."""
    atom_list = atoms(g)
    log.debug("factorizer for %r over %d atoms", g, len(atom_list))
    return Factorizer([a.values for a in atom_list], partial(subtract_values, g), atom_list)


def _to_factorization(engine: Factorizer, element, indices) -> Factorization:
    return Factorization(element, tuple(engine.elements[j] for j in indices))


def make_factorization(g: Multigraph, pieces: Sequence[Agglomeration]) -> Factorization:
    """
    Check that `pieces` are atoms of A(g) and wrap them as a factorization of their sum.

    Raises:
        FactorizationError: a piece is not an atom of A(g)
    """
    engine = factorizer_for(g)
    index = {a: j for j, a in enumerate(engine.elements)}
    total = zero(g)
    for p in pieces:
        if p.graph != g or not is_atom(p):
            raise FactorizationError("%r is not an atom of A(G)" % p)
        total = add(total, p)
    return Factorization(total, tuple(sorted(pieces, key=index.__getitem__)))


# ---------------------------------------------------------------------------
# Factorizations and lengths
# ---------------------------------------------------------------------------

def factorizations(g: Multigraph, a: Agglomeration, cap: Optional[int] = None) -> FactorizationSet:
    """
    All factorizations of a into atoms of A(g).

    Args:
        g: ambient graph
        a: element to factor
        cap: max factorizations kept (default config.DEFAULT_CAP)

    Returns:
        FactorizationSet: canonical order, complete=False when truncated at cap
    """
    cap = config.DEFAULT_CAP if cap is None else cap
    engine = factorizer_for(g)
    found, complete = engine.factorizations(a.values, cap)
    if not complete:
        log.warning("factorization enumeration of %r stopped at cap %d", a, cap)
    return FactorizationSet(a, tuple(_to_factorization(engine, a, z) for z in found), complete, cap)


def length_set(g: Multigraph, a: Agglomeration) -> LengthSet:
    return LengthSet(tuple(factorizer_for(g).lengths(a.values)))


def delta_set(lengths) -> FrozenSet[int]:
    """Successive gaps of a set of lengths."""
    ls = sorted(set(lengths))
    return frozenset(b - a for a, b in zip(ls, ls[1:]))


def elasticity_of_element(lengths) -> Fraction:
    """max L / min L; 1 for {0}."""
    ls = sorted(set(lengths))
    if not ls:
        raise FactorizationError("empty set of lengths")
    if ls[0] == 0:
        return Fraction(1)
    return Fraction(ls[-1], ls[0])


def set_of_distances(g: Multigraph, bound: int) -> FrozenSet[int]:
    """Union of the delta sets of all elements in the weight box."""
    found = set()
    for a in agglomerations_in_box(g, bound):
        found.update(delta_set(length_set(g, a)))
    return frozenset(found)


def distance(z: Factorization, w: Factorization) -> int:
    """
    Remove the common atoms; the larger residual length.

    Raises:
        FactorizationError: z and w factor different elements
    """
    if z.element != w.element:
        raise FactorizationError("distance needs two factorizations of the same element")
    left = Counter(z.atoms)
    right = Counter(w.atoms)
    common = left & right
    return max(sum((left - common).values()), sum((right - common).values()))


def catenary_of(fset: FactorizationSet) -> CatenaryResult:
    """Smallest N for which factorizations joined at distance <= N form a connected graph."""
    zs = list(fset.factorizations)
    if not fset.complete:
        return CatenaryResult(None, False, len(zs))
    if len(zs) <= 1:
        return CatenaryResult(0, True, len(zs))
    pairs = sorted((distance(zs[i], zs[j]), i, j) for i, j in itertools.combinations(range(len(zs)), 2))
    uf = UnionFind(range(len(zs)))
    groups = len(zs)
    for d, i, j in pairs:
        if uf[i] != uf[j]:
            uf.union(i, j)
            groups -= 1
            if groups == 1:
                return CatenaryResult(d, True, len(zs))
    raise VerificationError("factorization graph never became connected")


def catenary_degree(g: Multigraph, a: Agglomeration, cap: Optional[int] = None) -> CatenaryResult:
    return catenary_of(factorizations(g, a, cap))


def omega_bounded(g: Multigraph, b: Agglomeration, cap: Optional[int] = None) -> OmegaResult:
    """
    Lower bound for omega(A(g), b) over the box of weights <= cap.

    For every a in the box divisible by b and every factorization of a, find the
    fewest atoms of that factorization whose sum b already divides.

    Raises:
        FactorizationError: b is neither zero nor an atom
    """
    cap = config.OMEGA_DEFAULT_CAP if cap is None else cap
    if b.is_zero:
        return OmegaResult(0, True, cap)
    if not is_atom(b):
        raise FactorizationError("omega needs an atom, got %r" % b)
    engine = factorizer_for(g)
    best, witness, complete = 0, None, True
    for a in agglomerations_in_box(g, cap):
        if subtract_values(g, a.values, b.values) is None:
            continue
        found, done = engine.factorizations(a.values, config.DEFAULT_CAP)
        complete = complete and done
        for z in found:
            need = _fewest_divisible(g, engine, z, b.values)
            if need > best:
                best, witness = need, a
    return OmegaResult(best, complete, cap, witness)


def _fewest_divisible(g, engine, z, target) -> int:
    for size in range(1, len(z) + 1):
        for chosen in set(itertools.combinations(z, size)):
            total = tuple(map(sum, zip(*(engine.vectors[j] for j in chosen))))
            if subtract_values(g, total, target) is not None:
                return size
    raise VerificationError("atom does not divide the element it was found in", z)


# ---------------------------------------------------------------------------
# Factoriality
# ---------------------------------------------------------------------------

def is_factorial(g: Multigraph) -> bool:
    """Factorial iff every connected component has at most one edge."""
    return all(c.size <= 1 for c in connected_components(g))


def _certify(g: Multigraph, short: Sequence[Agglomeration], long: Sequence[Agglomeration], construction: str) -> Witness:
    left = make_factorization(g, short)
    right = make_factorization(g, long)
    if left.element != right.element:
        raise VerificationError("%s construction does not balance" % construction, left.element)
    return Witness(left.element, left, right, construction)


def parallel_edge_witness(g: Multigraph, bundle: Sequence[str]) -> Witness:
    """
    j parallel edges between u and w: the j edge atoms against
    1_{B_j} + (j-1)(1_u + 1_w), lengths j and 2j - 1.
    """
    j = len(bundle)
    u, w = g.endpoints(bundle[0])
    short = [edge_indicator(g, e) for e in bundle]
    long = [indicator(g, Subgraph(g, (u, w), tuple(bundle)))]
    long += [vertex_indicator(g, u), vertex_indicator(g, w)] * (j - 1)
    return _certify(g, short, long, "parallel")


def cycle_witness(g: Multigraph, cycle_vertices: Sequence[str], cycle_edges: Sequence[str]) -> Witness:
    """
    A cycle with n vertices: its n spanning paths against (n-1) copies of the
    cycle plus every vertex once, lengths n and 2n - 1.
    """
    n = len(cycle_vertices)
    paths = [indicator(g, Subgraph(g, tuple(cycle_vertices), tuple(e for e in cycle_edges if e != dropped)))
             for dropped in cycle_edges]
    whole = indicator(g, Subgraph(g, tuple(cycle_vertices), tuple(cycle_edges)))
    long = [whole] * (n - 1) + [vertex_indicator(g, v) for v in cycle_vertices]
    return _certify(g, paths, long, "cycle")


def star_witness(g: Multigraph, component: Subgraph) -> Witness:
    """
    A simple k-regular component on n vertices: the n closed stars against two
    copies of the component plus (k-1) copies of every vertex.
    """
    stars = []
    for v in component.vertices:
        incident = g.incident_edges(v)
        nbrs = {x for e in incident for x in g.incidence[e]}
        stars.append(indicator(g, Subgraph(g, tuple(nbrs), incident)))
    k = degrees(g)[g.vertex_index[component.vertices[0]]]
    whole = indicator(g, component)
    long = [whole, whole] + [vertex_indicator(g, v) for v in component.vertices] * (k - 1)
    return _certify(g, stars, long, "star")


def tree_packing_witness(g: Multigraph, component: Subgraph, k: int) -> Optional[Witness]:
    """
    k edge-disjoint spanning trees of a component against the indicator of their
    union plus (k-1) copies of every vertex, lengths k and (k-1)|V| + 1.
    """
    c = subgraph_to_graph(component)
    trees = disjoint_spanning_trees(c, k)
    if trees is None:
        return None
    short = [indicator(g, Subgraph(g, t.vertices, t.edges)) for t in trees]
    union = indicator(g, Subgraph(g, component.vertices, tuple(e for t in trees for e in t.edges)))
    long = [union] + [vertex_indicator(g, v) for v in component.vertices] * (k - 1)
    return _certify(g, short, long, "tree-packing")


def _parallel_bundles(g: Multigraph) -> List[Tuple[str, ...]]:
    bundles: Dict[frozenset, List[str]] = {}
    for e, pair in zip(g.edges, g.ends):
        bundles.setdefault(frozenset(pair), []).append(e)
    return [tuple(es) for es in bundles.values() if len(es) >= 2]


def _simple_cycles(g: Multigraph) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
    """Cycles of length >= 3 from a cycle basis of the underlying simple graph."""
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    first_edge = {}
    for e, (u, v) in zip(g.edges, g.ends):
        simple.add_edge(u, v)
        first_edge.setdefault(frozenset((u, v)), e)
    cycles = []
    for basis_cycle in nx.cycle_basis(simple):
        vs = sorted(basis_cycle, key=g.vertex_index.__getitem__)
        # walk the basis cycle in its own order to recover the edges
        es = tuple(first_edge[frozenset((basis_cycle[i], basis_cycle[(i + 1) % len(basis_cycle)]))]
                   for i in range(len(basis_cycle)))
        cycles.append((tuple(vs), es))
    cycles.sort(key=lambda c: (len(c[0]), [g.vertex_index[v] for v in c[0]]))
    return cycles


def _is_regular_simple(g: Multigraph, component: Subgraph) -> bool:
    if component.order < 3:
        return False
    degs = {degrees(g)[g.vertex_index[v]] for v in component.vertices}
    return len(degs) == 1 and is_simple(subgraph_to_graph(component))


def elasticity_witnesses(g: Multigraph) -> List[Witness]:
    """
    Closed-form elements with two certified factorizations of different lengths:
    parallel-edge bundles, basis cycles and stars of regular simple components.
    """
    found = [parallel_edge_witness(g, b) for b in _parallel_bundles(g)]
    found += [cycle_witness(g, vs, es) for vs, es in _simple_cycles(g)]
    found += [star_witness(g, c) for c in connected_components(g) if _is_regular_simple(g, c)]
    return found


def is_half_factorial(g: Multigraph) -> HalfFactorialReport:
    """
    Half-factorial iff acyclic. Otherwise the report carries a witness built on a
    pair of parallel edges or on the shortest basis cycle.

    Raises:
        VerificationError: the witness lengths are missing from its set of lengths
    """
    if is_acyclic(g):
        return HalfFactorialReport(True)
    bundles = _parallel_bundles(g)
    if bundles:
        witness = parallel_edge_witness(g, bundles[0][:2])
    else:
        vs, es = _simple_cycles(g)[0]
        witness = cycle_witness(g, vs, es)
    if sum(witness.element.values) > config.WITNESS_CROSSCHECK_MAX_WEIGHT:
        log.debug("skipping the length set of a %s witness of weight %d",
                  witness.construction, sum(witness.element.values))
        return HalfFactorialReport(False, witness)
    lengths = length_set(g, witness.element)
    if witness.short.length not in lengths or witness.long.length not in lengths:
        raise VerificationError("%s witness lengths %d, %d not in L = %s"
                                % (witness.construction, witness.short.length, witness.long.length, list(lengths)),
                                witness.element)
    return HalfFactorialReport(False, witness)


# ---------------------------------------------------------------------------
# Elasticity
# ---------------------------------------------------------------------------

def semi_length(g: Multigraph, a: Agglomeration, r) -> Fraction:
    """sigma_r(a) = r * sum a(v) - sum a(e)."""
    return Fraction(r) * sum(a.vertex_values) - sum(a.edge_values)


def _atom_lines(c: Multigraph) -> List[Tuple[int, int]]:
    """
    (|V'|, |E'|) for the atoms that can reach the envelopes of r|V'| - |E'|:
    for each connected vertex subset, the fewest and the most edges.
    """
    n = c.order
    ends = c.end_indices
    lines = set()
    for mask in range(1, 1 << n):
        vs = [i for i in range(n) if mask >> i & 1]
        inner = [(u, v) for u, v in ends if mask >> u & 1 and mask >> v & 1]
        uf = UnionFind(vs)
        for u, v in inner:
            uf.union(u, v)
        if len({uf[x] for x in vs}) == 1:
            lines.add((len(vs), len(vs) - 1))
            lines.add((len(vs), len(inner)))
    return sorted(lines)


def _component_semi_length_bound(c: Multigraph) -> SemiLengthBound:
    half = Fraction(max_degree(c), 2)
    lines = _atom_lines(c)

    def upper(r):
        return max(p * r - q for p, q in lines)

    def lower(r):
        return min(p * r - q for p, q in lines)

    best = SemiLengthBound(Fraction(max(p for p, _ in lines), min(p for p, _ in lines)), None, "infinity")
    if lower(half) > 0:
        at_limit = upper(half) / lower(half)
        if at_limit < best.value:
            best = SemiLengthBound(at_limit, half, "half-degree")
    candidates = {half + 1}
    for (p1, q1), (p2, q2) in itertools.combinations(lines, 2):
        if p1 != p2:
            r = Fraction(q1 - q2, p1 - p2)
            if r > half:
                candidates.add(r)
    for r in sorted(candidates):
        value = upper(r) / lower(r)
        if value < best.value:
            best = SemiLengthBound(value, r)
    return best


def semi_length_bound(g: Multigraph) -> SemiLengthBound:
    """
    min over r > D/2 of M*(r)/m*(r) per component, maximized over components.

    Raises:
        GraphError: null graph
    """
    if g.is_null:
        raise GraphError("semi_length_bound needs a non-null graph")
    bounds = [_component_semi_length_bound(subgraph_to_graph(s)) for s in connected_components(g)]
    return max(bounds, key=lambda b: b.value)


def _component_upper_bound(c: Multigraph) -> Tuple[Fraction, str]:
    if is_acyclic(c):
        return Fraction(1), "acyclic"
    m, d = c.order, max_degree(c)
    options = [(m - Fraction(m - 1, d), "general-bound")]
    if is_simple(c):
        options.append((m - 2 + Fraction(2, m), "simple-bound"))
    options.append((_component_semi_length_bound(c).value, "semi-length"))
    return min(options, key=lambda o: o[0])


def _search_pool(g: Multigraph) -> List[Agglomeration]:
    all_atoms = factorizer_for(g).elements
    spanning = []
    for s in connected_components(g):
        if s.order > 1 and s.size >= s.order:
            spanning += [a for a in all_atoms if _spans(a, s) and _is_tree(a)]
    chosen = set(spanning)
    return spanning + [a for a in all_atoms if a not in chosen]


def _spans(a: Agglomeration, s: Subgraph) -> bool:
    g = a.graph
    return all(a.values[g.vertex_index[v]] for v in s.vertices)


def _is_tree(a: Agglomeration) -> bool:
    return sum(a.edge_values) == sum(a.vertex_values) - 1


def search_elements(g: Multigraph, sizes: Sequence[int], budget: int):
    """
    Distinct sums of atoms with the given numbers of summands, spanning-tree atoms
    first, at most `budget` elements.
    """
    pool = _search_pool(g)
    seen = set()
    for r in sizes:
        for combo in itertools.combinations_with_replacement(range(len(pool)), r):
            values = tuple(map(sum, zip(*(pool[j].values for j in combo))))
            if values in seen:
                continue
            seen.add(values)
            yield Agglomeration(g, values)
            if len(seen) >= budget:
                log.debug("element search stopped at budget %d", budget)
                return


def elasticity(g: Multigraph, search_depth: Optional[int] = None) -> ElasticityReport:
    """
    Certified bounds on rho(A(g)).

    The upper bound is the best of the closed-form degree and order bounds and the
    semi-length optimum, taken per component. The lower bound is the best ratio
    among the closed-form witnesses and the searched sums of atoms.

    Raises:
        GraphError: null graph
    """
    if g.is_null:
        raise GraphError("elasticity needs a non-null graph")
    depth = config.DEFAULT_SEARCH_DEPTH if search_depth is None else search_depth

    upper, certificate = Fraction(1), "acyclic"
    for s in connected_components(g):
        value, kind = _component_upper_bound(subgraph_to_graph(s))
        if value > upper:
            upper, certificate = value, kind

    lower, witness, lengths = Fraction(1), None, ()
    for w in elasticity_witnesses(g):
        if w.ratio > lower:
            lower, witness, lengths = w.ratio, w.element, (w.short.length, w.long.length)

    searched = 0
    if lower < upper:
        engine = factorizer_for(g)
        for a in search_elements(g, range(2, depth + 1), config.ELASTICITY_SEARCH_BUDGET):
            searched += 1
            ls = engine.lengths(a.values)
            rho = elasticity_of_element(ls)
            if rho > lower:
                lower, witness, lengths = rho, a, (min(ls), max(ls))
                if lower == upper:
                    break
    if lower > upper:
        raise VerificationError("elasticity lower bound %s exceeds upper bound %s" % (lower, upper), witness)
    return ElasticityReport(lower, upper, witness, lengths, certificate, searched)


def union_of_lengths(g: Multigraph, k: int, budget: Optional[int] = None) -> Tuple[int, Optional[Agglomeration]]:
    """
    Largest length found among searched elements that have a factorization of length k.

    Returns:
        tuple: (max length, element attaining it)
    """
    budget = config.ELASTICITY_SEARCH_BUDGET if budget is None else budget
    engine = factorizer_for(g)
    best, element = k, None
    for a in search_elements(g, (k,), budget):
        top = max(engine.lengths(a.values))
        if top > best:
            best, element = top, a
    return best, element


def _rho_k_by_components(g: Multigraph, k: int, search_depth: Optional[int]) -> RefinedElasticityReport:
    """
    A(g) is the product of the A(C) over the components C, so rho_k(A(g)) is the
    max over k_1 + ... + k_s = k of the sum of rho_{k_i}(A(C_i)), with
    rho_0 = 0 and rho_1 = 1. Lower and upper bounds combine the same way.
    """
    best = {0: (0, 0)}
    for s in connected_components(g):
        c = subgraph_to_graph(s)
        table = {0: (0, 0), 1: (1, 1)}
        for part in range(2, k + 1):
            report = rho_k(c, part, search_depth)
            table[part] = (report.lower, report.upper)
        merged: Dict[int, Tuple[int, int]] = {}
        for used, (low, high) in best.items():
            for part in range(k - used + 1):
                part_low, part_high = table[part]
                old_low, old_high = merged.get(used + part, (0, 0))
                merged[used + part] = (max(old_low, low + part_low), max(old_high, high + part_high))
        best = merged
    lower, upper = best[k]
    log.debug("rho_%d over %d components: [%d, %d]", k, len(connected_components(g)), lower, upper)
    return RefinedElasticityReport(k, lower, upper)


def rho_k(g: Multigraph, k: int, search_depth: Optional[int] = None) -> RefinedElasticityReport:
    """
    rho_k(A(g)): exact (k-1)|V| + 1 when g is connected with k edge-disjoint
    spanning trees, otherwise bounds with upper (k-1)|V|. Disconnected graphs
    reduce to their components.

    Raises:
        FactorizationError: k < 2
        GraphError: null graph
    """
    if k < 2:
        raise FactorizationError("rho_k needs k >= 2, got %d" % k)
    if g.is_null:
        raise GraphError("rho_k needs a non-null graph")
    if is_factorial(g):
        return RefinedElasticityReport(k, k, k)
    if not is_connected(g):
        return _rho_k_by_components(g, k, search_depth)
    depth = config.DEFAULT_SEARCH_DEPTH if search_depth is None else search_depth

    n = g.order
    upper = (k - 1) * n
    tau = tree_packing_number(g)
    if tau >= k:
        witness = None
        if n <= config.PACKING_CROSSCHECK_MAX_VERTICES and g.size <= config.PACKING_CROSSCHECK_MAX_EDGES:
            witness = tree_packing_witness(g, full_subgraph(g), k)
        return RefinedElasticityReport(k, upper + 1, upper + 1, tau, witness)

    lower, witness, element = k, None, None
    if k <= depth:
        found, a = union_of_lengths(g, k)
        if found > lower:
            lower, witness, element = found, None, a
    if lower > upper:
        raise VerificationError("rho_%d lower bound %d exceeds %d" % (k, lower, upper), element)
    return RefinedElasticityReport(k, lower, upper, tau, witness, element)
