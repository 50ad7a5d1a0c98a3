#!/usr/bin/env python
"""
Agglom Diophantine Monoids
ker(B) intersected with the nonnegative orthant: membership, Hilbert bases,
factorization and the transfer homomorphism that merges duplicate columns.
"""

import itertools
import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

try:
    from . import config
    from .errors import DiophantineError
    from .factorization import Factorization, FactorizationSet, Factorizer, LengthSet
except ImportError:
    import config
    from errors import DiophantineError
    from factorization import Factorization, FactorizationSet, Factorizer, LengthSet

log = logging.getLogger(__name__)

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """A rectangular integer matrix with optional row and column labels."""

    rows: Tuple[Tuple[int, ...], ...]
    n_cols: int
    row_labels: Tuple[str, ...] = ()
    col_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        for i, row in enumerate(self.rows):
            if len(row) != self.n_cols:
                raise DiophantineError("row %d has %d entries, expected %d" % (i, len(row), self.n_cols))
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
                raise DiophantineError("row %d has a non-integer entry" % i)
        for kind, labels, count in (("row", self.row_labels, len(self.rows)), ("column", self.col_labels, self.n_cols)):
            if labels and len(labels) != count:
                raise DiophantineError("%d %s labels for %d %ss" % (len(labels), kind, count, kind))
            if len(set(labels)) != len(labels):
                raise DiophantineError("duplicate %s label" % kind)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], row_labels=(), col_labels=()):
        rows = [tuple(r) for r in rows]
        n_cols = len(rows[0]) if rows else len(col_labels)
        return cls(tuple(rows), n_cols, tuple(row_labels), tuple(col_labels))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def matrix_vector(self, x: Sequence[int]) -> Vector:
        if len(x) != self.n_cols:
            raise DiophantineError("vector of length %d for a matrix with %d columns" % (len(x), self.n_cols))
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.rows)

    def erase(self, rows: Sequence[int] = (), cols: Sequence[int] = ()) -> "IntMatrix":
        """Drop the given row and column indices."""
        drop_r, drop_c = set(rows), set(cols)
        keep_c = [j for j in range(self.n_cols) if j not in drop_c]
        new_rows = [tuple(row[j] for j in keep_c) for i, row in enumerate(self.rows) if i not in drop_r]
        row_labels = tuple(l for i, l in enumerate(self.row_labels) if i not in drop_r)
        col_labels = tuple(self.col_labels[j] for j in keep_c) if self.col_labels else ()
        return IntMatrix(tuple(new_rows), len(keep_c), row_labels, col_labels)


def matrix_from_json(doc) -> IntMatrix:
    """
    Build a matrix from {"rows": [[...], ...], "row_labels": [...], "col_labels": [...]}.

    Raises:
        DiophantineError: malformed document
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise DiophantineError("malformed matrix JSON: %s" % e) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("rows"), list):
        raise DiophantineError("matrix JSON needs a 'rows' list")
    rows = doc["rows"]
    if not all(isinstance(r, list) for r in rows):
        raise DiophantineError("every matrix row must be a list")
    col_labels = doc.get("col_labels", [])
    n_cols = len(rows[0]) if rows else doc.get("n_cols", len(col_labels))
    return IntMatrix(tuple(tuple(r) for r in rows), n_cols, tuple(doc.get("row_labels", [])), tuple(col_labels))


def matrix_to_json(m: IntMatrix) -> dict:
    doc = {"rows": [list(r) for r in m.rows]}
    if not m.rows:
        doc["n_cols"] = m.n_cols
    if m.row_labels:
        doc["row_labels"] = list(m.row_labels)
    if m.col_labels:
        doc["col_labels"] = list(m.col_labels)
    return doc


@dataclass(frozen=True)
class DiophantineMonoid:
    matrix: IntMatrix

    @property
    def dimension(self) -> int:
        return self.matrix.n_cols


@dataclass(frozen=True)
class HilbertBasis:
    """
    Minimal generating set found by the completion search.

    `covers_cap` means every atom with coordinates <= cap is present; `complete`
    additionally means nothing was dropped at the cap.
    """

    vectors: Tuple[Vector, ...]
    complete: bool
    cap: int
    covers_cap: bool = True

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)


def membership(m: DiophantineMonoid, x: Sequence[int]) -> bool:
    """x >= 0 and Bx = 0; raises DiophantineError on a dimension mismatch."""
    image = m.matrix.matrix_vector(x)
    return all(v >= 0 for v in x) and not any(image)


def _support(v: Vector) -> int:
    mask = 0
    for i, x in enumerate(v):
        if x:
            mask |= 1 << i
    return mask


def _dominates(found: List[Tuple[int, Vector]], q: Vector) -> bool:
    mask = _support(q)
    for sol_mask, sol in found:
        if sol_mask & ~mask:
            continue
        if all(s <= t for s, t in zip(sol, q)):
            return True
    return False


@lru_cache(maxsize=64)
def hilbert_basis(m: DiophantineMonoid, cap: Optional[int] = None) -> HilbertBasis:
    """
    Contejean-Devie completion.

    Starting from the unit vectors, a non-solution p is extended by e_j only
    when <Bp, Be_j> < 0, and vectors dominating a known solution are pruned.
    Coordinates above `cap` are dropped and flag the result incomplete.

    Args:
        m: the monoid
        cap: coordinate bound (default config.HILBERT_COORDINATE_CAP)

    Returns:
        HilbertBasis: vectors in descending lexicographic order
    """
    cap = config.HILBERT_COORDINATE_CAP if cap is None else cap
    n = m.dimension
    columns = [m.matrix.column(j) for j in range(n)]
    sparse = [[(i, c) for i, c in enumerate(col) if c] for col in columns]
    solutions: List[Tuple[int, Vector]] = []
    dropped = False
    truncated = False

    frontier: Dict[Vector, Vector] = {}
    for j in range(n):
        unit = tuple(1 if i == j else 0 for i in range(n))
        frontier[unit] = columns[j]

    while frontier:
        solutions.extend((_support(p), p) for p, bp in frontier.items() if not any(bp))
        following: Dict[Vector, Vector] = {}
        for p, bp in frontier.items():
            if not any(bp):
                continue
            for j in range(n):
                if sum(bp[i] * c for i, c in sparse[j]) >= 0:
                    continue
                q = p[:j] + (p[j] + 1,) + p[j + 1:]
                if q in following:
                    continue
                if q[j] > cap:
                    dropped = True
                    continue
                if _dominates(solutions, q):
                    continue
                bq = list(bp)
                for i, c in sparse[j]:
                    bq[i] += c
                following[q] = tuple(bq)
        if len(following) > config.HILBERT_FRONTIER_LIMIT:
            log.warning("Hilbert basis frontier of %d vectors exceeds the limit", len(following))
            truncated = True
            break
        frontier = following

    basis = tuple(sorted({p for _, p in solutions}, reverse=True))
    log.debug("Hilbert basis of %d vectors (cap %d, dropped=%s)", len(basis), cap, dropped)
    return HilbertBasis(basis, not dropped and not truncated, cap, not truncated)


def lattice_points(m: DiophantineMonoid, bound: int) -> Iterator[Vector]:
    """Members of the monoid with every coordinate <= bound."""
    for x in itertools.product(range(bound + 1), repeat=m.dimension):
        if not any(m.matrix.matrix_vector(x)):
            yield x


def _subtract_nonnegative(x: Vector, y: Vector) -> Optional[Vector]:
    diff = tuple(a - b for a, b in zip(x, y))
    if min(diff, default=0) < 0:
        return None
    return diff


@lru_cache(maxsize=64)
def monoid_factorizer(m: DiophantineMonoid, cap: int) -> Tuple[Factorizer, HilbertBasis]:
    basis = hilbert_basis(m, cap)
    return Factorizer(basis.vectors, _subtract_nonnegative), basis


def _require_member(m: DiophantineMonoid, x: Sequence[int]) -> Vector:
    x = tuple(x)
    if not membership(m, x):
        raise DiophantineError("%s is not in the monoid" % (x,))
    return x


def length_set_dm(m: DiophantineMonoid, x: Sequence[int], cap: Optional[int] = None) -> LengthSet:
    """
    Lengths of factorizations of x into Hilbert basis elements.

    Every atom dividing x is bounded by x, so the basis is computed up to
    max(x) unless a larger cap is given.
    """
    x = _require_member(m, x)
    engine, basis = monoid_factorizer(m, max(max(x, default=0), cap or 0, 1))
    if not basis.covers_cap:
        log.warning("length set of %s computed over a truncated basis", x)
    return LengthSet(tuple(engine.lengths(x)), basis.covers_cap)


def factorizations_dm(m: DiophantineMonoid, x: Sequence[int], cap: Optional[int] = None,
                      basis_cap: Optional[int] = None) -> FactorizationSet:
    x = _require_member(m, x)
    limit = config.DEFAULT_CAP if cap is None else cap
    engine, basis = monoid_factorizer(m, max(max(x, default=0), basis_cap or 0, 1))
    found, complete = engine.factorizations(x, limit)
    zs = tuple(Factorization(x, tuple(engine.vectors[j] for j in z)) for z in found)
    return FactorizationSet(x, zs, complete and basis.covers_cap, limit)


# ---------------------------------------------------------------------------
# Duplicate-column transfer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransferMap:
    """
    theta: H -> H' summing the coordinates of each group of identical columns.

    `groups` partitions the source columns; group order follows the first column
    of each group and is the target's column order.
    """

    source: DiophantineMonoid
    target: DiophantineMonoid
    groups: Tuple[Tuple[int, ...], ...]

    @property
    def is_identity(self) -> bool:
        return all(len(grp) == 1 for grp in self.groups)

    def apply(self, x: Sequence[int]) -> Vector:
        if len(x) != self.source.dimension:
            raise DiophantineError("vector of length %d for a monoid of dimension %d" % (len(x), self.source.dimension))
        return tuple(sum(x[i] for i in grp) for grp in self.groups)

    def split(self, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> Tuple[Vector, Vector]:
        """
        Given theta(x) = y + z, find v + w = x with theta(v) = y and theta(w) = z.

        Each group total y_g is taken from the group's coordinates greedily in
        column order.

        Raises:
            DiophantineError: theta(x) != y + z or a negative part
        """
        if self.apply(x) != tuple(a + b for a, b in zip(y, z)) or min(tuple(y) + tuple(z), default=0) < 0:
            raise DiophantineError("%s does not split as %s + %s under theta" % (tuple(x), tuple(y), tuple(z)))
        v = [0] * len(x)
        for grp, want in zip(self.groups, y):
            for i in grp:
                take = min(x[i], want)
                v[i] = take
                want -= take
        w = tuple(a - b for a, b in zip(x, v))
        return tuple(v), w


def dedup_transfer(m: DiophantineMonoid, blocks: Optional[Sequence] = None) -> TransferMap:
    """
    Merge literally equal columns; the identity map when there are none.

    Args:
        m: source monoid
        blocks: optional block key per column; equal columns merge only inside
                the same block, and a column whose key is None never merges

    Raises:
        DiophantineError: blocks of the wrong length
    """
    if blocks is not None and len(blocks) != m.dimension:
        raise DiophantineError("%d block keys for %d columns" % (len(blocks), m.dimension))
    first: Dict[tuple, int] = {}
    groups: List[List[int]] = []
    for j in range(m.dimension):
        block = None if blocks is None else blocks[j]
        if blocks is not None and block is None:
            key = (0, j)
        else:
            key = (1, block, m.matrix.column(j))
        if key in first:
            groups[first[key]].append(j)
        else:
            first[key] = len(groups)
            groups.append([j])
    keep = [grp[0] for grp in groups]
    labels = m.matrix.col_labels
    col_labels = tuple("+".join(labels[i] for i in grp) for grp in groups) if labels else ()
    rows = tuple(tuple(row[j] for j in keep) for row in m.matrix.rows)
    target = DiophantineMonoid(IntMatrix(rows, len(keep), m.matrix.row_labels, col_labels))
    if len(keep) < m.dimension:
        log.debug("merged %d duplicate columns", m.dimension - len(keep))
    return TransferMap(m, target, tuple(tuple(grp) for grp in groups))


def lift_factorization(t: TransferMap, x: Sequence[int], f: Sequence[Sequence[int]]) -> Factorization:
    """
    Lift a factorization of theta(x) in the target to one of x of the same length.

    Raises:
        DiophantineError: x not in the source, or f does not factor theta(x)
    """
    x = _require_member(t.source, x)
    pieces = [tuple(y) for y in f]
    total = tuple(map(sum, zip(*pieces))) if pieces else (0,) * t.target.dimension
    if total != t.apply(x):
        raise DiophantineError("factorization does not sum to theta(x) = %s" % (t.apply(x),))
    for y in pieces:
        if not any(y) or not membership(t.target, y):
            raise DiophantineError("%s is not a nonzero element of the target monoid" % (y,))
    lifted = []
    rest = x
    for i, y in enumerate(pieces[:-1]):
        remaining = tuple(map(sum, zip(*pieces[i + 1:])))
        v, rest = t.split(rest, y, remaining)
        lifted.append(v)
    if pieces:
        lifted.append(rest)
    return Factorization(x, tuple(sorted(lifted, reverse=True)))
