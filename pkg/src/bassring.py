#!/usr/bin/env python
"""
Agglom Bass Rings
Combinatorial spectra of Bass rings: validation, the prime-ideal-intersection
graph, the matrices B and C, the isomorphism of the transfer image with A(G_R),
the KRSA criterion, realization and the standard families.
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

try:
    from . import config
    from .agglomeration import Agglomeration, agglomerations_in_box, atoms, from_mapping
    from .diophantine import DiophantineMonoid, IntMatrix, dedup_transfer, hilbert_basis, membership, monoid_factorizer
    from .errors import RingSpecError, VerificationError
    from .factorization import ElasticityReport, elasticity, is_factorial, length_set
    from .multigraph import Multigraph, connected_components
except ImportError:
    import config
    from agglomeration import Agglomeration, agglomerations_in_box, atoms, from_mapping
    from diophantine import DiophantineMonoid, IntMatrix, dedup_transfer, hilbert_basis, membership, monoid_factorizer
    from errors import RingSpecError, VerificationError
    from factorization import ElasticityReport, elasticity, is_factorial, length_set
    from multigraph import Multigraph, connected_components

log = logging.getLogger(__name__)

# Rank patterns of the indecomposables at a two-prime ideal: (1,0), (0,1), then (1,1)
TWO_PRIME_MIN_INDECOMPOSABLES = 3


@dataclass(frozen=True)
class SingularIdeal:
    id: str
    primes: Tuple[str, ...]
    indecomposables: int

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))

    @property
    def two_prime(self) -> bool:
        return len(self.primes) == 2


@dataclass(frozen=True)
class BassRingSpec:
    """Minimal primes and singular maximal ideals; nonsingular ideals are not represented."""

    minimal_primes: Tuple[str, ...] = ()
    singular_maximal_ideals: Tuple[SingularIdeal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "minimal_primes", tuple(self.minimal_primes))
        object.__setattr__(self, "singular_maximal_ideals", tuple(self.singular_maximal_ideals))

    @property
    def one_prime_ideals(self) -> Tuple[SingularIdeal, ...]:
        return tuple(m for m in self.singular_maximal_ideals if not m.two_prime)

    @property
    def two_prime_ideals(self) -> Tuple[SingularIdeal, ...]:
        return tuple(m for m in self.singular_maximal_ideals if m.two_prime)


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    subject: str
    message: str

    def __str__(self):
        return "%s [%s]: %s" % (self.subject, self.rule, self.message)


@dataclass(frozen=True)
class IsoReport:
    atom_count: int
    basis_size: int
    elements_checked: int
    lengths_checked: int
    box: int


# ---------------------------------------------------------------------------
# Parsing and validation
# ---------------------------------------------------------------------------

def parse_spec(text) -> BassRingSpec:
    """
    Parse ring-spec JSON (a string or an already decoded document).

    Raises:
        RingSpecError: structural problems; semantic rules are left to validate()
    """
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise RingSpecError([Diagnostic("format", "spec", "malformed JSON: %s" % e)]) from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise RingSpecError([Diagnostic("format", "spec", "expected a JSON object")])
    primes = doc.get("minimal_primes", [])
    ideals = doc.get("singular_maximal_ideals", [])
    if not isinstance(primes, list) or not all(isinstance(p, str) for p in primes):
        raise RingSpecError([Diagnostic("format", "minimal_primes", "must be a list of strings")])
    if not isinstance(ideals, list):
        raise RingSpecError([Diagnostic("format", "singular_maximal_ideals", "must be a list")])
    parsed = []
    for i, item in enumerate(ideals):
        subject = item.get("id", "ideal #%d" % i) if isinstance(item, dict) else "ideal #%d" % i
        if not isinstance(item, dict) or not isinstance(item.get("id"), str):
            raise RingSpecError([Diagnostic("format", str(subject), "needs a string 'id'")])
        contained = item.get("primes")
        if not isinstance(contained, list) or not all(isinstance(p, str) for p in contained):
            raise RingSpecError([Diagnostic("format", subject, "'primes' must be a list of prime identifiers")])
        t = item.get("indecomposables")
        if not isinstance(t, int) or isinstance(t, bool):
            raise RingSpecError([Diagnostic("format", subject, "'indecomposables' must be an integer")])
        parsed.append(SingularIdeal(item["id"], tuple(contained), t))
    return BassRingSpec(tuple(primes), tuple(parsed))


def spec_to_json(spec: BassRingSpec) -> dict:
    return {
        "minimal_primes": list(spec.minimal_primes),
        "singular_maximal_ideals": [
            {"id": m.id, "primes": list(m.primes), "indecomposables": m.indecomposables}
            for m in spec.singular_maximal_ideals
        ],
    }


def validate(spec: BassRingSpec) -> List[Diagnostic]:
    """
    Check every structural rule of a Bass ring spectrum.

    Returns:
        list: one Diagnostic per violation; empty when the spec is valid
    """
    found = []
    seen = set()
    for p in spec.minimal_primes:
        if p in seen:
            found.append(Diagnostic("unique-identifiers", p, "duplicate minimal prime"))
        seen.add(p)
    primes = set(spec.minimal_primes)
    for m in spec.singular_maximal_ideals:
        if m.id in seen:
            found.append(Diagnostic("unique-identifiers", m.id, "identifier already used"))
        seen.add(m.id)
        distinct = set(m.primes)
        if len(m.primes) not in (1, 2) or len(distinct) != len(m.primes):
            found.append(Diagnostic("prime-count", m.id, "must contain 1 or 2 distinct minimal primes, got %s"
                                    % list(m.primes)))
        for p in m.primes:
            if p not in primes:
                found.append(Diagnostic("unknown-prime", m.id, "cites unknown minimal prime %s" % p))
        if len(m.primes) == 2 and m.indecomposables < TWO_PRIME_MIN_INDECOMPOSABLES:
            found.append(Diagnostic("two-prime-indecomposables", m.id,
                                    "needs at least 3 indecomposables (ranks (1,0), (0,1), (1,1)), got %d"
                                    % m.indecomposables))
        if len(m.primes) == 1 and m.indecomposables < 1:
            found.append(Diagnostic("one-prime-indecomposables", m.id,
                                    "needs at least 1 indecomposable, got %d" % m.indecomposables))
    return found


def _require_valid(spec: BassRingSpec):
    problems = validate(spec)
    if problems:
        raise RingSpecError(problems)


# ---------------------------------------------------------------------------
# Graph and matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def intersection_graph(spec: BassRingSpec) -> Multigraph:
    """Vertices are the minimal primes; one edge per ideal containing two of them."""
    _require_valid(spec)
    two = spec.two_prime_ideals
    return Multigraph(spec.minimal_primes, tuple(m.id for m in two), tuple(m.primes for m in two))


def _indecomposable_label(m: SingularIdeal, j: int) -> str:
    return "%s:%d" % (m.id, j + 1)


def _ordered_ideals(spec: BassRingSpec) -> Tuple[SingularIdeal, ...]:
    return spec.one_prime_ideals + spec.two_prime_ideals


def _b_columns(spec: BassRingSpec) -> Tuple[Tuple[str, Optional[int]], ...]:
    """Column keys of B: (prime, None) per minimal prime, then (ideal id, j) per indecomposable."""
    keys = [(p, None) for p in spec.minimal_primes]
    for m in _ordered_ideals(spec):
        keys += [(m.id, j) for j in range(m.indecomposables)]
    return tuple(keys)


def _b_rows(spec: BassRingSpec) -> Tuple[Tuple[str, Optional[str]], ...]:
    """Row keys of B: (ideal id, None) for a one-prime ideal, (ideal id, prime) per side of a two-prime one."""
    keys = []
    for m in _ordered_ideals(spec):
        if m.two_prime:
            keys += [(m.id, p) for p in m.primes]
        else:
            keys.append((m.id, None))
    return tuple(keys)


@lru_cache(maxsize=64)
def matrix_B(spec: BassRingSpec) -> IntMatrix:
    """
    Rank equations of the indecomposables, one-prime ideals first.

    Columns: the minimal primes, then t columns per ideal. A one-prime ideal over
    p gives the row e_p minus all its columns. A two-prime ideal over (p, q) gives
    the rows [-1 0 -1 ... -1] at p and [0 -1 -1 ... -1] at q.
    """
    _require_valid(spec)
    cols = _b_columns(spec)
    col = {key: j for j, key in enumerate(cols)}
    ideals = {m.id: m for m in spec.singular_maximal_ideals}

    rows = []
    for ideal_id, p in _b_rows(spec):
        m = ideals[ideal_id]
        row = [0] * len(cols)
        if p is None:
            row[col[(m.primes[0], None)]] = 1
            for j in range(m.indecomposables):
                row[col[(m.id, j)]] = -1
        else:
            row[col[(p, None)]] = 1
            row[col[(m.id, m.primes.index(p))]] = -1
            for j in range(2, m.indecomposables):
                row[col[(m.id, j)]] = -1
        rows.append(tuple(row))
    row_labels = tuple(ideal_id if p is None else _local_label(ideals[ideal_id], p) for ideal_id, p in _b_rows(spec))
    col_labels = tuple(owner if j is None else _indecomposable_label(ideals[owner], j) for owner, j in cols)
    return IntMatrix(tuple(rows), len(cols), row_labels, col_labels)


def _local_label(m: SingularIdeal, p: str) -> str:
    return "%s:%s" % (m.id, p)


@lru_cache(maxsize=64)
def matrix_C(spec: BassRingSpec) -> IntMatrix:
    """
    Rows e_p - e_m - e_{m_p}, one per incidence of a two-prime ideal m with a prime p.

    Columns: the minimal primes, then m_p, m_q, m for each two-prime ideal.
    """
    _require_valid(spec)
    col_labels = list(spec.minimal_primes)
    for m in spec.two_prime_ideals:
        col_labels += [_local_label(m, m.primes[0]), _local_label(m, m.primes[1]), m.id]
    col = {label: i for i, label in enumerate(col_labels)}
    rows, row_labels = [], []
    for m in spec.two_prime_ideals:
        for p in m.primes:
            row = [0] * len(col_labels)
            row[col[p]] += 1
            row[col[m.id]] -= 1
            row[col[_local_label(m, p)]] -= 1
            rows.append(tuple(row))
            row_labels.append(_local_label(m, p))
    return IntMatrix(tuple(rows), len(col_labels), tuple(row_labels), tuple(col_labels))


def transfer_monoid(spec: BassRingSpec) -> DiophantineMonoid:
    return DiophantineMonoid(matrix_C(spec))


def _merge_blocks(cols) -> List[Optional[str]]:
    """Indecomposable columns merge only within their own ideal; prime columns never merge."""
    return [None if j is None else owner for owner, j in cols]


def matrix_C_from_B(spec: BassRingSpec) -> IntMatrix:
    """
    Derive C from B: erase the rows and columns of one-prime ideals, then merge the
    identical (1,1) columns of each two-prime ideal.
    """
    b = matrix_B(spec)
    cols = _b_columns(spec)
    one_ids = {m.id for m in spec.one_prime_ideals}
    one_rows = [i for i, (ideal_id, _) in enumerate(_b_rows(spec)) if ideal_id in one_ids]
    one_cols = [j for j, (owner, index) in enumerate(cols) if index is not None and owner in one_ids]
    dropped = set(one_cols)
    kept = [key for j, key in enumerate(cols) if j not in dropped]
    erased = DiophantineMonoid(b.erase(one_rows, one_cols))
    return dedup_transfer(erased, _merge_blocks(kept)).target.matrix


def dedup_then_erase(spec: BassRingSpec) -> IntMatrix:
    """
    The other path around the square: merge duplicate columns of B first, then
    erase the one-prime rows and every merged column made of one-prime indecomposables.
    """
    b = matrix_B(spec)
    cols = _b_columns(spec)
    t = dedup_transfer(DiophantineMonoid(b), _merge_blocks(cols))
    one_ids = {m.id for m in spec.one_prime_ideals}
    one_rows = [i for i, (ideal_id, _) in enumerate(_b_rows(spec)) if ideal_id in one_ids]
    one_cols = [g for g, grp in enumerate(t.groups) if cols[grp[0]][1] is not None and cols[grp[0]][0] in one_ids]
    return t.target.matrix.erase(one_rows, one_cols)


# ---------------------------------------------------------------------------
# The isomorphism H = A(G_R)
# ---------------------------------------------------------------------------

def forward(spec: BassRingSpec, x: Sequence[int]) -> Agglomeration:
    """Drop the m_p coordinates: a(p) = x_p and a(m) = x_m."""
    c = matrix_C(spec)
    if not membership(DiophantineMonoid(c), x):
        raise VerificationError("vector is not in the transfer image monoid", tuple(x))
    value = dict(zip(c.col_labels, x))
    g = intersection_graph(spec)
    return from_mapping(g, {k: value[k] for k in g.vertices + g.edges})


def inverse(spec: BassRingSpec, a: Agglomeration) -> Tuple[int, ...]:
    """x_p = a(p), x_m = a(m), x_{m_p} = a(p) - a(m)."""
    c = matrix_C(spec)
    value: Dict[str, int] = {p: a[p] for p in spec.minimal_primes}
    for m in spec.two_prime_ideals:
        value[m.id] = a[m.id]
        for p in m.primes:
            value[_local_label(m, p)] = a[p] - a[m.id]
    return tuple(value[label] for label in c.col_labels)


def iso_to_agglomerations(spec: BassRingSpec, box: int = None) -> IsoReport:
    """
    Verify H = A(G_R) on the box of weights <= box: the inverse lands in H,
    both round trips are identities, the Hilbert basis maps onto the atoms and
    sets of lengths agree.

    Raises:
        VerificationError: with the offending vector
    """
    box = config.ISO_BOX if box is None else box
    g = intersection_graph(spec)
    h = transfer_monoid(spec)

    # atoms of A(G) are 0/1-valued, and so are their preimages; a complete
    # search at cap 1 shows H has no other atoms
    basis = hilbert_basis(h, 1)
    if not basis.complete:
        raise VerificationError("Hilbert basis of the transfer image has atoms beyond 0/1 coordinates "
                                "or hit the frontier limit")
    engine, _ = monoid_factorizer(h, 1)
    images = set()
    for v in basis.vectors:
        a = forward(spec, v)
        if inverse(spec, a) != v:
            raise VerificationError("inverse does not undo forward", v)
        images.add(a)
    atom_set = set(atoms(g))
    if images != atom_set or len(basis.vectors) != len(atom_set):
        stray = sorted(images ^ atom_set, key=lambda a: a.values)
        raise VerificationError("Hilbert basis (%d) does not map onto the %d atoms"
                                % (len(basis.vectors), len(atom_set)), stray[0] if stray else None)

    checked = lengths = 0
    for a in agglomerations_in_box(g, box):
        x = inverse(spec, a)
        if not membership(h, x):
            raise VerificationError("inverse leaves the transfer image monoid", x)
        if forward(spec, x) != a:
            raise VerificationError("forward does not undo inverse", x)
        checked += 1
        if set(engine.lengths(x)) != set(length_set(g, a)):
            raise VerificationError("sets of lengths differ", x)
        lengths += 1
    log.debug("isomorphism verified on %d elements, %d atoms", checked, len(atom_set))
    return IsoReport(len(atom_set), len(basis.vectors), checked, lengths, box)


# ---------------------------------------------------------------------------
# Criteria, realization and families
# ---------------------------------------------------------------------------

def krsa_check(spec: BassRingSpec, pic_trivial: bool) -> bool:
    """
    KRSA holds iff Pic(R) is trivial and every connected component of the
    spectrum carries at most one singular maximal ideal.

    Raises:
        VerificationError: the criterion holds but A(G_R) is not factorial
    """
    g = intersection_graph(spec)
    holds = pic_trivial
    for comp in connected_components(g):
        members = set(comp.vertices)
        count = comp.size + sum(1 for m in spec.one_prime_ideals if m.primes[0] in members)
        if count > 1:
            holds = False
    if holds and not is_factorial(g):
        raise VerificationError("KRSA criterion holds but A(G_R) is not factorial")
    return holds


def realize(g: Multigraph) -> BassRingSpec:
    """One minimal prime per vertex, one two-prime singular ideal with t = 3 per edge."""
    return BassRingSpec(g.vertices, tuple(SingularIdeal(e, pair, TWO_PRIME_MIN_INDECOMPOSABLES)
                                          for e, pair in zip(g.edges, g.ends)))


def _family_error(name, message):
    return RingSpecError([Diagnostic("family-parameter", name, message)])


def _primes(n):
    return tuple("p%d" % (i + 1) for i in range(n))


def _two_prime(pairs) -> Tuple[SingularIdeal, ...]:
    return tuple(SingularIdeal("m%d" % (i + 1), pair, TWO_PRIME_MIN_INDECOMPOSABLES) for i, pair in enumerate(pairs))


def family(name: str, m: int = None, k: int = None, n: int = None, singular: int = 1, t: int = 2) -> BassRingSpec:
    """
    Standard spectra: domain (one prime), ngon (C_m), banana (B_k), complete (K_n).

    Raises:
        RingSpecError: unknown family or invalid parameter
    """
    if name == "domain":
        if singular < 0 or t < 1:
            raise _family_error(name, "needs singular >= 0 and t >= 1")
        ideals = tuple(SingularIdeal("m%d" % (i + 1), ("p1",), t) for i in range(singular))
        return BassRingSpec(("p1",), ideals)
    if name == "ngon":
        if m is None or m < 3:
            raise _family_error(name, "needs m >= 3")
        ps = _primes(m)
        return BassRingSpec(ps, _two_prime([(ps[i], ps[(i + 1) % m]) for i in range(m)]))
    if name == "banana":
        if k is None or k < 2:
            raise _family_error(name, "needs k >= 2")
        return BassRingSpec(_primes(2), _two_prime([("p1", "p2")] * k))
    if name == "complete":
        if n is None or n < 2:
            raise _family_error(name, "needs n >= 2")
        ps = _primes(n)
        return BassRingSpec(ps, _two_prime([(ps[i], ps[j]) for i in range(n) for j in range(i + 1, n)]))
    raise _family_error(name, "unknown family; expected domain, ngon, banana or complete")


def image_elasticity(spec: BassRingSpec, search_depth: int = None) -> ElasticityReport:
    """Elasticity of the transfer image, i.e. of A(G_R)."""
    return elasticity(intersection_graph(spec), search_depth)
