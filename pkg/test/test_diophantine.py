"""
Tests for Diophantine monoids: membership, Hilbert bases, factorization and
the duplicate-column transfer.
"""

import pytest

import diophantine as dio
from errors import DiophantineError


def monoid(rows, n_cols=None):
    if n_cols is None:
        return dio.DiophantineMonoid(dio.IntMatrix.from_rows(rows))
    return dio.DiophantineMonoid(dio.IntMatrix(tuple(tuple(r) for r in rows), n_cols))


@pytest.fixture
def h():
    return monoid([[1, 1, -1]])


def test_matrix_validation():
    with pytest.raises(DiophantineError, match="row 1"):
        dio.IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DiophantineError, match="non-integer"):
        dio.IntMatrix.from_rows([[1, 0.5]])
    with pytest.raises(DiophantineError, match="duplicate column label"):
        dio.IntMatrix.from_rows([[1, 2]], col_labels=("a", "a"))


def test_matrix_json():
    m = dio.matrix_from_json('{"rows": [[1, -1]], "col_labels": ["x", "y"]}')
    assert m.shape == (1, 2)
    assert dio.matrix_from_json(dio.matrix_to_json(m)) == m
    empty = dio.matrix_from_json({"rows": [], "n_cols": 3})
    assert empty.shape == (0, 3)
    with pytest.raises(DiophantineError):
        dio.matrix_from_json('{"columns": []}')
    with pytest.raises(DiophantineError):
        dio.matrix_from_json("[[1, 2]")


def test_erase():
    m = dio.IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]], row_labels=("r", "s"), col_labels=("a", "b", "c"))
    small = m.erase(rows=[0], cols=[1])
    assert small.rows == ((4, 6),)
    assert small.row_labels == ("s",) and small.col_labels == ("a", "c")


def test_membership(h):
    assert dio.membership(h, (1, 0, 1))
    assert dio.membership(h, (0, 0, 0))
    assert not dio.membership(h, (1, 0, 0))
    assert not dio.membership(h, (-1, 2, 1))
    with pytest.raises(DiophantineError):
        dio.membership(h, (1, 1))


def test_hilbert_basis(h):
    basis = dio.hilbert_basis(h)
    assert basis.vectors == ((1, 0, 1), (0, 1, 1))
    assert basis.complete and basis.covers_cap


def test_hilbert_basis_of_zero_matrix():
    basis = dio.hilbert_basis(monoid([], n_cols=3))
    assert basis.vectors == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    zero_row = dio.hilbert_basis(monoid([[0, 0]]))
    assert zero_row.vectors == ((1, 0), (0, 1))


def test_hilbert_basis_elements_are_irreducible():
    m = monoid([[2, -1, -1], [0, 1, -1]])
    basis = dio.hilbert_basis(m, 6)
    assert basis.vectors == ((1, 1, 1),)
    m = monoid([[1, -2]])
    assert dio.hilbert_basis(m).vectors == ((2, 1),)


def test_hilbert_basis_cap_flags_incompleteness():
    m = monoid([[1, -3]])
    capped = dio.hilbert_basis(m, 2)
    assert capped.vectors == ()
    assert not capped.complete
    assert dio.hilbert_basis(m, 3).vectors == ((3, 1),)


def test_lattice_points(h):
    assert list(dio.lattice_points(h, 1)) == [(0, 0, 0), (0, 1, 1), (1, 0, 1)]


def test_length_sets_and_factorizations(h):
    assert list(dio.length_set_dm(h, (1, 0, 1))) == [1]
    assert list(dio.length_set_dm(h, (1, 1, 2))) == [2]
    assert list(dio.length_set_dm(h, (0, 0, 0))) == [0]
    result = dio.factorizations_dm(h, (2, 1, 3))
    assert [z.atoms for z in result] == [((1, 0, 1), (1, 0, 1), (0, 1, 1))]
    with pytest.raises(DiophantineError, match="not in the monoid"):
        dio.length_set_dm(h, (1, 0, 0))


def test_non_half_factorial_monoid():
    # x + y = 2z: (2,0,1) + (0,2,1) = 2 * (1,1,1)
    m = monoid([[1, 1, -2]])
    assert set(dio.hilbert_basis(m).vectors) == {(2, 0, 1), (1, 1, 1), (0, 2, 1)}
    assert list(dio.length_set_dm(m, (2, 2, 2))) == [2]
    result = dio.factorizations_dm(m, (2, 2, 2))
    assert len(result) == 2


def test_dedup_transfer(h):
    t = dio.dedup_transfer(h)
    assert t.groups == ((0, 1), (2,))
    assert t.target.matrix.rows == ((1, -1),)
    assert not t.is_identity
    assert t.apply((1, 2, 3)) == (3, 3)
    with pytest.raises(DiophantineError):
        t.apply((1, 2))


def test_dedup_identity_and_labels():
    m = monoid([[1, 2, 3]])
    assert dio.dedup_transfer(m).is_identity
    labelled = dio.DiophantineMonoid(dio.IntMatrix.from_rows([[1, 1, 1, -1]], col_labels=("a", "b", "c", "d")))
    t = dio.dedup_transfer(labelled)
    assert t.groups == ((0, 1, 2), (3,))
    assert t.target.matrix.col_labels == ("a+b+c", "d")
    assert t.apply((1, 1, 1, 3)) == (3, 3)


def test_dedup_within_blocks():
    m = monoid([[0, 0, 1, 1, -1], [0, 0, 1, 1, -1]])
    t = dio.dedup_transfer(m, [None, None, "x", "x", "y"])
    assert t.groups == ((0,), (1,), (2, 3), (4,))
    t = dio.dedup_transfer(m, ["a", "b", "x", "y", "y"])
    assert t.is_identity
    assert dio.dedup_transfer(m).groups == ((0, 1), (2, 3), (4,))
    with pytest.raises(DiophantineError):
        dio.dedup_transfer(m, [None])


def test_split(h):
    t = dio.dedup_transfer(h)
    v, w = t.split((1, 1, 2), (1, 1), (1, 1))
    assert v == (1, 0, 1) and w == (0, 1, 1)
    with pytest.raises(DiophantineError):
        t.split((1, 1, 2), (1, 1), (2, 1))


def test_lift_factorization(h):
    t = dio.dedup_transfer(h)
    lifted = dio.lift_factorization(t, (1, 1, 2), [(1, 1), (1, 1)])
    assert lifted.atoms == ((1, 0, 1), (0, 1, 1))
    assert lifted.length == 2
    basis = set(dio.hilbert_basis(h).vectors)
    assert all(a in basis for a in lifted.atoms)
    with pytest.raises(DiophantineError):
        dio.lift_factorization(t, (1, 1, 2), [])
    with pytest.raises(DiophantineError):
        dio.lift_factorization(t, (1, 0, 0), [(1, 1)])


def test_transfer_preserves_lengths(h):
    t = dio.dedup_transfer(h)
    for x in dio.lattice_points(h, 3):
        assert list(dio.length_set_dm(h, x, 3)) == list(dio.length_set_dm(t.target, t.apply(x), 6))
