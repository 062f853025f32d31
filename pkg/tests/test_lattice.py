import pytest
from hypothesis import given, strategies as st

from gkmk.lattice import (
    IntMatrix,
    NotPrimitive,
    QuotientLattice,
    complete_to_basis,
    content,
    dot,
    hnf,
    inverse_unimodular,
    primitive_part,
    snf,
)

small = st.integers(-6, 6)


def matrices(max_r=3, max_c=3):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_hnf_identity():
    H, U = hnf([[1, 0], [0, 1]])
    assert H == IntMatrix.identity(2) and U == IntMatrix.identity(2)


def test_hnf_rank_one():
    m = IntMatrix(((2, 4), (0, 0)), 2)
    H, U = hnf(m)
    assert H.rows[0] == (2, 4) and not any(H.rows[1])
    assert U @ m == H and abs(U.det()) == 1


def test_hnf_permutation():
    H, U = hnf([[0, 1], [1, 0]])
    assert H == IntMatrix.identity(2)
    assert U == IntMatrix(((0, 1), (1, 0)), 2)


def test_snf_examples():
    D, U, V = snf([[2, 0], [0, 3]])
    assert D == IntMatrix(((1, 0), (0, 6)), 2)
    assert snf([[1, 0], [0, 1]])[0] == IntMatrix.identity(2)
    assert snf([[0, 0], [0, 0]])[0] == IntMatrix.zeros(2, 2)


@pytest.mark.parametrize("v, expected", [((2, 4), ((1, 2), 2)), ((1, -1), ((1, -1), 1)), ((0, -3), ((0, -1), 3))])
def test_primitive_part(v, expected):
    assert primitive_part(v) == expected


def test_complete_to_basis():
    assert complete_to_basis((1, 0)) == IntMatrix.identity(2)
    B = complete_to_basis((1, 2))
    assert abs(B.det()) == 1
    assert dot(B.rows[0], (1, 2)) == 1 and dot(B.rows[1], (1, 2)) == 0
    with pytest.raises(NotPrimitive):
        complete_to_basis((2, 2))


@given(matrices())
def test_hnf_property(rows):
    m = IntMatrix(tuple(map(tuple, rows)), len(rows[0]))
    H, U = hnf(m)
    assert U.is_unimodular() and U @ m == H
    # echelon shape with positive pivots
    last = -1
    for row in H.rows:
        nz = [j for j, x in enumerate(row) if x]
        if nz:
            assert nz[0] > last and row[nz[0]] > 0
            last = nz[0]


@given(matrices())
def test_snf_property(rows):
    m = IntMatrix(tuple(map(tuple, rows)), len(rows[0]))
    D, U, V = snf(m)
    assert U.is_unimodular() and V.is_unimodular()
    assert U @ m @ V == D
    diag = [D[i, i] for i in range(min(D.shape))]
    assert all(D[i, j] == 0 for i in range(D.nrows) for j in range(D.ncols) if i != j)
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(st.lists(small, min_size=1, max_size=4).filter(lambda v: content(v) == 1))
def test_complete_to_basis_property(xi):
    B = complete_to_basis(xi)
    assert B.is_unimodular()
    assert [dot(r, xi) for r in B.rows] == [1] + [0] * (len(xi) - 1)
    assert B @ inverse_unimodular(B) == IntMatrix.identity(len(xi))


@given(matrices(2, 3), st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_canonical_form_additive(rels, v, w):
    rels = [r + [0] * (3 - len(r)) for r in rels]
    q = QuotientLattice(3, rels)
    cf = q.canonical_form
    s = [a + b for a, b in zip(v, w)]
    t = [a + b for a, b in zip(cf(v), cf(w))]
    assert cf(s) == cf(t)
    # relations vanish and canonical forms are idempotent
    assert all(q.contains(r) for r in rels)
    assert cf(cf(v)) == cf(v)


def test_quotient_torsion():
    q = QuotientLattice(2, [(2, -2)])
    assert q.torsion == (2,) and q.free_rank == 1
    assert not q.contains((1, -1)) and q.contains((4, -4))
    assert q == QuotientLattice(2, [(-2, 2)])
