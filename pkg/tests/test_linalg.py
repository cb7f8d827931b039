import random

import pytest

from conftest import rand_invertible, rand_matrix, rand_monic
from gfcanon import (
    Matrix,
    Poly,
    PrimeField,
    char_poly,
    companion,
    inverse,
    is_invertible,
    kernel_basis,
    poly_at_matrix,
    rank,
    rref,
    solve_right,
)
from gfcanon.errors import DimensionMismatchError, NotMonicError, SingularMatrixError
from gfcanon.linalg import SpanTracker, complete_basis_cols

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
FIELDS = (F2, F3, F5)


def test_matrix_basics():
    m = Matrix(F5, [[1, 2], [3, 4]], 2)
    assert m.shape == (2, 2)
    assert m.at(1, 0) == 3
    assert m.transpose().transpose() == m
    assert (m + m) == m.scale(2)
    assert (m - m).is_zero()
    assert m @ Matrix.identity(F5, 2) == m
    empty = Matrix(F5, [], 3)
    assert empty.shape == (0, 3)
    with pytest.raises(DimensionMismatchError):
        Matrix(F5, [[1, 2], [3]], 2)
    with pytest.raises(DimensionMismatchError):
        m @ Matrix.identity(F5, 3)


def test_stacking_and_block_diag():
    a = Matrix(F3, [[1, 2]], 2)
    b = Matrix(F3, [[0, 1]], 2)
    assert Matrix.vstack([a, b]).rows == ((1, 2), (0, 1))
    assert Matrix.hstack([a, b]).rows == ((1, 2, 0, 1),)
    d = Matrix.block_diag(F3, [Matrix(F3, [[2]], 1), Matrix.identity(F3, 2)])
    assert d.rows == ((2, 0, 0), (0, 1, 0), (0, 0, 1))
    assert Matrix.block_diag(F3, []).shape == (0, 0)


def test_rref_properties():
    rng = random.Random(2)
    for _ in range(200):
        fld = FIELDS[rng.randrange(3)]
        m, n = rng.randrange(0, 5), rng.randrange(0, 5)
        a = rand_matrix(rng, fld, m, n)
        r, e, rk = rref(a)
        assert e @ a == r
        assert is_invertible(e)
        assert 0 <= rk <= min(m, n)
        # pivot structure: strictly increasing pivot columns, unit pivots,
        # pivot columns otherwise zero
        last = -1
        for i in range(rk):
            row = r.row(i)
            piv = next(j for j in range(n) if row[j])
            assert piv > last
            last = piv
            assert row[piv] == 1
            assert all(r.at(k, piv) == 0 for k in range(m) if k != i)
        for i in range(rk, m):
            assert all(x == 0 for x in r.row(i))


def test_rank_equals_transpose_rank():
    rng = random.Random(8)
    for _ in range(200):
        fld = FIELDS[rng.randrange(3)]
        a = rand_matrix(rng, fld, rng.randrange(0, 6), rng.randrange(0, 6))
        assert rank(a) == rank(a.transpose())


def test_inverse_and_errors():
    rng = random.Random(13)
    for _ in range(80):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(0, 5)
        a = rand_invertible(rng, fld, d)
        assert a @ inverse(a) == Matrix.identity(fld, d)
        assert inverse(a) @ a == Matrix.identity(fld, d)
    with pytest.raises(SingularMatrixError):
        inverse(Matrix.zero(F3, 2, 2))
    with pytest.raises(DimensionMismatchError):
        inverse(Matrix.zero(F3, 2, 3))


def test_kernel_basis_spans_kernel():
    rng = random.Random(21)
    for _ in range(150):
        fld = FIELDS[rng.randrange(3)]
        a = rand_matrix(rng, fld, rng.randrange(0, 5), rng.randrange(0, 5))
        k = kernel_basis(a)
        assert k.m == a.n
        assert k.n == a.n - rank(a)
        assert (a @ k).is_zero()
        assert rank(k) == k.n


def test_solve_right():
    rng = random.Random(34)
    for _ in range(150):
        fld = FIELDS[rng.randrange(3)]
        m, n, w = rng.randrange(1, 5), rng.randrange(1, 5), rng.randrange(1, 4)
        a = rand_matrix(rng, fld, m, n)
        x0 = rand_matrix(rng, fld, n, w)
        b = a @ x0
        x = solve_right(a, b)
        assert x is not None and a @ x == b
    # clearly unsolvable: zero matrix, nonzero target
    assert solve_right(Matrix.zero(F3, 2, 2), Matrix(F3, [[1, 0], [0, 0]], 2)) is None


def test_companion_char_poly_exhaustive_small():
    for p, deg_max in ((2, 6), (3, 4), (5, 3)):
        fld = PrimeField(p)
        for deg in range(1, deg_max + 1):
            for code in range(p**deg):
                coeffs = []
                c = code
                for _ in range(deg):
                    coeffs.append(c % p)
                    c //= p
                chi = Poly(fld, coeffs + [1])
                assert char_poly(companion(chi)) == chi


def test_companion_edge_cases():
    assert companion(Poly.one(F5)).shape == (0, 0)
    assert char_poly(Matrix.zero(F5, 0, 0)) == Poly.one(F5)
    with pytest.raises(NotMonicError):
        companion(Poly(F5, [1, 2]))


def test_char_poly_similarity_invariant():
    rng = random.Random(55)
    for _ in range(100):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(1, 5)
        a = rand_matrix(rng, fld, d, d)
        s = rand_invertible(rng, fld, d)
        assert char_poly(inverse(s) @ a @ s) == char_poly(a)
        assert char_poly(a).is_monic and char_poly(a).degree == d


def test_char_poly_multiplies_over_block_diag():
    rng = random.Random(56)
    for _ in range(60):
        fld = FIELDS[rng.randrange(3)]
        da, db = rng.randrange(1, 4), rng.randrange(1, 4)
        a = rand_matrix(rng, fld, da, da)
        b = rand_matrix(rng, fld, db, db)
        d = Matrix.block_diag(fld, [a, b])
        assert char_poly(d) == char_poly(a) * char_poly(b)


def test_cayley_hamilton():
    rng = random.Random(57)
    for _ in range(80):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(1, 5)
        a = rand_matrix(rng, fld, d, d)
        assert poly_at_matrix(char_poly(a), a).is_zero()


def test_span_tracker_matches_rank():
    rng = random.Random(70)
    for _ in range(100):
        fld = FIELDS[rng.randrange(3)]
        n = rng.randrange(1, 6)
        tracker = SpanTracker(fld, n)
        vectors = []
        for _ in range(rng.randrange(1, 8)):
            v = tuple(rng.randrange(fld.p) for _ in range(n))
            vectors.append(v)
            tracker.add(v)
            stacked = Matrix(fld, [list(u) for u in vectors], n)
            assert tracker.dim == rank(stacked)
            assert tracker.contains(v)


def test_complete_basis_cols():
    rng = random.Random(71)
    for _ in range(80):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(1, 5)
        k = rng.randrange(0, d + 1)
        full = rand_invertible(rng, fld, d)
        cols = [tuple(full.at(i, j) for i in range(d)) for j in range(k)]
        completed = complete_basis_cols(fld, cols, d)
        assert is_invertible(completed)
        for j in range(k):
            assert tuple(completed.at(i, j) for i in range(d)) == cols[j]
    with pytest.raises(SingularMatrixError):
        complete_basis_cols(F3, [(1, 0), (2, 0)], 2)
