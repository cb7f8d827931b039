import random

import pytest

from conftest import rand_invertible, rand_matrix, rand_monic
from gfcanon import (
    KroneckerForm,
    Matrix,
    PairWitness,
    PencilBlock,
    Poly,
    PrimeField,
    char_poly,
    companion,
    frobenius_form,
    kronecker_form,
)
from gfcanon.errors import DimensionMismatchError

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
FIELDS = (F2, F3, F5)


# -- square-matrix canonical form ------------------------------------------------


def _coeff_lists(divisors):
    return [list(q.coeffs) for q in divisors]


def test_frobenius_worked_examples():
    divisors, _ = frobenius_form(Matrix.zero(F3, 2, 2))
    assert _coeff_lists(divisors) == [[0, 1], [0, 1]]  # x, x

    divisors, _ = frobenius_form(Matrix(F5, [[1, 0], [0, 2]], 2))
    assert _coeff_lists(divisors) == [[4, 1], [3, 1]]  # x-1, x-2

    shift = Matrix(F5, [[0, 0, 0], [1, 0, 0], [0, 1, 0]], 3)
    divisors, _ = frobenius_form(shift)
    assert _coeff_lists(divisors) == [[0, 0, 0, 1]]  # x^3

    # companion((x-1)^2) + companion(x-1): divisors sort by degree first
    m = Matrix.block_diag(
        F5, [companion(Poly(F5, [1, 3, 1])), Matrix(F5, [[1]], 1)]
    )
    divisors, _ = frobenius_form(m)
    assert _coeff_lists(divisors) == [[4, 1], [1, 3, 1]]

    divisors, basis = frobenius_form(Matrix.zero(F5, 0, 0))
    assert divisors == [] and basis.shape == (0, 0)


def test_frobenius_divisors_are_prime_powers_and_rebuild():
    rng = random.Random(41)
    for _ in range(150):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(1, 6)
        m = rand_matrix(rng, fld, d, d)
        divisors, basis = frobenius_form(m)
        synth = Matrix.block_diag(fld, [companion(q) for q in divisors])
        assert m @ basis == basis @ synth
        prod = Poly.one(fld)
        for q in divisors:
            prod = prod * q
        assert prod == char_poly(m)


def test_frobenius_similarity_invariant():
    rng = random.Random(42)
    for _ in range(100):
        fld = FIELDS[rng.randrange(3)]
        d = rng.randrange(1, 5)
        m = rand_matrix(rng, fld, d, d)
        s = rand_invertible(rng, fld, d)
        from gfcanon import inverse

        divisors, _ = frobenius_form(m)
        divisors2, _ = frobenius_form(inverse(s) @ m @ s)
        assert divisors == divisors2


# -- pencil canonical form --------------------------------------------------------


def test_block_shapes():
    right = PencilBlock("right", F3, index=3)
    assert right.shape == (2, 3)
    left = PencilBlock("left", F3, index=2)
    assert left.shape == (2, 1)
    inf = PencilBlock("inf", F3, index=2)
    assert inf.shape == (2, 2)
    fin = PencilBlock("finite", F3, divisor=Poly(F3, [1, 2, 1]))
    assert fin.shape == (2, 2)
    f, g = right.pair()
    assert f.rows == ((1, 0, 0), (0, 1, 0))
    assert g.rows == ((0, 1, 0), (0, 0, 1))
    jf, jg = inf.pair()
    assert jf.rows == ((0, 0), (1, 0))  # nilpotent lower shift
    assert jg == Matrix.identity(F3, 2)


def test_kronecker_zero_pencils():
    form, _ = kronecker_form(Matrix.zero(F3, 1, 1), Matrix.zero(F3, 1, 1))
    assert (form.right, form.left, form.inf, form.finite) == ((1,), (1,), (), ())
    form, _ = kronecker_form(Matrix.zero(F3, 1, 2), Matrix.zero(F3, 1, 2))
    assert (form.right, form.left, form.inf) == ((1, 1), (1,), ())
    form, _ = kronecker_form(Matrix.zero(F3, 2, 1), Matrix.zero(F3, 2, 1))
    assert (form.right, form.left, form.inf) == ((1,), (1, 1), ())


def test_kronecker_regular_examples():
    lam = 3
    form, _ = kronecker_form(
        Matrix.identity(F5, 2), Matrix(F5, [[lam, 0], [1, lam]], 2)
    )
    assert form.right == () and form.left == () and form.inf == ()
    assert _coeff_lists(form.finite) == [[4, 4, 1]]  # (x-3)^2

    form, _ = kronecker_form(Matrix(F5, [[0, 0], [1, 0]], 2), Matrix.identity(F5, 2))
    assert form.inf == (2,) and form.finite == ()

    form, _ = kronecker_form(Matrix.identity(F5, 2), Matrix(F5, [[1, 0], [0, 2]], 2))
    assert _coeff_lists(form.finite) == [[4, 1], [3, 1]]


def test_kronecker_witness_and_shape_bookkeeping():
    rng = random.Random(17)
    for _ in range(250):
        fld = FIELDS[rng.randrange(3)]
        m, n = rng.randrange(0, 5), rng.randrange(0, 5)
        a1 = rand_matrix(rng, fld, m, n)
        a2 = rand_matrix(rng, fld, m, n)
        form, w = kronecker_form(a1, a2)
        assert form.shape == (m, n)
        assert w.apply(a1, a2) == form.matrices()


def test_kronecker_invariant_under_equivalence():
    rng = random.Random(18)
    for _ in range(150):
        fld = FIELDS[rng.randrange(3)]
        m, n = rng.randrange(1, 5), rng.randrange(1, 5)
        a1 = rand_matrix(rng, fld, m, n)
        a2 = rand_matrix(rng, fld, m, n)
        r = rand_invertible(rng, fld, m)
        s = rand_invertible(rng, fld, n)
        w = PairWitness(r, s)
        form, _ = kronecker_form(a1, a2)
        form2, _ = kronecker_form(*w.apply(a1, a2))
        assert form == form2


def test_kronecker_idempotent_on_canonical_matrices():
    fld = F5
    form = KroneckerForm(
        fld,
        (1, 2),
        (2,),
        (1,),
        (Poly(fld, [4, 1]), Poly(fld, [4, 4, 1])),
    )
    c1, c2 = form.matrices()
    again, w = kronecker_form(c1, c2)
    assert again == form
    assert w.apply(c1, c2) == (c1, c2)


def test_kronecker_rejects_mismatched_pairs():
    with pytest.raises(DimensionMismatchError):
        kronecker_form(Matrix.zero(F3, 2, 2), Matrix.zero(F3, 2, 3))


def test_pair_witness_compose_inverse():
    rng = random.Random(19)
    for _ in range(60):
        fld = FIELDS[rng.randrange(3)]
        m, n = rng.randrange(1, 4), rng.randrange(1, 4)
        a1 = rand_matrix(rng, fld, m, n)
        a2 = rand_matrix(rng, fld, m, n)
        w1 = PairWitness(rand_invertible(rng, fld, m), rand_invertible(rng, fld, n))
        w2 = PairWitness(rand_invertible(rng, fld, m), rand_invertible(rng, fld, n))
        assert w1.compose(w2).apply(a1, a2) == w2.apply(*w1.apply(a1, a2))
        assert w1.inverse().apply(*w1.apply(a1, a2)) == (a1, a2)


def test_form_round_trips_through_dict():
    form = KroneckerForm(F3, (1,), (), (2,), (Poly(F3, [2, 1]),))
    assert KroneckerForm.from_dict(form.to_dict()) == form
