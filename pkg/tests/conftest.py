"""Shared builders for randomized tests. Everything is seeded explicitly."""

import random

from gfcanon import Matrix, Poly, PrimeField, SpatialMatrix, TransformWitness


def rand_matrix(rng: random.Random, fld: PrimeField, m: int, n: int) -> Matrix:
    return Matrix(fld, [[rng.randrange(fld.p) for _ in range(n)] for _ in range(m)], n)


def rand_invertible(rng: random.Random, fld: PrimeField, d: int) -> Matrix:
    from gfcanon import is_invertible

    while True:
        mat = rand_matrix(rng, fld, d, d)
        if is_invertible(mat):
            return mat


def rand_tensor(
    rng: random.Random, fld: PrimeField, m: int, n: int, q: int
) -> SpatialMatrix:
    return SpatialMatrix(
        fld,
        [[[rng.randrange(fld.p) for _ in range(n)] for _ in range(m)] for _ in range(q)],
        m,
        n,
    )


def rand_witness(
    rng: random.Random, fld: PrimeField, m: int, n: int, q: int
) -> TransformWitness:
    return TransformWitness(
        rand_invertible(rng, fld, m),
        rand_invertible(rng, fld, n),
        rand_invertible(rng, fld, q),
    )


def rand_monic(rng: random.Random, fld: PrimeField, degree: int) -> Poly:
    coeffs = [rng.randrange(fld.p) for _ in range(degree)] + [1]
    return Poly(fld, coeffs)
