"""Brute-force ground truth for the canonical machinery.

Everything here is deliberately independent of the pencil reductions: group
elements are enumerated outright and orbits are closed under generator
moves, so these routines can referee the clever code paths.  All of it is
budgeted; exceeding a budget raises instead of silently grinding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, DimensionMismatchError, WitnessError
from .field import PrimeField
from .linalg import Matrix, inverse, is_invertible, rref
from .spatial import SpatialMatrix, TransformWitness, apply_transform, _family_ranks

DEFAULT_BUDGET = 10**7

_GL_CACHE: dict[tuple[int, int], tuple[Matrix, ...]] = {}
_PGL_CACHE: dict[tuple[int, int], tuple[Matrix, ...]] = {}


def gl_order(fld: PrimeField, dim: int) -> int:
    p = fld.p
    total = 1
    for i in range(dim):
        total *= p**dim - p**i
    return total


def enumerate_gl(
    fld: PrimeField, dim: int, budget: int = DEFAULT_BUDGET
) -> tuple[Matrix, ...]:
    """All invertible dim x dim matrices, in lexicographic entry order."""
    key = (fld.p, dim)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    p = fld.p
    if p ** (dim * dim) > budget:
        raise BudgetExceededError(
            f"enumerating GL_{dim}(GF({p})) scans {p ** (dim * dim)} matrices"
        )
    out = []
    for code in range(p ** (dim * dim)):
        digits = []
        c = code
        for _ in range(dim * dim):
            digits.append(c % p)
            c //= p
        digits.reverse()
        mat = Matrix(fld, [digits[i * dim : (i + 1) * dim] for i in range(dim)], dim)
        if is_invertible(mat):
            out.append(mat)
    assert len(out) == gl_order(fld, dim)
    _GL_CACHE[key] = tuple(out)
    return _GL_CACHE[key]


def enumerate_pgl(
    fld: PrimeField, dim: int, budget: int = DEFAULT_BUDGET
) -> tuple[Matrix, ...]:
    """One representative per scalar class of GL_dim: first nonzero entry 1."""
    key = (fld.p, dim)
    if key in _PGL_CACHE:
        return _PGL_CACHE[key]
    out = []
    for mat in enumerate_gl(fld, dim, budget):
        lead = next(
            (x for row in mat.rows for x in row if x), None
        )
        if lead == 1 or lead is None:
            out.append(mat)
    expected = gl_order(fld, dim) // (fld.p - 1) if dim else 1
    assert len(out) == expected
    _PGL_CACHE[key] = tuple(out)
    return _PGL_CACHE[key]


def _stack(slices: list[Matrix], fld: PrimeField, m: int) -> Matrix:
    if not slices:
        return Matrix(fld, [[] for _ in range(m)], 0)
    return Matrix.hstack(slices)


def oracle_equivalent(
    a: SpatialMatrix, b: SpatialMatrix, budget: int = DEFAULT_BUDGET
) -> tuple[bool, TransformWitness | None]:
    """Decide equivalence by exhausting (S, T) pairs.

    For fixed column and slice transforms the row transform is forced:
    an invertible X with X C = B exists iff rref(C) == rref(B), and then
    X = E_B^{-1} E_C from the recorded row operations.  T ranges over
    scalar representatives only; the scalar is absorbed by X.  The first
    witness found (in enumeration order) is verified and returned.
    """
    a.fld.require_same(b.fld)
    if a.dims != b.dims:
        raise DimensionMismatchError(f"tensors sized {a.dims} vs {b.dims}")
    fld = a.fld
    m, n, q = a.dims
    p = fld.p
    cost = p ** (n * n) + p ** (q * q) + gl_order(fld, n) * (
        gl_order(fld, q) // (p - 1) if q else 1
    )
    if cost > budget:
        raise BudgetExceededError(f"oracle search would cost about {cost} steps")
    if _family_ranks(a) != _family_ranks(b):
        return False, None

    rb, eb, rank_b = rref(_stack(list(b.slices), fld, m))
    eb_inv = inverse(eb)
    for s in enumerate_gl(fld, n, budget):
        mids = [sl @ s for sl in a.slices]
        for t in enumerate_pgl(fld, q, budget):
            mixed = []
            for k2 in range(q):
                acc = Matrix.zero(fld, m, n)
                for k in range(q):
                    c = t.at(k, k2)
                    if c:
                        acc = acc + mids[k].scale(c)
                mixed.append(acc)
            cstack = _stack(mixed, fld, m)
            rc, ec, rank_c = rref(cstack)
            if rank_c != rank_b or rc != rb:
                continue
            r = (eb_inv @ ec).transpose()
            w = TransformWitness(r, s, t)
            if apply_transform(a, w) != b:
                raise WitnessError("oracle witness failed to verify")
            return True, w
    return False, None


# -- orbit enumeration ---------------------------------------------------------


def pack_tensor(a: SpatialMatrix) -> int:
    """Base-p integer key, digits in (k, i, j) order, first digit most
    significant."""
    p = a.fld.p
    key = 0
    for k in range(a.q):
        for i in range(a.m):
            for j in range(a.n):
                key = key * p + a.at(i, j, k)
    return key


def unpack_tensor(
    fld: PrimeField, dims: tuple[int, int, int], key: int
) -> SpatialMatrix:
    m, n, q = dims
    digits = []
    for _ in range(m * n * q):
        digits.append(key % fld.p)
        key //= fld.p
    digits.reverse()
    slices = []
    pos = 0
    for _ in range(q):
        rows = []
        for _ in range(m):
            rows.append(digits[pos : pos + n])
            pos += n
        slices.append(rows)
    return SpatialMatrix(fld, slices, m, n)


def _axis_generators(fld: PrimeField, dim: int) -> list[Matrix]:
    """A generating set of GL_dim: full cycle, a transvection, and a scalar
    stretch by the least primitive root."""
    if dim == 0:
        return []
    p = fld.p
    gens = []
    if dim >= 2:
        cyc = [[0] * dim for _ in range(dim)]
        for i in range(dim):
            cyc[i][(i + 1) % dim] = 1
        gens.append(Matrix(fld, cyc, dim))
        trans = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        trans[0][1] = 1
        gens.append(Matrix(fld, trans, dim))
    if p > 2:
        diag = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        diag[0][0] = fld.generator()
        gens.append(Matrix(fld, diag, dim))
    return gens


@dataclass(frozen=True)
class Orbit:
    representative: SpatialMatrix
    size: int


class OrbitPartition:
    """Partition of every m x n x q tensor over GF(p) into orbits.

    Built by breadth-first closure under one-axis generator moves; the
    representative of each orbit is its least packed key, which is also the
    first key reached by the ascending outer scan.
    """

    def __init__(self, fld: PrimeField, dims: tuple[int, int, int], orbits, key_map):
        self.fld = fld
        self.dims = dims
        self.orbits: tuple[Orbit, ...] = tuple(orbits)
        self._key_map = key_map

    def orbit_index(self, a: SpatialMatrix) -> int:
        self.fld.require_same(a.fld)
        if a.dims != self.dims:
            raise DimensionMismatchError(f"partition is for {self.dims}, got {a.dims}")
        return self._key_map[pack_tensor(a)]

    def same_orbit(self, a: SpatialMatrix, b: SpatialMatrix) -> bool:
        return self.orbit_index(a) == self.orbit_index(b)


def orbit_partition(
    fld: PrimeField, dims: tuple[int, int, int], budget: int = DEFAULT_BUDGET
) -> OrbitPartition:
    m, n, q = dims
    p = fld.p
    total = p ** (m * n * q)
    if total > budget:
        raise BudgetExceededError(f"orbit scan would visit {total} tensors")

    moves = []  # (axis, generator matrix)
    for axis, dim in enumerate(dims):
        for g in _axis_generators(fld, dim):
            moves.append((axis, g))

    def step(cells: list[list[list[int]]], axis: int, g: Matrix) -> list:
        # cells indexed [k][i][j]
        if axis == 0:
            return [
                [
                    [
                        sum(cells[k][i][j] * g.at(i, i2) for i in range(m)) % p
                        for j in range(n)
                    ]
                    for i2 in range(m)
                ]
                for k in range(q)
            ]
        if axis == 1:
            return [
                [
                    [
                        sum(cells[k][i][j] * g.at(j, j2) for j in range(n)) % p
                        for j2 in range(n)
                    ]
                    for i in range(m)
                ]
                for k in range(q)
            ]
        return [
            [
                [
                    sum(cells[k][i][j] * g.at(k, k2) for k in range(q)) % p
                    for j in range(n)
                ]
                for i in range(m)
            ]
            for k2 in range(q)
        ]

    def pack_cells(cells) -> int:
        key = 0
        for k in range(q):
            for i in range(m):
                for j in range(n):
                    key = key * p + cells[k][i][j]
        return key

    def unpack_cells(key: int):
        digits = []
        for _ in range(m * n * q):
            digits.append(key % p)
            key //= p
        digits.reverse()
        it = iter(digits)
        return [[[next(it) for _ in range(n)] for _ in range(m)] for _ in range(q)]

    seen = bytearray(total)
    key_map: dict[int, int] = {}
    orbits: list[Orbit] = []
    for start in range(total):
        if seen[start]:
            continue
        idx = len(orbits)
        frontier = [start]
        seen[start] = 1
        key_map[start] = idx
        size = 0
        while frontier:
            key = frontier.pop()
            size += 1
            cells = unpack_cells(key)
            for axis, g in moves:
                nk = pack_cells(step(cells, axis, g))
                if not seen[nk]:
                    seen[nk] = 1
                    key_map[nk] = idx
                    frontier.append(nk)
        orbits.append(Orbit(unpack_tensor(fld, dims, start), size))
    assert sum(o.size for o in orbits) == total
    return OrbitPartition(fld, dims, orbits, key_map)
