"""Exact dense linear algebra over GF(p).

Matrices are immutable (tuple-of-tuples of ints in [0, p)) with explicit
shape, so degenerate m x 0 / 0 x n shapes round-trip through every
operation; those show up routinely as empty block sums and empty kernels.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatchError,
    InadmissibleTransformError,
    NotMonicError,
    SingularMatrixError,
)
from .field import PrimeField
from .poly import Mobius2x2, Poly


class Matrix:
    __slots__ = ("field", "m", "n", "rows")

    def __init__(self, field: PrimeField, rows, n: int | None = None):
        p = field.p
        rs = tuple(tuple(int(x) % p for x in row) for row in rows)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise DimensionMismatchError("ragged rows")
            if n is not None and n != width:
                raise DimensionMismatchError("explicit width disagrees with rows")
            n = width
        elif n is None:
            n = 0
        self.field = field
        self.m = len(rs)
        self.n = n
        self.rows = rs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: PrimeField, m: int, n: int) -> "Matrix":
        return Matrix(field, [[0] * n for _ in range(m)], n)

    @staticmethod
    def identity(field: PrimeField, n: int) -> "Matrix":
        return Matrix(
            field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n
        )

    @staticmethod
    def from_cols(field: PrimeField, cols, m: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if cols:
            m = len(cols[0])
        elif m is None:
            m = 0
        return Matrix(field, [[c[i] for c in cols] for i in range(m)], len(cols))

    # -- shape / access ------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.m, self.n)

    def at(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(
            self.field, [r[c0:c1] for r in self.rows[r0:r1]], c1 - c0
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # -- arithmetic ---------------------------------------------------------

    def _same_field(self, other: "Matrix"):
        self.field.require_same(other.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"add {self.shape} vs {other.shape}")
        return Matrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.n,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"sub {self.shape} vs {other.shape}")
        return Matrix(
            self.field,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
            self.n,
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-x for x in r] for r in self.rows], self.n)

    def scale(self, c) -> "Matrix":
        c = int(c) % self.field.p
        return Matrix(self.field, [[c * x for x in r] for r in self.rows], self.n)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.n != other.m:
            raise DimensionMismatchError(f"matmul {self.shape} vs {other.shape}")
        p = self.field.p
        ot = list(zip(*other.rows)) if other.rows else [()] * other.n
        out = []
        for ra in self.rows:
            out.append(
                [sum(a * b for a, b in zip(ra, oc)) % p for oc in ot]
            )
        return Matrix(self.field, out, other.n)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)],
            self.m,
        )

    def pow(self, e: int) -> "Matrix":
        if self.m != self.n:
            raise DimensionMismatchError("matrix power needs a square matrix")
        result = Matrix.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # -- stacking ------------------------------------------------------------

    @staticmethod
    def hstack(blocks: list["Matrix"]) -> "Matrix":
        if not blocks:
            raise DimensionMismatchError("hstack needs at least one block")
        m = blocks[0].m
        field = blocks[0].field
        for b in blocks:
            field.require_same(b.field)
            if b.m != m:
                raise DimensionMismatchError("hstack row counts differ")
        n = sum(b.n for b in blocks)
        return Matrix(
            field,
            [sum((list(b.rows[i]) for b in blocks), []) for i in range(m)],
            n,
        )

    @staticmethod
    def vstack(blocks: list["Matrix"]) -> "Matrix":
        if not blocks:
            raise DimensionMismatchError("vstack needs at least one block")
        n = blocks[0].n
        field = blocks[0].field
        for b in blocks:
            field.require_same(b.field)
            if b.n != n:
                raise DimensionMismatchError("vstack column counts differ")
        rows = []
        for b in blocks:
            rows.extend(b.rows)
        return Matrix(field, rows, n)

    @staticmethod
    def block_diag(field: PrimeField, blocks: list["Matrix"]) -> "Matrix":
        m = sum(b.m for b in blocks)
        n = sum(b.n for b in blocks)
        out = [[0] * n for _ in range(m)]
        ri = ci = 0
        for b in blocks:
            field.require_same(b.field)
            for i in range(b.m):
                out[ri + i][ci : ci + b.n] = b.rows[i]
            ri += b.m
            ci += b.n
        return Matrix(field, out, n)

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field.p == other.field.p
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field.p, self.m, self.n, self.rows))

    def __repr__(self):
        return f"Matrix(GF({self.field.p}), {self.m}x{self.n}, {list(map(list, self.rows))})"


def rref(mat: Matrix) -> tuple[Matrix, Matrix, int]:
    """Reduced row echelon form.

    Returns (R, E, rank) with E invertible and E @ mat == R; R has unit
    pivots with zeros above and below, pivot columns strictly increasing,
    zero rows last.  E is the row-op record (starts as identity).
    """
    p = mat.field.p
    field = mat.field
    a = [list(r) for r in mat.rows]
    e = [[1 if i == j else 0 for j in range(mat.m)] for i in range(mat.m)]
    rank = 0
    for col in range(mat.n):
        piv = None
        for i in range(rank, mat.m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        e[rank], e[piv] = e[piv], e[rank]
        inv = field.inv(a[rank][col])
        if inv != 1:
            a[rank] = [(x * inv) % p for x in a[rank]]
            e[rank] = [(x * inv) % p for x in e[rank]]
        for i in range(mat.m):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
                e[i] = [(x - f * y) % p for x, y in zip(e[i], e[rank])]
        rank += 1
        if rank == mat.m:
            break
    return Matrix(field, a, mat.n), Matrix(field, e, mat.m), rank


def rank(mat: Matrix) -> int:
    return rref(mat)[2]


def inverse(mat: Matrix) -> Matrix:
    if mat.m != mat.n:
        raise DimensionMismatchError("only square matrices invert")
    r, e, rk = rref(mat)
    if rk != mat.n:
        raise SingularMatrixError(f"rank {rk} < {mat.n}")
    return e


def is_invertible(mat: Matrix) -> bool:
    return mat.m == mat.n and rref(mat)[2] == mat.n


def kernel_basis(mat: Matrix) -> Matrix:
    """Columns form a basis of the right kernel (n x k, k may be 0)."""
    r, _, rk = rref(mat)
    pivots = []
    j = 0
    for i in range(rk):
        while r.rows[i][j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    pivot_set = set(pivots)
    free = [j for j in range(mat.n) if j not in pivot_set]
    cols = []
    for f in free:
        v = [0] * mat.n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -r.rows[i][f] % mat.field.p
        cols.append(v)
    return Matrix.from_cols(mat.field, cols, mat.n)


def solve_right(a: Matrix, b: Matrix) -> Matrix | None:
    """One solution X of a @ X == b (free variables zeroed), or None."""
    a._same_field(b)
    if a.m != b.m:
        raise DimensionMismatchError("solve_right row counts differ")
    r, e, rk = rref(a)
    eb = e @ b
    for i in range(rk, a.m):
        if any(eb.rows[i]):
            return None
    x = [[0] * b.n for _ in range(a.n)]
    j = 0
    for i in range(rk):
        while r.rows[i][j] == 0:
            j += 1
        x[j] = list(eb.rows[i])
        j += 1
    return Matrix(a.field, x, b.n)


def char_poly(mat: Matrix) -> Poly:
    """Characteristic polynomial det(x*I - M), monic, exact.

    Reduces to upper Hessenberg form by similarity, then expands the
    leading principal characteristic polynomials by recurrence.
    """
    if mat.m != mat.n:
        raise DimensionMismatchError("characteristic polynomial needs a square matrix")
    field = mat.field
    p = field.p
    n = mat.n
    h = [list(r) for r in mat.rows]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i][j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for row in h:
                row[j + 1], row[piv] = row[piv], row[j + 1]
        inv = field.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                f = (h[i][j] * inv) % p
                h[i] = [(x - f * y) % p for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + f * row[i]) % p
    # p_i(x) = (x - h_ii) p_{i-1} - sum_k h_ki (prod subdiag) p_{k-1}
    polys = [Poly.one(field)]
    for i in range(1, n + 1):
        x_minus = Poly(field, (-h[i - 1][i - 1], 1))
        cur = x_minus * polys[i - 1]
        prod = 1
        for k in range(i - 1, 0, -1):
            prod = (prod * h[k][k - 1]) % p
            coef = (h[k - 1][i - 1] * prod) % p
            if coef:
                cur = cur - polys[k - 1].scale(coef)
        polys.append(cur)
    return polys[n]


def companion(chi: Poly) -> Matrix:
    """Companion matrix with ones on the subdiagonal and the negated low
    coefficients in the last column; char_poly(companion(chi)) == chi."""
    if not chi.is_monic():
        raise NotMonicError("companion matrix needs a monic polynomial")
    l = chi.degree
    field = chi.field
    out = [[0] * l for _ in range(l)]
    for i in range(l - 1):
        out[i + 1][i] = 1
    for i in range(l):
        out[i][l - 1] = -chi.coeff(i) % field.p
    return Matrix(field, out, l)


def poly_at_matrix(f: Poly, mat: Matrix) -> Matrix:
    """Evaluate f at a square matrix (Horner)."""
    if mat.m != mat.n:
        raise DimensionMismatchError("polynomial evaluation needs a square matrix")
    acc = Matrix.zero(mat.field, mat.n, mat.n)
    ident = Matrix.identity(mat.field, mat.n)
    for c in reversed(f.coeffs):
        acc = acc @ mat
        if c:
            acc = acc + ident.scale(c)
    return acc


class SpanTracker:
    """Incremental row space with O(n^2) membership tests.

    Stored rows keep distinct pivots and are mutually reduced, so a single
    left-to-right elimination pass decides membership.
    """

    def __init__(self, field: PrimeField, n: int):
        self.field = field
        self.n = n
        self.rows: dict[int, list[int]] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _residue(self, vec) -> list[int]:
        p = self.field.p
        v = [int(x) % p for x in vec]
        for piv in sorted(self.rows):
            c = v[piv]
            if c:
                row = self.rows[piv]
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self._residue(vec))

    def add(self, vec) -> bool:
        """Insert vec's direction; False if it was already in the span."""
        v = self._residue(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = self.field.inv(v[piv])
        if inv != 1:
            v = [(x * inv) % self.field.p for x in v]
        for q, row in self.rows.items():
            c = row[piv]
            if c:
                self.rows[q] = [(a - c * b) % self.field.p for a, b in zip(row, v)]
        self.rows[piv] = v
        return True


def complete_basis_cols(field: PrimeField, cols: list, dim: int) -> Matrix:
    """A dim x dim invertible matrix whose leading columns are the given
    independent vectors, padded greedily with unit vectors."""
    tracker = SpanTracker(field, dim)
    basis = []
    for c in cols:
        if not tracker.add(c):
            raise SingularMatrixError("completion given dependent columns")
        basis.append(list(c))
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        if tracker.add(e):
            basis.append(e)
    assert len(basis) == dim
    return Matrix.from_cols(field, basis, dim)


def mobius_charpoly_check(chi: Poly, t: Mobius2x2) -> Poly:
    """Independent route to the slice-mix image of chi.

    Builds the companion pair (I, Phi), mixes the slices with t, renormalizes
    the first slice, and reads off the characteristic polynomial of the
    second.  Must agree with the direct substitution for every admissible t.
    """
    chi.field.require_same(t.field)
    phi = companion(chi)
    field = chi.field
    ident = Matrix.identity(field, chi.degree)
    a, b, c, d = t.as_ints()
    first = ident.scale(a) + phi.scale(b)
    try:
        first_inv = inverse(first)
    except SingularMatrixError:
        raise InadmissibleTransformError(
            "slice mix sends this block off to a singular first slice"
        ) from None
    second = ident.scale(c) + phi.scale(d)
    return char_poly(second @ first_inv)
