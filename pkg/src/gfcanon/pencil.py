"""Canonical forms of matrix pencils (A1, A2) over GF(p).

kronecker_form reduces a pencil to the direct sum of

  * right-singular blocks (F_r, G_r), (r-1) x r,
  * left-singular blocks (F_s^T, G_s^T), s x (s-1),
  * nilpotent blocks (J_l(0), I_l) for the degenerate directions, and
  * companion blocks (I_l, Phi_chi) for the monic prime-power divisors chi,

listed in exactly that order with sizes ascending and divisors in the
canonical polynomial order.  frobenius_form is the single-matrix analogue:
the primary rational canonical form under similarity.

Every transform is returned as an explicit invertible witness and the
reduction re-checks itself against the synthesized block matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, SingularMatrixError
from .field import PrimeField
from .linalg import (
    Matrix,
    SpanTracker,
    char_poly,
    companion,
    complete_basis_cols,
    inverse,
    is_invertible,
    kernel_basis,
    poly_at_matrix,
    rref,
    solve_right,
)
from .poly import Poly, factor_prime_powers


# -- block definitions --------------------------------------------------------


@dataclass(frozen=True)
class PencilBlock:
    """One canonical direct summand.

    kind "right"/"left"/"inf" carry an integer parameter (the minimal index
    r or s, or the nilpotency size l); kind "finite" carries a monic
    prime-power divisor instead.
    """

    kind: str
    fld: PrimeField
    index: int = 0
    divisor: Poly | None = None

    def pair(self) -> tuple[Matrix, Matrix]:
        f = self.fld
        if self.kind == "right":
            r = self.index
            b1 = [[1 if j == i else 0 for j in range(r)] for i in range(r - 1)]
            b2 = [[1 if j == i + 1 else 0 for j in range(r)] for i in range(r - 1)]
            return Matrix(f, b1, r), Matrix(f, b2, r)
        if self.kind == "left":
            s = self.index
            b1 = [[1 if j == i else 0 for j in range(s - 1)] for i in range(s)]
            b2 = [[1 if j == i - 1 else 0 for j in range(s - 1)] for i in range(s)]
            return Matrix(f, b1, s - 1), Matrix(f, b2, s - 1)
        if self.kind == "inf":
            l = self.index
            j = [[1 if i == k + 1 else 0 for k in range(l)] for i in range(l)]
            return Matrix(f, j, l), Matrix.identity(f, l)
        if self.kind == "finite":
            return Matrix.identity(f, self.divisor.degree), companion(self.divisor)
        raise ValueError(f"unknown block kind {self.kind!r}")

    @property
    def shape(self) -> tuple[int, int]:
        if self.kind == "right":
            return (self.index - 1, self.index)
        if self.kind == "left":
            return (self.index, self.index - 1)
        if self.kind == "inf":
            return (self.index, self.index)
        return (self.divisor.degree, self.divisor.degree)


@dataclass(frozen=True)
class KroneckerForm:
    fld: PrimeField
    right: tuple[int, ...]
    left: tuple[int, ...]
    inf: tuple[int, ...]
    finite: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "right", tuple(sorted(self.right)))
        object.__setattr__(self, "left", tuple(sorted(self.left)))
        object.__setattr__(self, "inf", tuple(sorted(self.inf)))
        object.__setattr__(
            self, "finite", tuple(sorted(self.finite, key=lambda q: q.sort_key()))
        )

    def blocks(self) -> list[PencilBlock]:
        out = [PencilBlock("right", self.fld, r) for r in self.right]
        out += [PencilBlock("left", self.fld, s) for s in self.left]
        out += [PencilBlock("inf", self.fld, l) for l in self.inf]
        out += [PencilBlock("finite", self.fld, divisor=q) for q in self.finite]
        return out

    def matrices(self) -> tuple[Matrix, Matrix]:
        pairs = [b.pair() for b in self.blocks()]
        b1 = Matrix.block_diag(self.fld, [p[0] for p in pairs])
        b2 = Matrix.block_diag(self.fld, [p[1] for p in pairs])
        return b1, b2

    @property
    def shape(self) -> tuple[int, int]:
        m = sum(r - 1 for r in self.right) + sum(self.left) + sum(self.inf)
        n = sum(self.right) + sum(s - 1 for s in self.left) + sum(self.inf)
        d = sum(q.degree for q in self.finite)
        return (m + d, n + d)

    def to_dict(self) -> dict:
        return {
            "p": self.fld.p,
            "right": list(self.right),
            "left": list(self.left),
            "inf": list(self.inf),
            "finite": [list(q.coeffs) for q in self.finite],
        }

    @staticmethod
    def from_dict(d: dict) -> "KroneckerForm":
        fld = PrimeField(d["p"])
        return KroneckerForm(
            fld,
            tuple(d.get("right", ())),
            tuple(d.get("left", ())),
            tuple(d.get("inf", ())),
            tuple(Poly(fld, cs) for cs in d.get("finite", ())),
        )


@dataclass(frozen=True)
class PairWitness:
    """Invertible (R, S) acting on a pencil by A_k -> R^T @ A_k @ S."""

    r: Matrix
    s: Matrix

    def __post_init__(self):
        if not is_invertible(self.r) or not is_invertible(self.s):
            raise SingularMatrixError("pencil witness factors must be invertible")
        self.r.field.require_same(self.s.field)

    def apply(self, a1: Matrix, a2: Matrix) -> tuple[Matrix, Matrix]:
        rt = self.r.transpose()
        return rt @ a1 @ self.s, rt @ a2 @ self.s

    def compose(self, other: "PairWitness") -> "PairWitness":
        return PairWitness(self.r @ other.r, self.s @ other.s)

    def inverse(self) -> "PairWitness":
        return PairWitness(inverse(self.r), inverse(self.s))


# -- frobenius (similarity) form ----------------------------------------------


def frobenius_form(mat: Matrix) -> tuple[list[Poly], Matrix]:
    """Elementary divisors and a change of basis into companion blocks.

    Returns (divisors, P) with P invertible, mat @ P == P @ D where D is the
    direct sum of companion(divisors[i]); divisors are monic prime powers in
    canonical order and their product is the characteristic polynomial.
    """
    if mat.m != mat.n:
        raise DimensionMismatchError("similarity form needs a square matrix")
    fld = mat.field
    n = mat.n
    if n == 0:
        return [], Matrix.identity(fld, 0)

    chi = char_poly(mat)
    heads: list[tuple[Poly, list[Matrix]]] = []  # (divisor, krylov columns)
    for pf in factor_prime_powers(chi):
        pi, mult = pf.base, pf.exp
        d = pi.degree
        b = poly_at_matrix(pi, mat)
        # kernel filtration of the primary component
        powers = [Matrix.identity(fld, n)]
        kernels = [kernel_basis(powers[0])]  # ker I, the zero space
        while kernels[-1].n < mult * d:
            powers.append(powers[-1] @ b)
            kernels.append(kernel_basis(powers[-1]))
        top = len(kernels) - 1
        active: list[tuple[int, list[int]]] = []  # (level introduced, vector)
        for j in range(top, 0, -1):
            tracker = SpanTracker(fld, n)
            for c in range(kernels[j - 1].n):
                tracker.add(kernels[j - 1].col(c))
            base_dim = tracker.dim
            for _, w in active:
                assert not tracker.contains(w), "mapped-down chain heads collide"
                v = list(w)
                for _ in range(d):
                    tracker.add(v)
                    v = list((mat @ Matrix.from_cols(fld, [v], n)).col(0))
                assert tracker.dim == base_dim + d
                base_dim = tracker.dim
            for c in range(kernels[j].n):
                cand = list(kernels[j].col(c))
                if tracker.contains(cand):
                    continue
                v = list(cand)
                for _ in range(d):
                    tracker.add(v)
                    v = list((mat @ Matrix.from_cols(fld, [v], n)).col(0))
                assert tracker.dim == base_dim + d
                base_dim = tracker.dim
                active.append((j, cand))
                krylov = []
                u = Matrix.from_cols(fld, [cand], n)
                for _ in range(j * d):
                    krylov.append(u)
                    u = mat @ u
                heads.append((pi**j, krylov))
            # push every chain one level down for the next pass
            active = [(lv, list((b @ Matrix.from_cols(fld, [w], n)).col(0))) for lv, w in active]

    heads.sort(key=lambda h: h[0].sort_key())
    divisors = [h[0] for h in heads]
    cols = [k.col(0) for h in heads for k in h[1]]
    p = Matrix.from_cols(fld, cols, n)
    d = Matrix.block_diag(fld, [companion(q) for q in divisors])
    if not is_invertible(p):
        raise AssertionError("chain basis failed to span")
    assert mat @ p == p @ d
    return divisors, p


# -- kronecker form ------------------------------------------------------------


def _poly_det(a1: Matrix, a2: Matrix) -> Poly:
    """det(A1 + x*A2), fraction-free (Bareiss) over GF(p)[x]."""
    fld = a1.field
    n = a1.n
    a = [
        [Poly(fld, (a1.at(i, j), a2.at(i, j))) for j in range(n)]
        for i in range(n)
    ]
    if n == 0:
        return Poly.one(fld)
    sign = 1
    prev = Poly.one(fld)
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            return Poly.zero(fld)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, rem = divmod(num, prev)
                assert rem.is_zero()  # Sylvester identity: division is exact
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _minimal_right_solution(b1: Matrix, b2: Matrix):
    """Least d admitting u(x) = u_0 + ... + u_d x^d with (B1 + x B2) u(x) = 0.

    Returns (d, [u_0..u_d]) or None when the pencil has full column rank
    over the rational function field.  At the minimal d every kernel vector
    has u_0 != 0, u_d != 0 and independent coefficients.
    """
    fld = b1.field
    m, n = b1.shape
    for d in range(n):
        rows = []
        for j in range(d + 2):
            block = [[0] * (n * (d + 1)) for _ in range(m)]
            for i in range(m):
                if j <= d:
                    block[i][j * n : (j + 1) * n] = b1.rows[i]
                if 1 <= j:
                    seg = list(b2.rows[i])
                    lo = (j - 1) * n
                    for t in range(n):
                        block[i][lo + t] = (block[i][lo + t] + seg[t]) % fld.p
            rows.extend(block)
        ker = kernel_basis(Matrix(fld, rows, n * (d + 1)))
        if ker.n:
            v = ker.col(0)
            us = [list(v[j * n : (j + 1) * n]) for j in range(d + 1)]
            assert any(us[0]) and any(us[d])
            tracker = SpanTracker(fld, n)
            for u in us:
                assert tracker.add(u), "minimal solution has dependent coefficients"
            return d, us
    return None


def _right_reduction(b1: Matrix, b2: Matrix, eps: int, us: list[list[int]]):
    """Local (P, Q) splitting off one right-singular block of index eps."""
    fld = b1.field
    m, n = b1.shape
    q_cols = []
    for j in range(eps + 1):
        sgn = 1 if j % 2 == 0 else fld.p - 1
        q_cols.append([(sgn * x) % fld.p for x in us[eps - j]])
    q0 = complete_basis_cols(fld, q_cols, n)
    w_cols = [
        (b1 @ Matrix.from_cols(fld, [q_cols[j]], m=n)).col(0) for j in range(eps)
    ]
    w = complete_basis_cols(fld, w_cols, m)
    p0 = inverse(w)
    c1 = p0 @ b1 @ q0
    c2 = p0 @ b2 @ q0
    blk = PencilBlock("right", fld, eps + 1)
    f1, f2 = blk.pair()
    assert c1.submatrix(0, eps, 0, eps + 1) == f1
    assert c2.submatrix(0, eps, 0, eps + 1) == f2
    assert c1.submatrix(eps, m, 0, eps + 1).is_zero()
    assert c2.submatrix(eps, m, 0, eps + 1).is_zero()

    # kill the coupling blocks: F Z + Y D1 = -C1, G Z + Y D2 = -C2
    nc = n - eps - 1
    mr = m - eps
    top1 = c1.submatrix(0, eps, eps + 1, n)
    top2 = c2.submatrix(0, eps, eps + 1, n)
    d1 = c1.submatrix(eps, m, eps + 1, n)
    d2 = c2.submatrix(eps, m, eps + 1, n)
    nz = (eps + 1) * nc
    ny = eps * mr
    sys_rows = []
    rhs = []
    for fmat, dmat, cmat in ((f1, d1, top1), (f2, d2, top2)):
        for i in range(eps):
            for j in range(nc):
                row = [0] * (nz + ny)
                for k in range(eps + 1):
                    if fmat.at(i, k):
                        row[k * nc + j] = fmat.at(i, k)
                for t in range(mr):
                    if dmat.at(t, j):
                        row[nz + i * mr + t] = dmat.at(t, j)
                sys_rows.append(row)
                rhs.append([-cmat.at(i, j) % fld.p])
    sol = solve_right(
        Matrix(fld, sys_rows, nz + ny), Matrix(fld, rhs, 1)
    )
    assert sol is not None, "coupling solve must succeed at the minimal index"
    flat = sol.col(0)
    z = Matrix(fld, [[flat[k * nc + j] for j in range(nc)] for k in range(eps + 1)], nc)
    y = Matrix(fld, [[flat[nz + i * mr + t] for t in range(mr)] for i in range(eps)], mr)
    p1 = Matrix.vstack(
        [
            Matrix.hstack([Matrix.identity(fld, eps), y]),
            Matrix.hstack([Matrix.zero(fld, mr, eps), Matrix.identity(fld, mr)]),
        ]
    ) if eps else Matrix.identity(fld, m)
    q1 = Matrix.vstack(
        [
            Matrix.hstack([Matrix.identity(fld, eps + 1), z]),
            Matrix.hstack([Matrix.zero(fld, nc, eps + 1), Matrix.identity(fld, nc)]),
        ]
    ) if nc else Matrix.identity(fld, n)
    return p1 @ p0, q0 @ q1


def _chain_limit(e_in: Matrix, e_im: Matrix, start: Matrix) -> Matrix:
    """Stable limit of V -> {v : e_in v in e_im V}, seeded with start.

    Basis columns come from the row-reduced span of the projected kernel of
    [e_in | -e_im B_V], so the result is canonical for a given input.
    """
    fld = e_in.field
    r = e_in.n
    cur = start
    while True:
        ker = kernel_basis(Matrix.hstack([e_in, -(e_im @ cur)]))
        vparts = [list(ker.col(c)[:r]) for c in range(ker.n)]
        reduced, _, rk = rref(Matrix(fld, vparts, r))
        nxt = Matrix(fld, reduced.rows[:rk], r).transpose()
        if nxt.n == cur.n:
            return nxt
        cur = nxt


def _regular_reduction(e1: Matrix, e2: Matrix):
    """Split a regular pencil into nilpotent and companion parts.

    Returns (P, Q, inf_sizes, finite_divisors) with P (A) Q in canonical
    block form.
    """
    fld = e1.field
    r = e1.n
    if r == 0:
        i0 = Matrix.identity(fld, 0)
        return i0, i0, [], []
    v_inf = _chain_limit(e1, e2, Matrix.zero(fld, r, 0))
    v_fin = _chain_limit(e2, e1, Matrix.identity(fld, r))
    assert v_inf.n + v_fin.n == r, "degenerate/companion split must fill the space"
    q_reg = Matrix.hstack([v_inf, v_fin])
    e_mix = Matrix.hstack([e2 @ v_inf, e1 @ v_fin])
    p_reg = inverse(e_mix)
    t1 = p_reg @ e1 @ q_reg
    t2 = p_reg @ e2 @ q_reg
    l = v_inf.n
    n_til = t1.submatrix(0, l, 0, l)
    m_fin = t2.submatrix(l, r, l, r)
    assert t1 == Matrix.block_diag(fld, [n_til, Matrix.identity(fld, r - l)])
    assert t2 == Matrix.block_diag(fld, [Matrix.identity(fld, l), m_fin])

    div_inf, p_n = frobenius_form(n_til)
    for q in div_inf:
        assert q.coeffs[:-1] == (0,) * q.degree, "degenerate part must be nilpotent"
    div_fin, p_m = frobenius_form(m_fin)
    p2 = Matrix.block_diag(fld, [inverse(p_n), inverse(p_m)])
    q2 = Matrix.block_diag(fld, [p_n, p_m])
    return p2 @ p_reg, q_reg @ q2, [q.degree for q in div_inf], div_fin


def kronecker_form(a1: Matrix, a2: Matrix) -> tuple[KroneckerForm, PairWitness]:
    """Canonical form of the pencil (a1, a2) plus the realizing witness.

    The witness satisfies R^T @ a_k @ S == B_k where (B1, B2) are the
    canonical block matrices; this is re-verified before returning.
    """
    a1.field.require_same(a2.field)
    if a1.shape != a2.shape:
        raise DimensionMismatchError(f"pencil slices {a1.shape} vs {a2.shape}")
    fld = a1.field
    m, n = a1.shape
    p_tot = Matrix.identity(fld, m)
    q_tot = Matrix.identity(fld, n)
    b1, b2 = a1, a2
    row0 = col0 = 0
    right: list[int] = []
    left: list[int] = []

    def embed_apply(p_loc: Matrix, q_loc: Matrix):
        nonlocal p_tot, q_tot, b1, b2
        p_full = Matrix.block_diag(fld, [Matrix.identity(fld, row0), p_loc])
        q_full = Matrix.block_diag(fld, [Matrix.identity(fld, col0), q_loc])
        p_tot = p_full @ p_tot
        q_tot = q_tot @ q_full
        b1 = p_full @ b1 @ q_full
        b2 = p_full @ b2 @ q_full

    regular_already = m == n and not _poly_det(a1, a2).is_zero()

    if not regular_already:
        while n - col0 > 0:
            s1 = b1.submatrix(row0, m, col0, n)
            s2 = b2.submatrix(row0, m, col0, n)
            found = _minimal_right_solution(s1, s2)
            if found is None:
                break
            eps, us = found
            p_loc, q_loc = _right_reduction(s1, s2, eps, us)
            embed_apply(p_loc, q_loc)
            right.append(eps + 1)
            row0 += eps
            col0 += eps + 1
        while m - row0 > n - col0:
            s1 = b1.submatrix(row0, m, col0, n)
            s2 = b2.submatrix(row0, m, col0, n)
            found = _minimal_right_solution(s1.transpose(), s2.transpose())
            assert found is not None, "row surplus forces a left-singular block"
            eps, us = found
            pt, qt = _right_reduction(s1.transpose(), s2.transpose(), eps, us)
            embed_apply(qt.transpose(), pt.transpose())
            left.append(eps + 1)
            row0 += eps + 1
            col0 += eps

    s1 = b1.submatrix(row0, m, col0, n)
    s2 = b2.submatrix(row0, m, col0, n)
    assert s1.m == s1.n
    p_loc, q_loc, inf_sizes, finite = _regular_reduction(s1, s2)
    embed_apply(p_loc, q_loc)

    assert right == sorted(right) and left == sorted(left)
    form = KroneckerForm(fld, tuple(right), tuple(left), tuple(inf_sizes), tuple(finite))
    c1, c2 = form.matrices()
    assert b1 == c1 and b2 == c2, "reduction must land exactly on the block form"
    witness = PairWitness(p_tot.transpose(), q_tot)
    return form, witness
