"""m x n x q spatial matrices over GF(p) and their equivalence machinery.

The group GL_m x GL_n x GL_q acts by

    b[i'][j'][k'] = sum_{i,j,k} a[i][j][k] * r[i][i'] * s[j][j'] * t[k][k']

and a TransformWitness stores the acting triple (R, S, T).  For two-slice
tensors the orbit is decided exactly: reduce the slice pencil to its block
form, clear the degenerate blocks with a slice mix (possible over any field
large enough, and detected honestly when it is not), then minimize the
finite divisor tuple over the full fractional-linear orbit.  The result is
a CanonicalSum label: equal labels if and only if equivalent tensors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    FieldTooLargeForSearchError,
    FieldTooSmallError,
    InadmissibleTransformError,
    NotRegularError,
    ParseError,
    SingularMatrixError,
    UnsupportedShapeError,
    WitnessError,
    WrongSliceCountError,
)
from .field import PrimeField
from .linalg import Matrix, inverse, is_invertible, rref
from .pencil import KroneckerForm, PencilBlock, frobenius_form, kronecker_form
from .poly import Mobius2x2, Poly, mobius_transform


class SpatialMatrix:
    """Immutable m x n x q array over GF(p), stored as q slices of m x n."""

    __slots__ = ("fld", "m", "n", "q", "slices")

    def __init__(self, fld: PrimeField, slices, m: int | None = None, n: int | None = None):
        sl = tuple(
            s if isinstance(s, Matrix) else Matrix(fld, s, n) for s in slices
        )
        for s in sl:
            fld.require_same(s.field)
        if sl:
            m, n = sl[0].shape
            if any(s.shape != (m, n) for s in sl):
                raise DimensionMismatchError("slices must share one shape")
        else:
            m = m or 0
            n = n or 0
        self.fld = fld
        self.m = m
        self.n = n
        self.q = len(sl)
        self.slices = sl

    @staticmethod
    def zero(fld: PrimeField, m: int, n: int, q: int) -> "SpatialMatrix":
        return SpatialMatrix(fld, [Matrix.zero(fld, m, n) for _ in range(q)], m, n)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.q)

    def at(self, i: int, j: int, k: int) -> int:
        return self.slices[k].at(i, j)

    def to_dict(self) -> dict:
        return {
            "p": self.fld.p,
            "dims": [self.m, self.n, self.q],
            "slices": [[list(row) for row in s.rows] for s in self.slices],
        }

    @staticmethod
    def from_dict(d: dict) -> "SpatialMatrix":
        try:
            fld = PrimeField(d["p"])
            m, n, q = (int(x) for x in d["dims"])
            raw = d["slices"]
            if len(raw) != q:
                raise ParseError(f"expected {q} slices, got {len(raw)}")
            slices = []
            for s in raw:
                if len(s) != m or any(len(row) != n for row in s):
                    raise ParseError("slice shape disagrees with dims")
                slices.append(Matrix(fld, s, n))
            return SpatialMatrix(fld, slices, m, n)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed spatial matrix: {exc}") from exc

    def __eq__(self, other):
        if not isinstance(other, SpatialMatrix):
            return NotImplemented
        return (
            self.fld.p == other.fld.p
            and self.dims == other.dims
            and self.slices == other.slices
        )

    def __hash__(self):
        return hash((self.fld.p, self.dims, self.slices))

    def __repr__(self):
        return f"SpatialMatrix(GF({self.fld.p}), {self.m}x{self.n}x{self.q})"


@dataclass(frozen=True)
class TransformWitness:
    """An element (R, S, T) of GL_m x GL_n x GL_q."""

    r: Matrix
    s: Matrix
    t: Matrix

    def __post_init__(self):
        self.r.field.require_same(self.s.field)
        self.r.field.require_same(self.t.field)
        for mat in (self.r, self.s, self.t):
            if not is_invertible(mat):
                raise SingularMatrixError("witness factors must be invertible")

    @staticmethod
    def identity(fld: PrimeField, m: int, n: int, q: int) -> "TransformWitness":
        return TransformWitness(
            Matrix.identity(fld, m), Matrix.identity(fld, n), Matrix.identity(fld, q)
        )

    def compose(self, other: "TransformWitness") -> "TransformWitness":
        """Witness of 'apply self, then other'."""
        return TransformWitness(
            self.r @ other.r, self.s @ other.s, self.t @ other.t
        )

    def inverse(self) -> "TransformWitness":
        return TransformWitness(inverse(self.r), inverse(self.s), inverse(self.t))

    def to_dict(self) -> dict:
        return {
            "p": self.r.field.p,
            "R": [list(row) for row in self.r.rows],
            "S": [list(row) for row in self.s.rows],
            "T": [list(row) for row in self.t.rows],
        }

    @staticmethod
    def from_dict(d: dict) -> "TransformWitness":
        try:
            fld = PrimeField(d["p"])
            return TransformWitness(
                Matrix(fld, d["R"]), Matrix(fld, d["S"]), Matrix(fld, d["T"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed witness: {exc}") from exc


def apply_transform(a: SpatialMatrix, w: TransformWitness) -> SpatialMatrix:
    """Reference contraction, written out literally."""
    a.fld.require_same(w.r.field)
    if (w.r.m, w.s.m, w.t.m) != a.dims:
        raise DimensionMismatchError(
            f"witness sized {(w.r.m, w.s.m, w.t.m)} against tensor {a.dims}"
        )
    p = a.fld.p
    m, n, q = a.dims
    out = []
    for k2 in range(q):
        rows = []
        for i2 in range(m):
            row = []
            for j2 in range(n):
                acc = 0
                for k in range(q):
                    tkk = w.t.at(k, k2)
                    if not tkk:
                        continue
                    for i in range(m):
                        rii = w.r.at(i, i2)
                        if not rii:
                            continue
                        for j in range(n):
                            acc += a.slices[k].at(i, j) * rii * w.s.at(j, j2) * tkk
                row.append(acc % p)
            rows.append(row)
        out.append(Matrix(a.fld, rows, n))
    return SpatialMatrix(a.fld, out, m, n)


def two_step_realize(a: SpatialMatrix, w: TransformWitness) -> SpatialMatrix:
    """Same action, computed as matrix products then a slice mix.

    Kept separate from apply_transform on purpose: the two routes
    cross-check each other.
    """
    a.fld.require_same(w.r.field)
    if (w.r.m, w.s.m, w.t.m) != a.dims:
        raise DimensionMismatchError("witness does not fit tensor")
    rt = w.r.transpose()
    mid = [rt @ s @ w.s for s in a.slices]
    out = []
    for k2 in range(a.q):
        acc = Matrix.zero(a.fld, a.m, a.n)
        for k in range(a.q):
            c = w.t.at(k, k2)
            if c:
                acc = acc + mid[k].scale(c)
        out.append(acc)
    return SpatialMatrix(a.fld, out, a.m, a.n)


# -- canonical two-slice label --------------------------------------------------


@dataclass(frozen=True)
class CanonicalSum:
    """Block label of an m x n x 2 tensor: right and left minimal indices
    plus the finite divisor tuple (never any degenerate block)."""

    fld: PrimeField
    right: tuple[int, ...]
    left: tuple[int, ...]
    finite: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "right", tuple(sorted(self.right)))
        object.__setattr__(self, "left", tuple(sorted(self.left)))
        object.__setattr__(
            self, "finite", tuple(sorted(self.finite, key=lambda f: f.sort_key()))
        )

    def sort_key(self):
        return (
            self.right,
            self.left,
            tuple(f.sort_key() for f in self.finite),
        )

    def kronecker(self) -> KroneckerForm:
        return KroneckerForm(self.fld, self.right, self.left, (), self.finite)

    def tensor(self) -> SpatialMatrix:
        b1, b2 = self.kronecker().matrices()
        return SpatialMatrix(self.fld, [b1, b2], b1.m, b1.n)

    @property
    def dims(self) -> tuple[int, int, int]:
        m, n = self.kronecker().shape
        return (m, n, 2)

    def to_dict(self) -> dict:
        return {
            "p": self.fld.p,
            "right": list(self.right),
            "left": list(self.left),
            "finite": [list(f.coeffs) for f in self.finite],
        }

    @staticmethod
    def from_dict(d: dict) -> "CanonicalSum":
        try:
            fld = PrimeField(d["p"])
            return CanonicalSum(
                fld,
                tuple(int(x) for x in d.get("right", ())),
                tuple(int(x) for x in d.get("left", ())),
                tuple(Poly(fld, cs) for cs in d.get("finite", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed canonical sum: {exc}") from exc


def _t_matrix(t: Mobius2x2) -> Matrix:
    a, b, c, d = t.as_ints()
    return Matrix(t.field, [[a, c], [b, d]], 2)


def theorem1_form(a: SpatialMatrix) -> tuple[CanonicalSum, TransformWitness]:
    """Two-slice block form with no degenerate part, plus its witness.

    Reduces the slice pencil; if degenerate blocks appear, hunts for a slice
    mix that clears them: the swap handles divisor tuples with no power of
    x, otherwise a shear [[1,0],[b,1]] with chi(-1/b) != 0 for every finite
    divisor chi.  Those mixes cover every direction of the projective line,
    so when none works no invertible mix exists at all and FieldTooSmallError
    reports the blocking form.
    """
    if a.q != 2:
        raise WrongSliceCountError(f"needs exactly 2 slices, got {a.q}")
    fld = a.fld
    form0, pw0 = kronecker_form(a.slices[0], a.slices[1])
    w0 = TransformWitness(pw0.r, pw0.s, Matrix.identity(fld, 2))
    if not form0.inf:
        cs = CanonicalSum(fld, form0.right, form0.left, form0.finite)
        assert apply_transform(a, w0) == cs.tensor()
        return cs, w0

    if all(f.coeff(0) != 0 for f in form0.finite):
        # no divisor vanishes at 0, so swapping the slices keeps everything finite
        mix = Mobius2x2.from_ints(fld, 0, 1, 1, 0)
    else:
        mix = None
        for b in range(1, fld.p):
            pt = fld.neg(fld.inv(b))
            if all(f.evaluate(pt) != 0 for f in form0.finite):
                mix = Mobius2x2.from_ints(fld, 1, b, 0, 1)
                break
        if mix is None:
            raise FieldTooSmallError(
                f"no invertible slice mix over GF({fld.p}) clears the degenerate blocks",
                blocks=form0,
            )

    c1, c2 = form0.matrices()
    ai, bi, ci, di = mix.as_ints()
    m1 = c1.scale(ai) + c2.scale(bi)
    m2 = c1.scale(ci) + c2.scale(di)
    form1, pw1 = kronecker_form(m1, m2)
    assert not form1.inf, "chosen mix must clear every degenerate block"
    assert form1.right == form0.right and form1.left == form0.left
    cs = CanonicalSum(fld, form1.right, form1.left, form1.finite)
    w = w0.compose(
        TransformWitness(
            Matrix.identity(fld, a.m), Matrix.identity(fld, a.n), _t_matrix(mix)
        )
    ).compose(TransformWitness(pw1.r, pw1.s, Matrix.identity(fld, 2)))
    assert apply_transform(a, w) == cs.tensor()
    return cs, w


_PGL2_CACHE: dict[int, tuple[tuple[int, int, int, int], ...]] = {}


def pgl2_reps(fld: PrimeField) -> tuple[tuple[int, int, int, int], ...]:
    """The p^3 - p invertible slice mixes up to scalar, first nonzero
    coordinate normalized to 1, in lexicographic order."""
    if fld.p in _PGL2_CACHE:
        return _PGL2_CACHE[fld.p]
    p = fld.p
    reps = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 0:
                        continue
                    lead = next(x for x in (a, b, c, d) if x)
                    if lead != 1:
                        continue
                    reps.append((a, b, c, d))
    assert len(reps) == p**3 - p
    _PGL2_CACHE[fld.p] = tuple(reps)
    return _PGL2_CACHE[fld.p]


def mobius_orbit_minimize(cs: CanonicalSum) -> tuple[CanonicalSum, Mobius2x2]:
    """Lexicographically least label in the slice-mix orbit of cs.

    Scans every admissible mix; inadmissible ones (those driving a divisor
    degree down) are skipped.  Minimizing is idempotent because the
    admissible-mix relation between labels is symmetric and transitive.
    """
    fld = cs.fld
    ident = Mobius2x2.from_ints(fld, 1, 0, 0, 1)
    if not cs.finite:
        return cs, ident
    best = cs
    best_t = ident
    for quad in pgl2_reps(fld):
        t = Mobius2x2.from_ints(fld, *quad)
        try:
            imgs = tuple(mobius_transform(f, t) for f in cs.finite)
        except InadmissibleTransformError:
            continue
        cand = CanonicalSum(fld, cs.right, cs.left, imgs)
        if cand.sort_key() < best.sort_key():
            best = cand
            best_t = t
    return best, best_t


def _block_layout(cs: CanonicalSum) -> list[PencilBlock]:
    return cs.kronecker().blocks()


def _mix_restore_witness(
    cs: CanonicalSum, t: Mobius2x2, target: CanonicalSum
) -> TransformWitness:
    """Witness taking cs.tensor() through the mix t onto target.tensor().

    The mix respects the block split, so each block is restored to its own
    canonical shape independently, then the finite blocks are permuted into
    the target order.
    """
    fld = cs.fld
    ai, bi, ci, di = t.as_ints()
    r_blocks: list[Matrix] = []
    s_blocks: list[Matrix] = []
    new_finite: list[Poly] = []
    for blk in _block_layout(cs):
        b1, b2 = blk.pair()
        m1 = b1.scale(ai) + b2.scale(bi)
        m2 = b1.scale(ci) + b2.scale(di)
        if blk.kind in ("right", "left"):
            sub_form, sub_w = kronecker_form(m1, m2)
            expect = KroneckerForm(
                fld,
                (blk.index,) if blk.kind == "right" else (),
                (blk.index,) if blk.kind == "left" else (),
                (),
                (),
            )
            assert sub_form == expect, "mix must preserve a singular block"
            r_blocks.append(sub_w.r)
            s_blocks.append(sub_w.s)
        else:
            lead_inv = inverse(m1)  # admissible mix: a*I + b*Phi invertible
            mixed = lead_inv @ m2
            divisors, pbasis = frobenius_form(mixed)
            eta = mobius_transform(blk.divisor, t)
            assert divisors == [eta], "prime power must stay a single block"
            x = inverse(pbasis) @ lead_inv
            r_blocks.append(x.transpose())
            s_blocks.append(pbasis)
            new_finite.append(eta)
    r_fix = Matrix.block_diag(fld, r_blocks)
    s_fix = Matrix.block_diag(fld, s_blocks)
    w_fix = TransformWitness(r_fix, s_fix, Matrix.identity(fld, 2))

    # permute the finite blocks into canonical order
    order = sorted(range(len(new_finite)), key=lambda i: new_finite[i].sort_key())
    assert tuple(new_finite[i] for i in order) == target.finite
    assert cs.right == target.right and cs.left == target.left
    m_tot, n_tot = cs.kronecker().shape
    row_base = sum(r - 1 for r in cs.right) + sum(cs.left)
    col_base = sum(cs.right) + sum(s - 1 for s in cs.left)
    old_row = []
    old_col = []
    acc_r, acc_c = row_base, col_base
    for f in new_finite:
        old_row.append(acc_r)
        old_col.append(acc_c)
        acc_r += f.degree
        acc_c += f.degree
    perm_r = [[0] * m_tot for _ in range(m_tot)]
    perm_c = [[0] * n_tot for _ in range(n_tot)]
    for i in range(row_base):
        perm_r[i][i] = 1
    for j in range(col_base):
        perm_c[j][j] = 1
    new_r, new_c = row_base, col_base
    for old_idx in order:
        d = new_finite[old_idx].degree
        for tshift in range(d):
            perm_r[new_r + tshift][old_row[old_idx] + tshift] = 1
            perm_c[old_col[old_idx] + tshift][new_c + tshift] = 1
        new_r += d
        new_c += d
    w_perm = TransformWitness(
        Matrix(fld, perm_r, m_tot).transpose(),
        Matrix(fld, perm_c, n_tot),
        Matrix.identity(fld, 2),
    )
    return w_fix.compose(w_perm)


def canonical_label(a: SpatialMatrix) -> tuple[CanonicalSum, TransformWitness]:
    """Complete invariant for two-slice tensors, with a realizing witness.

    Two m x n x 2 tensors are equivalent exactly when their labels are
    equal, and apply_transform(a, witness) reproduces label.tensor().
    """
    cs0, w0 = theorem1_form(a)
    csm, t = mobius_orbit_minimize(cs0)
    if t.as_ints() == (1, 0, 0, 1):
        assert csm == cs0
        return cs0, w0
    w_mix = TransformWitness(
        Matrix.identity(a.fld, cs0.dims[0]),
        Matrix.identity(a.fld, cs0.dims[1]),
        _t_matrix(t),
    )
    w_fix = _mix_restore_witness(cs0, t, csm)
    w = w0.compose(w_mix).compose(w_fix)
    if apply_transform(a, w) != csm.tensor():
        raise WitnessError("canonicalization witness failed to verify")
    return csm, w


# -- regular part ----------------------------------------------------------------


def _family_ranks(a: SpatialMatrix) -> tuple[int, int, int]:
    """(row-stack, column-stack, slice-stack) ranks: the three numbers that
    must equal (m, n, q) for a regular tensor."""
    fld = a.fld
    m, n, q = a.dims
    row_stack = Matrix(
        fld,
        [[a.at(i, j, k) for j in range(n) for k in range(q)] for i in range(m)],
        n * q,
    )
    col_stack = Matrix(
        fld,
        [[a.at(i, j, k) for i in range(m) for k in range(q)] for j in range(n)],
        m * q,
    )
    slice_stack = Matrix(
        fld,
        [[a.at(i, j, k) for i in range(m) for j in range(n)] for k in range(q)],
        m * n,
    )
    return (rref(row_stack)[2], rref(col_stack)[2], rref(slice_stack)[2])


def is_regular(a: SpatialMatrix) -> bool:
    return _family_ranks(a) == a.dims


def regular_part(a: SpatialMatrix) -> tuple[SpatialMatrix, TransformWitness]:
    """Cut a tensor down to its regular corner.

    Three successive stack reductions (slice axis, then columns, then rows)
    move all content into a leading m' x n' x q' corner that is regular;
    the returned witness maps the input onto the zero-padded corner.
    """
    fld = a.fld
    m, n, q = a.dims

    slice_stack = Matrix(
        fld,
        [[a.at(i, j, k) for i in range(m) for j in range(n)] for k in range(q)],
        m * n,
    )
    _, e_t, q2 = rref(slice_stack)
    cur = [
        sum(
            (a.slices[k].scale(e_t.at(k2, k)) for k in range(q)),
            Matrix.zero(fld, m, n),
        )
        for k2 in range(q)
    ]

    col_stack = Matrix(
        fld,
        [[cur[k].at(i, j) for i in range(m) for k in range(q)] for j in range(n)],
        m * q,
    )
    _, e_s, n2 = rref(col_stack)
    s_mat = e_s.transpose()
    cur = [c @ s_mat for c in cur]

    row_stack = Matrix(
        fld,
        [[cur[k].at(i, j) for j in range(n) for k in range(q)] for i in range(m)],
        n * q,
    )
    _, e_r, m2 = rref(row_stack)
    cur = [e_r @ c for c in cur]

    corner = SpatialMatrix(
        fld, [cur[k].submatrix(0, m2, 0, n2) for k in range(q2)], m2, n2
    )
    w = TransformWitness(e_r.transpose(), s_mat, e_t.transpose())
    padded = SpatialMatrix(fld, cur, m, n)
    assert apply_transform(a, w) == padded
    for k in range(q2, q):
        assert cur[k].is_zero()
    for k in range(q2):
        assert cur[k].submatrix(m2, m, 0, n).is_zero()
        assert cur[k].submatrix(0, m2, n2, n).is_zero()
    assert is_regular(corner), "reduced corner must be regular"
    return corner, w


def _embed_witness(
    w: TransformWitness, m: int, n: int, q: int
) -> TransformWitness:
    """Extend a corner witness by the identity on the padding."""
    fld = w.r.field
    return TransformWitness(
        Matrix.block_diag(fld, [w.r, Matrix.identity(fld, m - w.r.m)]),
        Matrix.block_diag(fld, [w.s, Matrix.identity(fld, n - w.s.m)]),
        Matrix.block_diag(fld, [w.t, Matrix.identity(fld, q - w.t.m)]),
    )


# -- classification of small regular tensors ------------------------------------


@dataclass(frozen=True)
class RegularClass22:
    """A class of the regular catalog for n <= 2, q <= 2.

    kind is one of C1x1x1, C2x2x1, C2x1x2, C1x2x2, A, B, C3x2x2_s2,
    C3x2x2_s3, C4x2x2; families A and B carry the parameter v.
    """

    kind: str
    fld: PrimeField
    param: int | None = None

    def representative(self) -> SpatialMatrix:
        f = self.fld
        if self.kind == "C1x1x1":
            return SpatialMatrix(f, [[[1]]])
        if self.kind == "C2x2x1":
            return SpatialMatrix(f, [Matrix.identity(f, 2)])
        if self.kind == "C2x1x2":
            return SpatialMatrix(f, [[[1], [0]], [[0], [1]]])
        if self.kind == "C1x2x2":
            return SpatialMatrix(f, [[[1, 0]], [[0, 1]]])
        if self.kind == "A":
            return SpatialMatrix(
                f, [Matrix.identity(f, 2), Matrix(f, [[0, self.param], [1, 0]])]
            )
        if self.kind == "B":
            return SpatialMatrix(
                f, [Matrix.identity(f, 2), Matrix(f, [[0, self.param], [1, 1]])]
            )
        if self.kind == "C3x2x2_s2":
            return SpatialMatrix(
                f,
                [[[1, 0], [0, 1], [0, 0]], [[0, 0], [0, 0], [0, 1]]],
            )
        if self.kind == "C3x2x2_s3":
            return SpatialMatrix(
                f,
                [[[1, 0], [0, 1], [0, 0]], [[0, 0], [1, 0], [0, 1]]],
            )
        if self.kind == "C4x2x2":
            return SpatialMatrix(
                f,
                [
                    [[1, 0], [0, 1], [0, 0], [0, 0]],
                    [[0, 0], [0, 0], [1, 0], [0, 1]],
                ],
            )
        raise ValueError(f"unknown class kind {self.kind!r}")

    def to_dict(self) -> dict:
        d = {"label": self.kind, "p": self.fld.p}
        if self.param is not None:
            d["v"] = self.param
        return d


_CATALOG_CACHE: dict[int, list[RegularClass22]] = {}


def theorem2_catalog(fld: PrimeField) -> list[RegularClass22]:
    """All classes of regular m x n x q tensors with n <= 2, q <= 2.

    The two-parameter families are deduplicated by canonical label, keeping
    the least parameter; for odd characteristic every trace can be shifted
    away so only the A family survives, while over GF(2) the two B classes
    are genuinely separate.
    """
    if fld.p in _CATALOG_CACHE:
        return _CATALOG_CACHE[fld.p]
    out = [
        RegularClass22("C1x1x1", fld),
        RegularClass22("C2x2x1", fld),
        RegularClass22("C2x1x2", fld),
        RegularClass22("C1x2x2", fld),
    ]
    seen: set = set()
    for v in range(fld.p):
        cls = RegularClass22("A", fld, v)
        label, _ = canonical_label(cls.representative())
        if label not in seen:
            seen.add(label)
            out.append(cls)
    if fld.p == 2:
        for v in range(2):
            cls = RegularClass22("B", fld, v)
            label, _ = canonical_label(cls.representative())
            assert label not in seen, "B labels must not collide with A"
            seen.add(label)
            out.append(cls)
    out.append(RegularClass22("C3x2x2_s2", fld))
    out.append(RegularClass22("C3x2x2_s3", fld))
    out.append(RegularClass22("C4x2x2", fld))
    _CATALOG_CACHE[fld.p] = out
    return out


def classify_regular(a: SpatialMatrix) -> tuple[RegularClass22, TransformWitness]:
    """Match a regular tensor (n <= 2, q <= 2) against the catalog.

    Returns the class and a witness carrying the input onto the class
    representative.
    """
    fld = a.fld
    m, n, q = a.dims
    if m == 0 or n == 0 or q == 0:
        raise UnsupportedShapeError("empty tensors have no catalog class")
    if n > 2 or q > 2:
        raise UnsupportedShapeError(f"catalog covers n <= 2 and q <= 2, got {a.dims}")
    ranks = _family_ranks(a)
    if ranks != a.dims:
        raise NotRegularError(f"tensor is not regular: stack ranks {ranks}", ranks)

    if (m, n, q) == (1, 1, 1):
        cls = RegularClass22("C1x1x1", fld)
        w = TransformWitness(
            Matrix(fld, [[fld.inv(a.at(0, 0, 0))]]),
            Matrix.identity(fld, 1),
            Matrix.identity(fld, 1),
        )
        assert apply_transform(a, w) == cls.representative()
        return cls, w
    if q == 1:
        # regularity forces m == n == 2 with an invertible slice
        assert (m, n) == (2, 2)
        cls = RegularClass22("C2x2x1", fld)
        w = TransformWitness(
            Matrix.identity(fld, 2), inverse(a.slices[0]), Matrix.identity(fld, 1)
        )
        assert apply_transform(a, w) == cls.representative()
        return cls, w

    label, w_a = canonical_label(a)
    for cls in theorem2_catalog(fld):
        rep = cls.representative()
        if rep.dims != a.dims:
            continue
        rep_label, w_rep = canonical_label(rep)
        if rep_label == label:
            w = w_a.compose(w_rep.inverse())
            if apply_transform(a, w) != rep:
                raise WitnessError("classification witness failed to verify")
            return cls, w
    raise AssertionError("catalog must cover every regular tensor of these shapes")


# -- full equivalence decision ---------------------------------------------------


def equivalent(
    a: SpatialMatrix, b: SpatialMatrix
) -> tuple[bool, TransformWitness | None]:
    """Decide equivalence of two tensors of one shape, with witness.

    Reduces both to regular corners; unequal corner shapes end it.  A
    two-slice corner is compared by canonical label; smaller slice counts
    reduce to the identity corner directly.  On success the returned witness
    w satisfies apply_transform(a, w) == b, verified before returning.
    """
    a.fld.require_same(b.fld)
    if a.dims != b.dims:
        raise DimensionMismatchError(f"tensors sized {a.dims} vs {b.dims}")
    ca, wa = regular_part(a)
    cb, wb = regular_part(b)
    if ca.dims != cb.dims:
        return False, None
    q2 = ca.dims[2]
    if q2 > 2:
        raise UnsupportedShapeError(
            f"equivalence beyond two regular slices is unsupported (q' = {q2})"
        )

    if q2 == 0:
        wit_a, wit_b = wa, wb
    elif q2 == 1:
        # regular single-slice corner: square with invertible slice
        norm_a = TransformWitness(
            Matrix.identity(a.fld, ca.m), inverse(ca.slices[0]), Matrix.identity(a.fld, 1)
        )
        norm_b = TransformWitness(
            Matrix.identity(a.fld, cb.m), inverse(cb.slices[0]), Matrix.identity(a.fld, 1)
        )
        wit_a = wa.compose(_embed_witness(norm_a, *a.dims))
        wit_b = wb.compose(_embed_witness(norm_b, *b.dims))
    else:
        la, ka = canonical_label(ca)
        lb, kb = canonical_label(cb)
        if la != lb:
            return False, None
        wit_a = wa.compose(_embed_witness(ka, *a.dims))
        wit_b = wb.compose(_embed_witness(kb, *b.dims))

    w = wit_a.compose(wit_b.inverse())
    if apply_transform(a, w) != b:
        raise WitnessError("equivalence witness failed to verify")
    return True, w


def lemma2_equivalent(
    fld: PrimeField, u: int, v: int, u2: int, v2: int, search_bound: int = 13
) -> tuple[int, int, int, int] | None:
    """Are the companion-pair tensors with parameters (u, v) and (u2, v2)
    equivalent?  Searches the projective parameter quadruples directly and
    returns the first (a, b, c, d) realizing the move, else None.

    This is the explicit-formula route: it never touches the pencil
    machinery, so it can cross-check the canonical-label route.
    """
    if fld.p > search_bound:
        raise FieldTooLargeForSearchError(
            f"parameter search is exhaustive; GF({fld.p}) exceeds bound {search_bound}"
        )
    p = fld.p
    u, v, u2, v2 = u % p, v % p, u2 % p, v2 % p
    for a, b, c, d in pgl2_reps(fld):
        den = (a * a + u * a * b - v * b * b) % p
        if den == 0:
            continue
        inv_den = fld.inv(den)
        uu = ((2 * a * c + u * a * d + u * c * b - 2 * v * b * d) * inv_den) % p
        vv = ((-(c * c) - u * c * d + v * d * d) * inv_den) % p
        if uu == u2 and vv == v2:
            return (a, b, c, d)
    return None
