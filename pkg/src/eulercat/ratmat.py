"""Exact rational dense matrices.

Everything here works over :class:`fractions.Fraction`, so results are exact
and no tolerance is ever involved.  Matrices are immutable; every operation
returns a new :class:`RatMatrix`.

The Moore-Penrose inverse is computed by the normal-equation style algorithm

    M+ = [r1* ... rk* 0] [M r1* ... M rk* s1 ... s(m-k)]^-1

where the r are a basis of Row(M) and the s a basis of Null(M*) (the
orthogonal complement of im(M)).  Only rational arithmetic appears, which is
why the pseudoinverse of an integer matrix is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

Scalar = Union[int, Fraction]


class RatMatError(ValueError):
    """Base class for shape errors in this module."""


class DimensionMismatch(RatMatError):
    pass


class NonSquareBlock(RatMatError):
    pass


class WidthMismatch(RatMatError):
    pass


class SingularMatrix(ArithmeticError):
    """Raised by :func:`inverse`; inside :func:`pinv` it signals a basis bug."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {x!r} as an exact rational entry")


@dataclass(frozen=True, eq=False)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        """Build from nested rows; ``cols`` is needed only for 0-row matrices."""
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        if cols is not None and cols != width:
            raise ValueError(f"expected {cols} columns, rows have {width}")
        return cls(len(rows), width, tuple(_frac(x) for r in rows for x in r))

    @classmethod
    def column(cls, values: Iterable) -> RatMatrix:
        vals = tuple(_frac(x) for x in values)
        return cls(len(vals), 1, vals)

    @classmethod
    def row_vector(cls, values: Iterable) -> RatMatrix:
        vals = tuple(_frac(x) for x in values)
        return cls(1, len(vals), vals)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> RatMatrix:
        return transpose(self)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for shape {self.shape}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return (self.row(i) for i in range(self.rows))

    def scalar(self) -> Fraction:
        """The single entry of a 1x1 matrix."""
        if self.shape != (1, 1):
            raise DimensionMismatch(f"not a 1x1 matrix: {self.shape}")
        return self.entries[0]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        return mat_mul(self, other)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + (-other)

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, k: Scalar) -> RatMatrix:
        if isinstance(k, RatMatrix):
            raise TypeError("use @ for matrix products")
        k = _frac(k)
        return RatMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


@dataclass(frozen=True)
class BasisSet:
    """An ordered, linearly independent list of vectors of one shape."""

    vectors: tuple[RatMatrix, ...]

    def __post_init__(self):
        vs = tuple(self.vectors)
        object.__setattr__(self, "vectors", vs)
        if not vs:
            return
        if any(v.shape != vs[0].shape for v in vs):
            raise ValueError("basis vectors must all have the same shape")
        flat = RatMatrix.from_rows([v.entries for v in vs])
        if rank(flat) != len(vs):
            raise ValueError("basis vectors are linearly dependent")

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[RatMatrix]:
        return iter(self.vectors)

    def __getitem__(self, i: int) -> RatMatrix:
        return self.vectors[i]


# -- basic constructors ------------------------------------------------------

def zeros(rows: int, cols: int) -> RatMatrix:
    return RatMatrix(rows, cols, (Fraction(0),) * (rows * cols))


def identity(n: int) -> RatMatrix:
    one, zero = Fraction(1), Fraction(0)
    return RatMatrix(n, n, tuple(one if i == j else zero
                                 for i in range(n) for j in range(n)))


def ones(m: int) -> RatMatrix:
    """The m x 1 all-ones column."""
    if m < 0:
        raise ValueError("ones() needs m >= 0")
    return RatMatrix(m, 1, (Fraction(1),) * m)


def permutation_matrix(perm: Sequence[int]) -> RatMatrix:
    """P with P[i, perm[i]] = 1, so (P @ M) has row i equal to row perm[i] of M."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation: {perm}")
    return RatMatrix.from_rows([[1 if j == perm[i] else 0 for j in range(n)]
                                for i in range(n)], cols=n)


# -- products and shapes -----------------------------------------------------

def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            out.append(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)))
    return RatMatrix(a.rows, b.cols, tuple(out))


def transpose(m: RatMatrix) -> RatMatrix:
    return RatMatrix(m.cols, m.rows,
                     tuple(m.entries[i * m.cols + j]
                           for j in range(m.cols) for i in range(m.rows)))


def hstack(blocks: Sequence[RatMatrix], rows: int | None = None) -> RatMatrix:
    if not blocks:
        return zeros(rows or 0, 0)
    h = blocks[0].rows
    if any(b.rows != h for b in blocks):
        raise DimensionMismatch("hstack needs equal heights")
    return RatMatrix.from_rows(
        [[x for b in blocks for x in b.row(i)] for i in range(h)],
        cols=sum(b.cols for b in blocks))


def vstack(blocks: Sequence[RatMatrix], cols: int | None = None) -> RatMatrix:
    if not blocks:
        return zeros(0, cols or 0)
    w = blocks[0].cols
    if any(b.cols != w for b in blocks):
        raise WidthMismatch("vstack needs equal widths")
    return RatMatrix(sum(b.rows for b in blocks), w,
                     tuple(x for b in blocks for x in b.entries))


def stack_columns(vs: Sequence[RatMatrix]) -> RatMatrix:
    """Vertically concatenate column vectors of possibly different heights."""
    for v in vs:
        if v.cols != 1:
            raise WidthMismatch(f"stack_columns takes m x 1 columns, got {v.shape}")
    return vstack(list(vs), cols=1)


def kronecker(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = []
    for i in range(rows):
        ai, bi = divmod(i, b.rows)
        for j in range(cols):
            aj, bj = divmod(j, b.cols)
            out.append(a.entries[ai * a.cols + aj] * b.entries[bi * b.cols + bj])
    return RatMatrix(rows, cols, tuple(out))


def block_diag(blocks: Sequence[RatMatrix]) -> RatMatrix:
    for b in blocks:
        if not b.is_square:
            raise NonSquareBlock(f"block of shape {b.shape} is not square")
    n = sum(b.rows for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            out[off + i][off:off + b.cols] = b.row(i)
        off += b.rows
    return RatMatrix.from_rows(out, cols=n)


# -- elimination -------------------------------------------------------------

def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan; pivot is the first nonzero entry in the column."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr[:] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [x - k * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the (ascending) pivot columns."""
    rows = m.tolist()
    pivots = _rref_rows(rows, m.cols)
    return RatMatrix.from_rows(rows, cols=m.cols), pivots


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


def row_space_basis(m: RatMatrix) -> BasisSet:
    """Nonzero rows of rref(m), each a 1 x n matrix."""
    r, pivots = rref(m)
    return BasisSet(tuple(RatMatrix(1, m.cols, r.row(i)) for i in range(len(pivots))))


def null_space_basis(m: RatMatrix) -> BasisSet:
    """Basis of {x : m x = 0}, one n x 1 vector per free column (free entry = 1)."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    vecs = []
    for f in free:
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -r[i, f]
        vecs.append(RatMatrix(m.cols, 1, tuple(x)))
    return BasisSet(tuple(vecs))


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan on [m | I]."""
    if not m.is_square:
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _rref_rows(aug, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return RatMatrix.from_rows([r[n:] for r in aug], cols=n)


# -- pseudoinverse -----------------------------------------------------------

def _appendix_pinv(m: RatMatrix) -> RatMatrix:
    # Works for any shape; the public surface only exposes the square case.
    p, q = m.shape
    row_basis = row_space_basis(m)
    k = len(row_basis)
    complement = null_space_basis(transpose(m))  # im(M)-perp = Null(M*)
    assert len(complement) == p - k
    r_cols = [r.T for r in row_basis]
    left = hstack(r_cols + [zeros(q, p - k)], rows=q)
    right = hstack([m @ r for r in r_cols] + list(complement), rows=p)
    try:
        right_inv = inverse(right)
    except SingularMatrix as exc:  # pragma: no cover - would be a basis bug
        raise SingularMatrix(
            "basis matrix [M r1* .. M rk* s1 .. s(m-k)] is singular; "
            "row/complement basis extraction is broken") from exc
    return left @ right_inv


def pinv(m: RatMatrix) -> RatMatrix:
    """Moore-Penrose inverse of a square rational matrix.

    Invertible inputs get their exact inverse and the 0x0 matrix maps to itself.
    """
    if not m.is_square:
        raise DimensionMismatch(f"pinv takes a square matrix, got {m.shape}")
    if m.rows == 0:
        return m
    return _appendix_pinv(m)


def pinv_full_rank(m: RatMatrix) -> RatMatrix:
    """Pseudoinverse through a full-rank factorization m = F G.

    F holds the pivot columns of m and G the nonzero rows of rref(m); then
    m+ = G* (G G*)^-1 (F* F)^-1 F*.  Kept independent of :func:`pinv` so it
    can serve as a cross-check.
    """
    r, pivots = rref(m)
    k = len(pivots)
    if k == 0:
        return zeros(m.cols, m.rows)
    f = RatMatrix.from_rows([[m[i, j] for j in pivots] for i in range(m.rows)], cols=k)
    g = RatMatrix.from_rows([r.row(i) for i in range(k)], cols=m.cols)
    gt, ft = transpose(g), transpose(f)
    return gt @ inverse(g @ gt) @ inverse(ft @ f) @ ft


def penrose_violations(m: RatMatrix, p: RatMatrix) -> list[str]:
    """Names of the Penrose equations that ``p`` fails for ``m`` (empty if none)."""
    if p.shape != (m.cols, m.rows):
        return ["shape"]
    bad = []
    mp, pm = m @ p, p @ m
    if mp @ m != m:
        bad.append("MPM=M")
    if pm @ p != p:
        bad.append("PMP=P")
    if transpose(pm) != pm:
        bad.append("(PM)*=PM")
    if transpose(mp) != mp:
        bad.append("(MP)*=MP")
    return bad


def in_row_space(m: RatMatrix, v: RatMatrix) -> bool:
    """True iff the 1 x n row ``v`` lies in Row(m)."""
    if v.shape != (1, m.cols):
        raise DimensionMismatch(f"expected a 1x{m.cols} row, got {v.shape}")
    return rank(vstack([m, v], cols=m.cols)) == rank(m)


# -- text form ---------------------------------------------------------------

def format_fraction(x: Fraction) -> int | str:
    """Integers stay ints; everything else becomes the string "p/q"."""
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_json(m: RatMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[format_fraction(x) for x in r] for r in m]}


def from_json(data: dict) -> RatMatrix:
    try:
        rows, cols, entries = data["rows"], data["cols"], data["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix JSON needs rows, cols and entries: {exc}") from exc
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise ValueError("rows and cols must be non-negative integers")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError(f"entries do not form a {rows}x{cols} matrix")
    for r in entries:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise ValueError(f"matrix entry {x!r} is neither an integer nor 'p/q'")
    try:
        return RatMatrix.from_rows(entries, cols=cols)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad matrix entry: {exc}") from exc
