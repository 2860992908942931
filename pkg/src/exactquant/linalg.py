"""Exact dense linear algebra over Q and Q(hbar).

Matrices are immutable row tuples.  Rank over Q(hbar) uses fraction-free
elimination on polynomial rows with content removal after every update, which
keeps the coefficient growth in check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalars import Laurent, QPoly, RationalFunction, poly_gcd


class FieldError(TypeError):
    """Entries do not live in a field we can eliminate over."""


class ComplexError(ValueError):
    """Consecutive maps of a complex do not compose to zero."""

    def __init__(self, index: int, row: int, col: int, value):
        self.index, self.row, self.col, self.value = index, row, col, value
        super().__init__(
            f"d_{index + 1} o d_{index} != 0: entry ({row}, {col}) is {value}"
        )


def _field_of(entries) -> str:
    kind = "Q"
    for x in entries:
        if isinstance(x, Laurent):
            if not x.exact:
                raise FieldError("truncated Laurent series do not form a field; convert to Q(hbar) first")
            kind = "Qh"
        elif isinstance(x, (RationalFunction, QPoly)):
            kind = "Qh"
        elif not isinstance(x, (int, Fraction)):
            raise FieldError(f"unsupported matrix entry {x!r}")
    return kind


def _coerce(x, kind: str):
    if kind == "Q":
        return Fraction(x)
    return RationalFunction.coerce(x)


@dataclass(frozen=True)
class ExactMatrix:
    rows: Tuple[tuple, ...]
    nrows: int
    ncols: int
    field: str = "Q"

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: Optional[int] = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        kind = _field_of(x for r in rows for x in r)
        data = tuple(tuple(_coerce(x, kind) for x in r) for r in rows)
        return cls(data, len(rows), ncols, kind)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: str = "Q") -> "ExactMatrix":
        z = Fraction(0) if field == "Q" else RationalFunction(0)
        return cls(tuple(tuple(z for _ in range(ncols)) for _ in range(nrows)), nrows, ncols, field)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def as_field(self, field: str) -> "ExactMatrix":
        if field == self.field:
            return self
        if field == "Q":
            raise FieldError("cannot narrow Q(hbar) entries to Q")
        return ExactMatrix(tuple(tuple(RationalFunction.coerce(x) for x in r) for r in self.rows),
                           self.nrows, self.ncols, field)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        field = "Qh" if "Qh" in (self.field, other.field) else "Q"
        a, b = self.as_field(field), other.as_field(field)
        zero = Fraction(0) if field == "Q" else RationalFunction(0)
        out = []
        for i in range(a.nrows):
            row = []
            for j in range(b.ncols):
                s = zero
                for k in range(a.ncols):
                    x = a.rows[i][k]
                    if x:
                        y = b.rows[k][j]
                        if y:
                            s = s + x * y
                row.append(s)
            out.append(tuple(row))
        return ExactMatrix(tuple(out), a.nrows, b.ncols, field)

    __matmul__ = matmul

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)),
                           self.ncols, self.nrows, self.field)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x:
                    return i, j, x
        return None

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix.from_rows([[fn(x) for x in r] for r in self.rows], self.ncols)


# --------------------------------------------------------------------------
# elimination


def rref(M: ExactMatrix) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form over the matrix field; returns (rows, pivot columns)."""
    _field_of(x for r in M.rows for x in r)
    rows = [list(r) for r in M.rows]
    pivots: List[int] = []
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if M.field == "Q" else rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                q = rows[i][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _rank_q(rows: List[List[Fraction]], ncols: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c]:
                q = rows[i][c] / p[c]
                rows[i] = [x - q * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


def _poly_row(row: Sequence[RationalFunction]) -> List[QPoly]:
    """Clear denominators of a Q(hbar) row and strip its content."""
    den = QPoly.const(1)
    for x in row:
        if x and x.den.degree > 0:
            den = den * (x.den // poly_gcd(den, x.den))
    out = [x.num * (den // x.den) if x else QPoly() for x in row]
    return _strip_content(out)


def _strip_content(row: List[QPoly]) -> List[QPoly]:
    g = None
    for x in row:
        if x:
            g = x if g is None else poly_gcd(g, x)
            if g.degree == 0:
                break
    if g is None:
        return row
    if g.degree > 0:
        row = [x // g if x else x for x in row]
    # rational content so the entries have coprime integer coefficients
    from math import gcd

    num, den = 0, 1
    for x in row:
        for c in x.c:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
    scale = Fraction(den, num) if num else Fraction(1)
    return [x * scale for x in row]


def _rank_qh(rows: Sequence[Sequence[RationalFunction]], ncols: int) -> int:
    work = [_poly_row(r) for r in rows]
    work = [r for r in work if any(r)]
    rank = 0
    for c in range(ncols):
        cands = [i for i in range(rank, len(work)) if work[i][c]]
        if not cands:
            continue
        # smallest-degree pivot keeps intermediate degrees low
        piv = min(cands, key=lambda i: (work[i][c].degree, sum(x.degree + 1 for x in work[i] if x)))
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank]
        pc = p[c]
        for i in range(rank + 1, len(work)):
            q = work[i][c]
            if q:
                g = poly_gcd(pc, q)
                a, b = pc // g, q // g
                work[i] = _strip_content([a * x - b * y for x, y in zip(work[i], p)])
        rank += 1
    return rank


def rank(M: ExactMatrix) -> int:
    _field_of(x for r in M.rows for x in r)
    if M.nrows == 0 or M.ncols == 0:
        return 0
    if M.field == "Q":
        return _rank_q([list(r) for r in M.rows], M.ncols)
    return _rank_qh(M.rows, M.ncols)


def kernel_basis(M: ExactMatrix) -> List[tuple]:
    """Basis of {v : Mv = 0}, one vector per free column."""
    rows, pivots = rref(M)
    one = Fraction(1) if M.field == "Q" else RationalFunction(1)
    zero = one * 0
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * M.ncols
        v[fcol] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fcol]
        basis.append(tuple(v))
    return basis


def cohomology_dims(differentials: Sequence[ExactMatrix], dims: Optional[Sequence[int]] = None) -> List[int]:
    """Dimensions of H^i for C^0 -> C^1 -> ... with d_i of shape (dim C^{i+1}, dim C^i).

    ``dims`` may be given explicitly (needed when a matrix has no rows or
    columns).  d_{i+1} d_i = 0 is checked exactly before anything is computed.
    """
    ds = list(differentials)
    dims = check_complex(ds, dims)
    ranks = [rank(d) if d.nrows and d.ncols else 0 for d in ds]
    out = []
    for i, n in enumerate(dims):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(n - r_out - r_in)
    return out


def check_complex(differentials: Sequence[ExactMatrix], dims: Optional[Sequence[int]] = None) -> List[int]:
    """Validate shapes and d_{i+1} d_i = 0; returns the list of dimensions."""
    ds = list(differentials)
    if dims is None:
        dims = [ds[0].ncols] + [d.nrows for d in ds] if ds else []
    dims = list(dims)
    if len(dims) != len(ds) + 1:
        raise ValueError("need one more space than maps")
    for i, d in enumerate(ds):
        if (d.nrows, d.ncols) != (dims[i + 1], dims[i]) and d.nrows and d.ncols:
            raise ValueError(f"d_{i} has shape {d.nrows}x{d.ncols}, expected {dims[i + 1]}x{dims[i]}")
    for i in range(len(ds) - 1):
        a, b = ds[i], ds[i + 1]
        if a.nrows and a.ncols and b.nrows and b.ncols:
            hit = (b @ a).first_nonzero()
            if hit is not None:
                raise ComplexError(i, *hit)
    return dims


def _rows_rank(rows: List[list], ncols: int) -> int:
    rows = [r for r in rows if any(x for x in r)]
    if not rows or not ncols:
        return 0
    return rank(ExactMatrix.from_rows(rows, ncols))


def image_cohomology_dims(small: Sequence[ExactMatrix], small_dims: Sequence[int],
                          big: Sequence[ExactMatrix], big_dims: Sequence[int],
                          embeddings: Sequence[Sequence[int]]) -> List[int]:
    """dim of the image of H^k(small) -> H^k(big) for a subcomplex small of big.

    ``embeddings[k][i]`` is the index in big C^k of the i-th basis vector of small C^k.
    Since Z_small = Z_big cap C_small and B_big lies in Z_big, the image
    Z_small / (C_small cap B_big) has dimension

        (n_small - rank d_small) - (rank d_big - rank P d_big)

    where P projects onto the big basis vectors outside C_small. Only ranks
    are needed, which keeps Q(hbar) complexes cheap.
    """
    small_dims = check_complex(small, small_dims)
    big_dims = check_complex(big, big_dims)
    out = []
    for k, n in enumerate(small_dims):
        z = n
        if k < len(small) and small[k].nrows and small[k].ncols:
            z -= _rows_rank([list(r) for r in small[k].rows], small[k].ncols)
        boundary = 0
        if k > 0 and big[k - 1].nrows and big[k - 1].ncols:
            cols = [list(r) for r in big[k - 1].transpose().rows]
            inside = set(embeddings[k])
            outside = [i for i in range(big_dims[k]) if i not in inside]
            proj = [[r[i] for i in outside] for r in cols]
            boundary = _rows_rank(cols, big_dims[k]) - _rows_rank(proj, len(outside))
        out.append(z - boundary)
    return out


def _zero_like(*groups):
    for g in groups:
        for M in g:
            if M.field == "Qh":
                return RationalFunction(0)
    return Fraction(0)
