"""Exact scalars over Q(i) and small dense linear algebra.

``Rat`` is ``gmpy2.mpq`` (always reduced, positive denominator).  ``GaussRat``
is an immutable Gaussian rational ``re + im*i``.  Rank is computed by
fraction-free (Bareiss) elimination over the Gaussian integers after clearing
row denominators; kernels come from a reduced row echelon form so that bases
are reproducible.  Numeric rank goes through singular values.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Integral, Rational
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

Rat = mpq

__all__ = [
    "Rat",
    "GaussRat",
    "I",
    "ZERO",
    "ONE",
    "gr",
    "ExactMatrix",
    "rref",
    "kernel_basis",
    "rank_exact",
    "det_exact",
    "solve_exact",
    "inverse_exact",
    "rank_numeric",
    "singular_values",
]


def _rat(x) -> mpq:
    if isinstance(x, float):
        raise TypeError("floats are not exact; convert explicitly with Fraction")
    return mpq(x)


class GaussRat:
    """Gaussian rational ``re + im*i`` with ``re, im`` in Q."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _rat(re))
        object.__setattr__(self, "im", _rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (Integral, Rational)) or type(x).__name__ == "mpq":
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real.is_integer() and x.imag.is_integer():
                return cls(int(x.real), int(x.imag))
            raise TypeError("non-integral complex literal is not exact")
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussRat")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(self)

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}*i"
        if re == 0:
            return ims
        if ims.startswith("-"):
            return f"({re}{ims})"
        return f"({re}+{ims})"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussRat":
        return cls(mpq(obj["re"]), mpq(obj.get("im", "0")))


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def gr(re=0, im=0) -> GaussRat:
    """Shorthand constructor accepting ints, Fractions, mpq or "p/q" strings."""
    if isinstance(re, GaussRat):
        return re
    if isinstance(re, str):
        re = mpq(re)
    if isinstance(im, str):
        im = mpq(im)
    return GaussRat(re, im)


def parse_scalar(text: str) -> GaussRat:
    """Parse ``"p/q"``, ``"a+b*i"`` and friends through the form parser."""
    from .forms.parse import parse_constant

    return parse_constant(text)


def snap(z: complex, max_den: int = 10**6) -> GaussRat:
    """Nearest Gaussian rational with bounded denominators (a candidate only)."""
    re = Fraction(z.real).limit_denominator(max_den)
    im = Fraction(z.imag).limit_denominator(max_den)
    return GaussRat(re, im)


# --------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Dense row-major matrix of GaussRat."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ents = tuple(GaussRat.coerce(e) for e in entries)
        if len(ents) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ents)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[GaussRat]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[GaussRat]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[GaussRat]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for j in range(other.cols):
                    acc = ZERO
                    for k in range(self.cols):
                        if r[k]:
                            acc = acc + r[k] * other[k, j]
                    out.append(acc)
            return ExactMatrix(self.rows, other.cols, out)
        vec = [GaussRat.coerce(v) for v in other]
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for a, b in zip(self.row(i), vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "ExactMatrix":
        c = GaussRat.coerce(c)
        return ExactMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(e) for e in self.entries], dtype=complex).reshape(self.rows, self.cols)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"


def _as_matrix(M) -> ExactMatrix:
    if isinstance(M, ExactMatrix):
        return M
    return ExactMatrix.from_rows(M)


def rref(M) -> tuple[list[list[GaussRat]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting; returns (rows, pivot columns)."""
    M = _as_matrix(M)
    A = M.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [inv * x if x else ZERO for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y if y else x for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return A, pivots


def kernel_basis(M) -> list[list[GaussRat]]:
    """Basis of the right null space, one vector per free column, in RREF normal form."""
    M = _as_matrix(M)
    A, pivots = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for row, pc in zip(A, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


# Gaussian integers as (a, b) int pairs for the fraction-free path.

def _gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _gi_exquo(x, y):
    n = y[0] * y[0] + y[1] * y[1]
    re = x[0] * y[0] + x[1] * y[1]
    im = x[1] * y[0] - x[0] * y[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("inexact Bareiss division")
    return (qr, qi)


def _integral_rows(M: ExactMatrix) -> tuple[list[list[tuple[int, int]]], GaussRat]:
    """Scale each row by the lcm of its denominators; return rows and the product of scales."""
    rows = []
    scale = mpq(1)
    for i in range(M.rows):
        r = M.row(i)
        den = 1
        for e in r:
            den = lcm(den, int(e.re.denominator), int(e.im.denominator))
        rows.append([(int(e.re * den), int(e.im * den)) for e in r])
        scale *= den
    return rows, GaussRat(scale)


def _bareiss(A: list[list[tuple[int, int]]], ncols: int):
    """In-place fraction-free echelon; returns (rank, sign, last pivot)."""
    nrows = len(A)
    prev = (1, 0)
    sign = 1
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if A[i][c] != (0, 0)), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a_ic = A[i][c]
            Ai, Ar = A[i], A[r]
            for j in range(c + 1, ncols):
                v = _gi_sub(_gi_mul(piv, Ai[j]), _gi_mul(a_ic, Ar[j]))
                Ai[j] = _gi_exquo(v, prev)
            Ai[c] = (0, 0)
        prev = piv
        r += 1
        if r == nrows:
            break
    return r, sign, prev


def rank_exact(M) -> int:
    """Rank over Q(i) by Bareiss elimination on Gaussian integers."""
    M = _as_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return 0
    A, _ = _integral_rows(M)
    r, _, _ = _bareiss(A, M.cols)
    return r


def det_exact(M) -> GaussRat:
    M = _as_matrix(M)
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return ONE
    A, scale = _integral_rows(M)
    r, sign, last = _bareiss(A, n)
    if r < n:
        return ZERO
    return GaussRat(sign * last[0], sign * last[1]) / scale


def solve_exact(M, b) -> list[GaussRat] | None:
    """One solution of Mx = b (free variables set to 0), or None if inconsistent."""
    M = _as_matrix(M)
    b = [GaussRat.coerce(x) for x in b]
    aug = ExactMatrix.from_rows([M.row(i) + [b[i]] for i in range(M.rows)], M.cols + 1)
    A, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [ZERO] * M.cols
    for row, pc in zip(A, pivots):
        x[pc] = row[M.cols]
    return x


def inverse_exact(M) -> ExactMatrix:
    M = _as_matrix(M)
    n = M.rows
    if n != M.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = ExactMatrix.from_rows(
        [M.row(i) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)], 2 * n)
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return ExactMatrix.from_rows([row[n:] for row in A[:n]])


# --------------------------------------------------------------------------
# numeric


def singular_values(M) -> np.ndarray:
    A = M.to_numpy() if isinstance(M, ExactMatrix) else np.asarray(M, dtype=complex)
    if A.size == 0:
        return np.zeros(0)
    if not np.all(np.isfinite(A)):
        raise ValueError("non-finite matrix entries")
    return np.linalg.svd(A, compute_uv=False)


def rank_numeric(M, tol: float) -> int:
    """Count singular values above ``tol`` times the largest one.

    The result depends on ``tol``; it is a numerical rank, not a certificate.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    s = singular_values(M)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))
