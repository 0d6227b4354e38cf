"""Binary forms with a dense coefficient vector and their univariate toolkit.

``coeffs[k]`` is the coefficient of ``x0^(d-k) x1^k``.  A root of a binary form
G is a projective point p with G(p0, p1) = 0; under apolarity the root p of a
dual form corresponds to the linear form p0*x0 + p1*x1.
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

import numpy as np

from ..exactnum import ONE, ZERO, GaussRat, snap
from . import univariate as up
from .nform import LinForm, NForm, ProjPoint

# Single global parameter for merging numerically coincident roots.
ROOT_MERGE_TOL = 1e-7
# Documented residual bound: |F(p)| <= RESIDUAL_BOUND * sum|c_k| for unit-norm p.
RESIDUAL_BOUND = 1e-8


class BForm:
    """Binary form of degree ``len(coeffs) - 1``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(GaussRat.coerce(c) for c in coeffs)
        if not cs:
            raise ValueError("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("BForm is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, d: int) -> "BForm":
        return cls([ZERO] * (d + 1))

    @classmethod
    def monomial(cls, d: int, k: int, c=1) -> "BForm":
        cs = [ZERO] * (d + 1)
        cs[k] = GaussRat.coerce(c)
        return cls(cs)

    @classmethod
    def linear_power(cls, a0, a1, d: int) -> "BForm":
        a0, a1 = GaussRat.coerce(a0), GaussRat.coerce(a1)
        return cls([comb(d, k) * a0 ** (d - k) * a1 ** k for k in range(d + 1)])

    @classmethod
    def from_nform(cls, F: NForm) -> "BForm":
        if F.nvars != 2:
            raise ValueError("binary forms need exactly two variables")
        d = F.degree
        return cls([F.coeff((d - k, k)) for k in range(d + 1)])

    @classmethod
    def from_t_poly(cls, p: Sequence, d: int) -> "BForm":
        """Homogenize p(t) (t = x1/x0) to degree d."""
        p = list(p)
        if len(p) > d + 1:
            raise ValueError("polynomial degree exceeds the form degree")
        return cls(p + [ZERO] * (d + 1 - len(p)))

    def to_nform(self) -> NForm:
        d = self.degree
        return NForm(2, d, {(d - k, k): c for k, c in enumerate(self.coeffs)})

    # protocol -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "BForm") -> "BForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "BForm") -> "BForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BForm(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "BForm":
        return BForm(-a for a in self.coeffs)

    def scale(self, c) -> "BForm":
        c = GaussRat.coerce(c)
        return BForm(c * a for a in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, BForm):
            return self.scale(other)
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return BForm(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "BForm":
        out = BForm([ONE])
        for _ in range(e):
            out = out * self
        return out

    def diff(self, i: int) -> "BForm":
        d = self.degree
        if d == 0:
            return BForm([ZERO])
        if i == 0:
            return BForm((d - k) * self.coeffs[k] for k in range(d))
        return BForm((k + 1) * self.coeffs[k + 1] for k in range(d))

    def evaluate(self, p0, p1):
        if isinstance(p0, (complex, float)) or isinstance(p1, (complex, float)):
            p0, p1 = complex(p0), complex(p1)
            d = self.degree
            return sum(complex(c) * p0 ** (d - k) * p1 ** k for k, c in enumerate(self.coeffs))
        p0, p1 = GaussRat.coerce(p0), GaussRat.coerce(p1)
        d = self.degree
        acc = ZERO
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * p0 ** (d - k) * p1 ** k
        return acc

    def at(self, p: ProjPoint):
        return self.evaluate(*p.coords)

    def normalized(self) -> "BForm":
        """Scale so the first nonzero coefficient (x0-leading term) is 1."""
        k = next((i for i, c in enumerate(self.coeffs) if c), None)
        if k is None:
            return self
        return self.scale(self.coeffs[k].inverse())

    def t_poly(self) -> list:
        """Dehomogenization F(1, t) as an ascending coefficient list."""
        return up.strip(self.coeffs)

    def s_poly(self) -> list:
        """Dehomogenization F(s, 1) as an ascending coefficient list."""
        return up.strip(reversed(self.coeffs))

    def x0_multiplicity(self) -> int:
        """Multiplicity of the root [0:1] (power of x0 dividing F)."""
        return self.degree - up.degree(self.t_poly())

    def x1_multiplicity(self) -> int:
        """Multiplicity of the root [1:0] (power of x1 dividing F)."""
        return self.degree - up.degree(self.s_poly())

    def __repr__(self):
        return f"BForm({self})"

    def __str__(self):
        from .parse import format_form

        return format_form(self.to_nform())

    def to_json(self) -> dict:
        return self.to_nform().to_json()


def as_bform(F) -> BForm:
    if isinstance(F, BForm):
        return F
    if isinstance(F, NForm):
        return BForm.from_nform(F)
    if isinstance(F, LinForm):
        return BForm(F.coords)
    raise TypeError(f"cannot interpret {type(F).__name__} as a binary form")


def vanishing_form(points: Sequence[ProjPoint]) -> BForm:
    """Product of the linear forms p1*x0 - p0*x1 (root exactly at each p)."""
    out = BForm([ONE])
    for p in points:
        out = out * BForm([p.coords[1], -p.coords[0]])
    return out


# --------------------------------------------------------------------------
# gcd machinery


def gcd_binary(F: BForm, G: BForm) -> BForm:
    """Homogeneous gcd, normalized so its x0-leading coefficient is 1."""
    if F.is_zero() and G.is_zero():
        raise ValueError("gcd of two zero forms")
    if F.is_zero():
        return G.normalized()
    if G.is_zero():
        return F.normalized()
    e = min(F.x0_multiplicity(), G.x0_multiplicity())
    h = up.gcd(F.t_poly(), G.t_poly())
    return BForm.from_t_poly(h, up.degree(h) + e).normalized()


def divide_exact(F: BForm, G: BForm) -> BForm:
    """F / G, raising ArithmeticError unless G divides F."""
    if G.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if G.degree > F.degree:
        raise ArithmeticError("divisor has larger degree")
    if F.is_zero():
        return BForm.zero(F.degree - G.degree)
    q, r = up.divmod_poly(F.t_poly(), G.t_poly())
    if r or up.degree(q) > F.degree - G.degree:
        raise ArithmeticError("form division is not exact")
    return BForm.from_t_poly(q, F.degree - G.degree)


def divides(G: BForm, F: BForm) -> bool:
    try:
        divide_exact(F, G)
    except ArithmeticError:
        return False
    return True


def _partials_gcd(F: BForm) -> BForm:
    return gcd_binary(F.diff(0), F.diff(1))


def squarefree_part(F: BForm) -> BForm:
    """Product of the distinct linear factors of F (normalized)."""
    if F.is_zero():
        raise ValueError("squarefree part of the zero form")
    if F.degree == 0:
        return BForm([ONE])
    return divide_exact(F, _partials_gcd(F)).normalized()


def is_squarefree(F: BForm) -> bool:
    """True iff F has no repeated projective root; common roots of the two
    partials are exactly the repeated roots of F (Euler's relation)."""
    if F.is_zero():
        raise ValueError("squarefreeness of the zero form")
    if F.degree <= 1:
        return True
    return _partials_gcd(F).degree == 0


def resultant(F: BForm, G: BForm) -> GaussRat:
    """Homogeneous resultant at formal degrees; zero iff a common projective root."""
    m, n = F.degree, G.degree
    if m + n == 0:
        return ONE
    if m == 0:
        return F.coeffs[0] ** n
    if n == 0:
        return G.coeffs[0] ** m
    size = m + n
    rows = []
    for k in range(n):
        rows.append([ZERO] * k + list(F.coeffs) + [ZERO] * (size - k - m - 1))
    for k in range(m):
        rows.append([ZERO] * k + list(G.coeffs) + [ZERO] * (size - k - n - 1))
    from ..exactnum import ExactMatrix, det_exact

    return det_exact(ExactMatrix.from_rows(rows, size))


def discriminant(F: BForm) -> GaussRat:
    """(-1)^(d(d-1)/2) Res(dF/dx0, dF/dx1) / d^(d-2); b^2 - 4ac for quadrics."""
    d = F.degree
    if F.is_zero():
        raise ValueError("discriminant of the zero form")
    if d <= 1:
        return ONE
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return resultant(F.diff(0), F.diff(1)) * sign / GaussRat(d) ** (d - 2)


# --------------------------------------------------------------------------
# roots


def _s_point(s: complex) -> ProjPoint:
    return ProjPoint((s, 1 + 0j), exact=False)


def _snap_point(z: complex) -> tuple[GaussRat, GaussRat]:
    """Candidate exact projective coordinates for the root [z:1]."""
    if abs(z) > 1:
        return ONE, snap(1 / z)
    return snap(z), ONE


def factor_roots(F: BForm):
    """Split the roots of a nonzero exact form.

    Returns ``(exact, numeric)``: ``exact`` is a list of (exact ProjPoint,
    multiplicity) for every root found in Q(i) (verified exactly), and
    ``numeric`` a list of (numeric ProjPoint, multiplicity) for the rest.
    Multiplicities come from an exact squarefree decomposition.
    """
    if F.is_zero():
        raise ValueError("roots of the zero form")
    exact: list = []
    numeric: list = []
    m_inf = F.x1_multiplicity()
    if m_inf:
        exact.append((ProjPoint((ONE, ZERO)), m_inf))
    for factor, mult in up.squarefree_decomposition(F.s_poly()):
        rest = factor
        for z in up.numeric_roots(factor):
            if len(rest) <= 1:
                break
            a, b = _snap_point(complex(z))
            if not b:
                continue
            s = a / b
            if not up.evaluate(rest, s):
                rest = up.exact_div(rest, [-s, ONE])
                exact.append((ProjPoint((a, b)), mult))
        if len(rest) > 1:
            for z in up.numeric_roots(rest):
                numeric.append((_s_point(complex(z)), mult))
    return exact, numeric


def roots_numeric(F: BForm, tol: float = ROOT_MERGE_TOL) -> list[tuple[ProjPoint, int]]:
    """All d projective roots with multiplicity as numeric points.

    Clusters closer than ``tol`` (chordal distance) are merged and their
    multiplicities summed.  Each returned point p (unit-normalized) satisfies
    ``|F(p)| <= RESIDUAL_BOUND * sum|c_k|``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if F.is_zero():
        raise ValueError("roots of the zero form")
    exact, numeric = factor_roots(F)
    pts = [(ProjPoint(p.to_complex(), exact=False), m) for p, m in exact] + numeric
    merged: list[list] = []
    for p, m in pts:
        for slot in merged:
            if slot[0].distance(p) <= tol:
                slot[1] += m
                break
        else:
            merged.append([p, m])
    merged.sort(key=lambda s: _point_key(s[0]))
    return [(p, m) for p, m in merged]


def _point_key(p: ProjPoint):
    u = p.to_complex()
    k = next(i for i, c in enumerate(u) if abs(c) > 1e-12)
    v = [c / u[k] for c in u]
    return tuple((round(c.real, 9), round(c.imag, 9)) for c in v)


def residual(F: BForm, p: ProjPoint) -> float:
    """Relative residual |F(p)| / sum|c_k| at the unit representative of p."""
    u = p.unit()
    scale = sum(abs(complex(c)) for c in F.coeffs) or 1.0
    return abs(F.evaluate(*u)) / scale


def distinct_root_count(F: BForm) -> int:
    return squarefree_part(F).degree


# --------------------------------------------------------------------------
# binary linear forms


def perp(L: LinForm) -> LinForm:
    """(-a1, a0) for L = a0*x0 + a1*x1: the form orthogonal to L."""
    if len(L.coords) != 2:
        raise ValueError("perp is defined for binary linear forms")
    if L.is_zero():
        raise ValueError("perp of the zero form")
    a0, a1 = L.coords
    return LinForm((-a1, a0))


def is_isotropic(L: LinForm) -> bool:
    return L.is_isotropic()


def numeric_coeffs(F: BForm) -> np.ndarray:
    return np.array([complex(c) for c in F.coeffs], dtype=complex)
