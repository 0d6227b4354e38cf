"""Eigenschemes of symmetric tensors, eigenvector tests and singular values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .exactnum import ZERO, GaussRat
from .forms import binary as bf
from .forms.binary import BForm
from .forms.nform import LinForm, NForm, ProjPoint

ISOTROPY_TOL = 1e-10


class _Indeterminate:
    """Singular value of an isotropic eigenvector: every mu works."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INDETERMINATE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Indeterminate, ())


INDETERMINATE = _Indeterminate()

SingularValue = Union[GaussRat, complex, _Indeterminate]


class DegenerateEigenError(ValueError):
    """D vanishes identically: every point is an eigenvector."""


class NotEigenvectorError(ValueError):
    pass


def _nform(F) -> NForm:
    if isinstance(F, BForm):
        return F.to_nform()
    if isinstance(F, NForm):
        return F
    raise TypeError(f"expected a form, got {type(F).__name__}")


def sv_to_json(mu: SingularValue):
    if mu is INDETERMINATE:
        return "indeterminate"
    if isinstance(mu, GaussRat):
        return {"exact": str(mu)}
    return {"numeric": [mu.real, mu.imag]}


@dataclass(frozen=True)
class EigPoint:
    point: ProjPoint
    multiplicity: int
    singular_value: SingularValue

    @property
    def isotropic(self) -> bool:
        return self.singular_value is INDETERMINATE

    def to_json(self) -> dict:
        return {
            "point": str(self.point),
            "exact": self.point.exact,
            "multiplicity": self.multiplicity,
            "singular_value": sv_to_json(self.singular_value),
        }


@dataclass(frozen=True)
class EigIdeal:
    generators: tuple
    pairs: tuple

    def evaluate(self, point: Sequence) -> list:
        return [g.evaluate(point) for g in self.generators]

    def vanishes_at(self, point: Sequence) -> bool:
        return all(not v for v in self.evaluate(point))


# --------------------------------------------------------------------------
# eigen polynomial and ideal


def eigen_poly_binary(F: BForm) -> BForm:
    """D = F_x0 * x1 - F_x1 * x0, the single 2x2 minor for n = 1."""
    if F.is_zero():
        raise ValueError("eigenpolynomial of the zero form")
    if F.degree == 0:
        return BForm.zero(1)
    return F.diff(0) * BForm([0, 1]) - F.diff(1) * BForm([1, 0])


def eigen_ideal(F: NForm) -> EigIdeal:
    """All 2x2 minors F_i x_j - F_j x_i, i < j."""
    F = _nform(F)
    if F.is_zero():
        raise ValueError("eigenscheme of the zero form")
    n = F.nvars
    grad = F.gradient()
    gens, pairs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            gens.append(grad[i] * NForm.variable(n, j) - grad[j] * NForm.variable(n, i))
            pairs.append((i, j))
    return EigIdeal(tuple(gens), tuple(pairs))


def _coords(L) -> tuple:
    if isinstance(L, LinForm):
        return L.coords
    if isinstance(L, ProjPoint):
        return L.coords
    return tuple(L)


def _is_numeric(coords) -> bool:
    return any(isinstance(c, (complex, float)) for c in coords)


def gradient_at(F, coords) -> list:
    return [g.evaluate(coords) for g in _nform(F).gradient()]


def is_eigenvector(F, L, tol: float | None = None) -> bool:
    """grad F(L) proportional to L.  Exact unless L has float coordinates."""
    F = _nform(F)
    v = _coords(L)
    if len(v) != F.nvars:
        raise ValueError("point dimension does not match the form")
    if not any(v):
        raise ValueError("zero vector is not a projective point")
    g = gradient_at(F, v)
    if _is_numeric(v):
        tol = 1e-8 if tol is None else tol
        vv = [complex(c) for c in v]
        gg = [complex(c) for c in g]
        scale = max(1.0, max(abs(c) for c in gg)) * max(abs(c) for c in vv)
        return all(abs(gg[i] * vv[j] - gg[j] * vv[i]) <= tol * scale
                   for i in range(len(v)) for j in range(i + 1, len(v)))
    return all(not (g[i] * v[j] - g[j] * v[i]) for i in range(len(v)) for j in range(i + 1, len(v)))


def singular_value(F, L, check: bool = True) -> SingularValue:
    """mu with L^(d-1)(d) F = mu d! <L,L>^(d-1) L, i.e. L^(d-1) in Ann(F - mu L^d).

    Equivalently grad F(L) = mu d <L,L>^(d-1) L.  Isotropic L gives INDETERMINATE.
    """
    F = _nform(F)
    v = _coords(L)
    if check and not is_eigenvector(F, v):
        raise NotEigenvectorError(f"{L} is not an eigenvector")
    d = F.degree
    g = gradient_at(F, v)
    if _is_numeric(v):
        vv = [complex(c) for c in v]
        c = sum(z * z for z in vv)
        if abs(c) <= ISOTROPY_TOL * sum(abs(z) ** 2 for z in vv):
            return INDETERMINATE
        k = max(range(len(vv)), key=lambda i: abs(vv[i]))
        return complex(g[k]) / (d * c ** (d - 1) * vv[k])
    v = [GaussRat.coerce(x) for x in v]
    c = sum((x * x for x in v), ZERO)
    if not c:
        return INDETERMINATE
    k = next(i for i, x in enumerate(v) if x)
    return g[k] / (d * c ** (d - 1) * v[k])


# --------------------------------------------------------------------------
# binary support


def eigen_support_binary(F: BForm, mode: str = "exact", tol: float = bf.ROOT_MERGE_TOL) -> list[EigPoint]:
    """Roots of D with multiplicities and singular values.

    ``exact`` mode returns exact points wherever the root lies in Q(i) and
    numeric points otherwise; ``numeric`` mode returns only numeric points.
    """
    D = eigen_poly_binary(F)
    if D.is_zero():
        raise DegenerateEigenError(
            "eigenpolynomial vanishes identically (F is a multiple of (x0^2 + x1^2)^(d/2)); "
            "every point is an eigenvector")
    return _points_of(F, D, mode, tol)


def _points_of(F: BForm, D: BForm, mode: str, tol: float) -> list[EigPoint]:
    if mode == "numeric":
        pts = bf.roots_numeric(D, tol)
    elif mode == "exact":
        exact, numeric = bf.factor_roots(D)
        pts = exact + numeric
    else:
        raise ValueError("mode must be 'exact' or 'numeric'")
    out = []
    for p, m in pts:
        coords = p.coords if p.exact else p.to_complex()
        out.append(EigPoint(p, m, singular_value(F, coords, check=False)))
    return sorted(out, key=lambda e: bf._point_key(e.point))


# --------------------------------------------------------------------------
# monomials


def monomial_form(exponents: Sequence[int]) -> NForm:
    return NForm.monomial(tuple(exponents))


def monomial_minor(exponents: Sequence[int], i: int, j: int) -> NForm:
    """F/(x_i x_j) * (d_i x_j^2 - d_j x_i^2): the (i, j) minor of a monomial."""
    e = list(exponents)
    n = len(e)
    base = list(e)
    base[i] -= 1
    base[j] -= 1
    if min(base) < 0:
        # some exponent is zero: fall back to the product rule directly
        F = monomial_form(e)
        g = F.gradient()
        return g[i] * NForm.variable(n, j) - g[j] * NForm.variable(n, i)
    q = NForm.monomial(tuple(base))
    xi, xj = NForm.variable(n, i), NForm.variable(n, j)
    return q * ((xj * xj).scale(e[i]) - (xi * xi).scale(e[j]))


def monomial_minor_cases(exponents: Sequence[int]) -> dict:
    """The three-case list for d_0 = 1, keyed by (i, j), with the case label.

    Case ``i<=m<j`` uses the degree-d factor (x_j^2 - d_j x_i^2).
    """
    e = list(exponents)
    m = max(k for k in range(len(e)) if e[k] == e[0])
    out = {}
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            if j <= m:
                label = "i<j<=m"
            elif i <= m:
                label = "i<=m<j"
            else:
                label = "m<i<j"
            out[(i, j)] = (label, monomial_minor(e, i, j))
    return out


@dataclass
class MonomialEigen:
    d: int
    j: int
    L: LinForm
    M: LinForm
    quadric: BForm
    support: list
    intersection: list
    expected: list | None
    case: str
    discrepancy: bool
    notes: list

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "j": self.j,
            "L": str(self.L),
            "M": str(self.M),
            "quadric": str(self.quadric),
            "support": [e.to_json() for e in self.support],
            "intersection": [str(p) for p in self.intersection],
            "expected": None if self.expected is None else [str(p) for p in self.expected],
            "case": self.case,
            "discrepancy": self.discrepancy,
            "notes": self.notes,
        }


def _tilde(L: LinForm) -> BForm:
    a0, a1 = L.coords
    return BForm([-a1, a0])


def _same(p: ProjPoint, q: ProjPoint) -> bool:
    if p.exact and q.exact:
        return p == q
    return p.distance(q) <= 1e-7


def _point_set_equal(A: list, B: list) -> bool:
    return all(any(_same(a, b) for b in B) for a in A) and all(any(_same(a, b) for a in A) for b in B)


def monomial_eigen_binary(d: int, j: int, L: LinForm, M: LinForm) -> MonomialEigen:
    """Eigenscheme of F = L^(d-j) M^j and its intersection with W(F).

    Support is [L^perp] (when d-j-1 >= 1), [M^perp] (when j > 1) and the roots
    Q1, Q2 of the quadric (d-j) M L~ + j L M~.  W(F) cap Eig(F) is computed
    directly from the loci and compared with the case table for such
    monomials; disagreements are flagged rather than hidden.
    """
    from .locus import intersect_waring_eigen_binary

    if not 1 <= j <= d // 2:
        raise ValueError("need 1 <= j <= d/2")
    if len(L.coords) != 2 or len(M.coords) != 2:
        raise ValueError("binary linear forms expected")
    if not (L.coords[0] * M.coords[1] - L.coords[1] * M.coords[0]):
        raise ValueError("L and M must be linearly independent")
    Lb, Mb = BForm(L.coords), BForm(M.coords)
    F = Lb ** (d - j) * Mb ** j
    Dq = Mb * _tilde(L) * (d - j) + Lb * _tilde(M) * j
    notes = []
    D = eigen_poly_binary(F)
    predicted = Lb ** (d - j - 1) * Mb ** (j - 1) * Dq
    if predicted != D:
        notes.append("eigenpolynomial differs from L^(d-j-1) M^(j-1) D")
    support = eigen_support_binary(F)

    Lp, Mp = bf.perp(L).point(), bf.perp(M).point()
    Lpt, Mpt = L.point(), M.point()
    report = intersect_waring_eigen_binary(F)
    inter = [w.point for w in report.witnesses]

    Lis, Mis = L.is_isotropic(), M.is_isotropic()
    ex, nu = bf.factor_roots(Dq)
    qs = [p for p, _ in ex] + [p for p, _ in nu]
    expected = None
    if Lis and Mis:
        case, expected = "both-isotropic", [Mpt]
    else:
        def other(known):
            rest = [q for q in qs if not _same(q, known)]
            return rest[:1]
        if Lis:
            case = "L-isotropic"
            expected = ([] if j == 1 else [Mp]) + other(Lpt)
        elif Mis:
            case = "M-isotropic"
            expected = [Lp, Mpt] + other(Mpt)
        else:
            case = "general"
            expected = [Lp] + ([] if j == 1 else [Mp]) + qs
    if d - j - 1 < 1:
        notes.append("d-j-1 = 0: [L^perp] is not forced into the support")
    if not (L.dot(M)):
        notes.append("L and M are orthogonal: [M^perp] = [L] and [L^perp] = [M] collide")
    discrepancy = not _point_set_equal(_dedupe(expected), inter)
    return MonomialEigen(d, j, L, M, Dq, support, inter, _dedupe(expected), case, discrepancy, notes)


def _dedupe(points: list) -> list:
    out: list = []
    for p in points:
        if not any(_same(p, q) for q in out):
            out.append(p)
    return out
