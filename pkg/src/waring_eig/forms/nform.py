"""Sparse homogeneous forms, linear forms and projective points.

Coefficients are stored in the plain monomial basis: ``F = sum F_a x^a``.
All binomial weights live in :func:`apolar_apply` and :func:`bw_inner`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Sequence

from ..exactnum import ONE, ZERO, GaussRat

Alpha = tuple


def compositions(total: int, parts: int):
    """Exponent vectors of length ``parts`` summing to ``total``, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multinomial(alpha: Sequence[int]) -> int:
    out = factorial(sum(alpha))
    for a in alpha:
        out //= factorial(a)
    return out


def alpha_factorial(alpha: Sequence[int]) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


class NForm:
    """Homogeneous form of degree ``degree`` in ``nvars`` variables x0..x{nvars-1}."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping | None = None):
        if nvars < 1 or degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        clean = {}
        for a, c in (terms or {}).items():
            a = tuple(int(x) for x in a)
            if len(a) != nvars or sum(a) != degree or min(a) < 0:
                raise ValueError(f"exponent {a} incompatible with nvars={nvars}, degree={degree}")
            c = GaussRat.coerce(c)
            if c:
                clean[a] = clean.get(a, ZERO) + c
                if not clean[a]:
                    del clean[a]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NForm is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, degree: int) -> "NForm":
        return cls(nvars, degree, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "NForm":
        return cls(nvars, 0, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, alpha: Sequence[int], c=1) -> "NForm":
        alpha = tuple(alpha)
        return cls(len(alpha), sum(alpha), {alpha: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "NForm":
        a = [0] * nvars
        a[i] = 1
        return cls.monomial(a)

    @classmethod
    def linear(cls, coords: Sequence) -> "NForm":
        n = len(coords)
        terms = {}
        for i, c in enumerate(coords):
            a = [0] * n
            a[i] = 1
            terms[tuple(a)] = c
        return cls(n, 1, terms)

    # basic protocol -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, alpha: Sequence[int]) -> GaussRat:
        return self.terms.get(tuple(alpha), ZERO)

    def items(self):
        """Terms in lex-descending exponent order (x0 > x1 > ...)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __eq__(self, other):
        if not isinstance(other, NForm):
            return NotImplemented
        return (self.nvars, self.degree, self.terms) == (other.nvars, other.degree, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def _check(self, other: "NForm"):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise ValueError("forms must share variable count and degree")

    def __add__(self, other: "NForm") -> "NForm":
        self._check(other)
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = t.get(a, ZERO) + c
        return NForm(self.nvars, self.degree, t)

    def __sub__(self, other: "NForm") -> "NForm":
        return self + (-other)

    def __neg__(self) -> "NForm":
        return NForm(self.nvars, self.degree, {a: -c for a, c in self.terms.items()})

    def scale(self, c) -> "NForm":
        c = GaussRat.coerce(c)
        return NForm(self.nvars, self.degree, {a: c * v for a, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NForm):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        t: dict = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                t[k] = t.get(k, ZERO) + c * e
        return NForm(self.nvars, self.degree + other.degree, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int) -> "NForm":
        result = NForm.constant(self.nvars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def diff(self, i: int) -> "NForm":
        if self.degree == 0:
            return NForm.zero(self.nvars, 0)
        t = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                t[tuple(b)] = c * a[i]
        return NForm(self.nvars, self.degree - 1, t)

    def gradient(self) -> list["NForm"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        """Evaluate at a point with exact (GaussRat) or complex coordinates."""
        numeric = any(isinstance(p, (complex, float)) for p in point)
        if numeric:
            pt = [complex(p) for p in point]
            acc = 0j
            for a, c in self.terms.items():
                m = complex(c)
                for x, k in zip(pt, a):
                    if k:
                        m *= x ** k
                acc += m
            return acc
        pt = [GaussRat.coerce(p) for p in point]
        powers = [[ONE] for _ in pt]
        acc = ZERO
        for a, c in self.terms.items():
            m = c
            for i, k in enumerate(a):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * pt[i])
                    m = m * pw[k]
            acc = acc + m
        return acc

    def substitute(self, images: Sequence["NForm"]) -> "NForm":
        """Compose with ``x_i -> images[i]`` (all images homogeneous of one degree)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        e = images[0].degree
        m = images[0].nvars
        if any(im.degree != e or im.nvars != m for im in images):
            raise ValueError("images must share degree and variable count")
        cache: list[list[NForm]] = [[NForm.constant(m, 1)] for _ in images]
        out = NForm.zero(m, self.degree * e)
        for a, c in self.terms.items():
            term = NForm.constant(m, c)
            for i, k in enumerate(a):
                if k:
                    pw = cache[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * images[i])
                    term = term * pw[k]
            out = out + term
        return out

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __repr__(self):
        from .parse import format_form

        return f"NForm({format_form(self)})"

    def __str__(self):
        from .parse import format_form

        return format_form(self)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "terms": [{"alpha": list(a), "re": str(c.re), "im": str(c.im)} for a, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "NForm":
        terms = {tuple(t["alpha"]): GaussRat.from_json(t) for t in obj["terms"]}
        return cls(int(obj["nvars"]), int(obj["degree"]), terms)


def apolar_apply(G: NForm, F: NForm) -> NForm:
    """``G(d/dx) F``: substitute partial derivatives for the variables of G."""
    if G.nvars != F.nvars:
        raise ValueError("variable count mismatch")
    if G.degree > F.degree:
        raise ValueError(f"apolar action needs deg G <= deg F, got {G.degree} > {F.degree}")
    t: dict = {}
    for a, g in G.terms.items():
        for b, f in F.terms.items():
            if all(x <= y for x, y in zip(a, b)):
                w = 1
                for x, y in zip(a, b):
                    w *= factorial(y) // factorial(y - x)
                k = tuple(y - x for x, y in zip(a, b))
                t[k] = t.get(k, ZERO) + g * f * w
    return NForm(F.nvars, F.degree - G.degree, t)


def bw_inner(F: NForm, G: NForm) -> GaussRat:
    """Bombieri-Weyl pairing: sum over alpha of F_a G_a / multinomial(d; a).

    Bilinear (no conjugation), so isotropic vectors have zero square norm.
    """
    F._check(G)
    acc = ZERO
    for a, c in F.terms.items():
        g = G.terms.get(a)
        if g is not None:
            acc = acc + c * g / multinomial(a)
    return acc


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """Linear form sum coords[i] * x_i."""

    coords: tuple

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(GaussRat.coerce(c) for c in coords))

    @property
    def nvars(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_nform(self) -> NForm:
        return NForm.linear(self.coords)

    def power(self, d: int) -> NForm:
        """Expand L^d by the multinomial theorem."""
        n = self.nvars
        terms = {}
        support = [i for i, c in enumerate(self.coords) if c]
        for a_sub in compositions(d, len(support)) if support else []:
            a = [0] * n
            val = GaussRat(multinomial(a_sub))
            for i, k in zip(support, a_sub):
                a[i] = k
                if k:
                    val = val * self.coords[i] ** k
            terms[tuple(a)] = val
        if not support and d == 0:
            terms[(0,) * n] = ONE
        return NForm(n, d, terms)

    def dot(self, other: "LinForm") -> GaussRat:
        acc = ZERO
        for a, b in zip(self.coords, other.coords):
            acc = acc + a * b
        return acc

    def is_isotropic(self) -> bool:
        if self.is_zero():
            raise ValueError("zero linear form")
        return self.dot(self) == 0

    def point(self) -> "ProjPoint":
        return ProjPoint(self.coords)

    def __str__(self):
        from .parse import format_form

        return format_form(self.to_nform())


@dataclass(frozen=True)
class ProjPoint:
    """Projective point; exact (GaussRat) or numeric (complex) coordinates.

    Coordinates are normalized so the first nonzero one equals 1 (exact case)
    or the largest-modulus one equals 1 (numeric case, for stability).
    """

    coords: tuple
    exact: bool

    def __init__(self, coords: Iterable, exact: bool | None = None):
        raw = list(coords)
        if exact is None:
            exact = not any(isinstance(c, (complex, float)) for c in raw)
        if exact:
            vals = [GaussRat.coerce(c) for c in raw]
            k = next((i for i, v in enumerate(vals) if v), None)
            if k is None:
                raise ValueError("zero vector is not a projective point")
            inv = vals[k].inverse()
            vals = [v * inv for v in vals]
        else:
            vals = [complex(c) for c in raw]
            k = max(range(len(vals)), key=lambda i: abs(vals[i]))
            if abs(vals[k]) == 0:
                raise ValueError("zero vector is not a projective point")
            piv = vals[k]
            vals = [v / piv for v in vals]
            vals[k] = 1 + 0j
        object.__setattr__(self, "coords", tuple(vals))
        object.__setattr__(self, "exact", exact)

    def to_complex(self) -> tuple:
        return tuple(complex(c) for c in self.coords)

    def unit(self):
        """Unit-norm complex representative."""
        v = self.to_complex()
        n = sum(abs(c) ** 2 for c in v) ** 0.5
        return tuple(c / n for c in v)

    def distance(self, other: "ProjPoint") -> float:
        """Chordal distance between unit representatives, capped at 1."""
        u, v = self.unit(), other.unit()
        ip = sum(a * b.conjugate() for a, b in zip(u, v))
        # norm of the component of u orthogonal to v; stable near 0
        return min(1.0, sum(abs(a - ip * b) ** 2 for a, b in zip(u, v)) ** 0.5)

    def close_to(self, other: "ProjPoint", tol: float = 1e-8) -> bool:
        if self.exact and other.exact:
            return self == other
        return self.distance(other) <= tol

    def linform(self) -> LinForm:
        if not self.exact:
            raise ValueError("numeric point has no exact linear form")
        return LinForm(self.coords)

    def to_json(self):
        if self.exact:
            return {"exact": True, "coords": [c.to_json() for c in self.coords]}
        return {"exact": False, "coords": [[c.real, c.imag] for c in self.coords]}

    def __str__(self):
        if self.exact:
            return "[" + ":".join(str(c) for c in self.coords) + "]"
        return "[" + ":".join(_fmt_complex(c) for c in self.coords) + "]"


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-14:
        return f"{z.real:.10g}"
    return f"({z.real:.10g}{z.imag:+.10g}i)"
