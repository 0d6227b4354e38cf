"""Catalecticants, apolar generators of binary forms and Sylvester's algorithm.

Dual forms (annihilators) are stored as BForm in the dual variables; a dual
monomial ``y0^(k-q) y1^q`` acts as ``d0^(k-q) d1^q``.  A root p of a dual form
corresponds to the linear form ``p0*x0 + p1*x1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from .exactnum import ExactMatrix, GaussRat, kernel_basis, rank_exact, solve_exact
from .forms import binary as bf
from .forms.binary import BForm
from .forms.nform import LinForm, NForm, ProjPoint, apolar_apply, compositions


def catalecticant(F: BForm, k: int) -> ExactMatrix:
    """Matrix of G -> G(d)F from Sym^k to Sym^(d-k).

    Column q is the dual monomial d0^(k-q) d1^q, row p the coefficient of
    x0^(d-k-p) x1^p in the output.
    """
    d = F.degree
    if not 0 <= k <= d:
        raise ValueError(f"catalecticant order k={k} outside 0..{d}")
    c = F.coeffs
    rows = []
    for p in range(d - k + 1):
        row = []
        for q in range(k + 1):
            m = p + q
            w = factorial(d - m) // factorial(d - k - p) * factorial(m) // factorial(p)
            row.append(c[m] * w)
        rows.append(row)
    return ExactMatrix.from_rows(rows, k + 1)


def catalecticant_n(F: NForm, k: int) -> ExactMatrix:
    """General catalecticant: dual monomials of degree k (lex-desc) to Sym^(d-k)."""
    d, n = F.degree, F.nvars
    if not 0 <= k <= d:
        raise ValueError(f"catalecticant order k={k} outside 0..{d}")
    out_basis = list(compositions(d - k, n))
    index = {a: i for i, a in enumerate(out_basis)}
    cols = []
    for b in compositions(k, n):
        img = apolar_apply(NForm.monomial(b), F)
        col = [GaussRat(0)] * len(out_basis)
        for a, v in img.items():
            col[index[a]] = v
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(out_basis))]
    return ExactMatrix.from_rows(rows, len(cols))


def essential_variables(F: NForm) -> int:
    return rank_exact(catalecticant_n(F, 1)) if F.degree >= 1 else 0


def apply_dual(G: BForm, F: BForm) -> BForm:
    """G(d)F for binary forms; a dual form of degree above d gives zero."""
    if G.degree > F.degree:
        return BForm.zero(0)
    return BForm.from_nform(apolar_apply(G.to_nform(), F.to_nform()))


# --------------------------------------------------------------------------
# apolar ideal


@dataclass(frozen=True)
class AnnPair:
    g1: BForm
    g2: BForm
    balanced: bool = False

    @property
    def k1(self) -> int:
        return self.g1.degree

    @property
    def k2(self) -> int:
        return self.g2.degree

    def to_json(self) -> dict:
        return {"g1": str(self.g1), "g2": str(self.g2), "balanced": self.balanced}


def _kernel_forms(F: BForm, k: int) -> list[BForm]:
    return [BForm(v) for v in kernel_basis(catalecticant(F, k))]


def _independent_of(forms: list[BForm], vec: BForm) -> bool:
    if not forms:
        return not vec.is_zero()
    rows = [list(f.coeffs) for f in forms]
    return rank_exact(ExactMatrix.from_rows(rows + [list(vec.coeffs)])) > rank_exact(ExactMatrix.from_rows(rows))


def annihilator_binary(F: BForm) -> AnnPair:
    """Generators (g1, g2) of Ann(F), deg g1 + deg g2 = d + 2.

    In the balanced case deg g1 = deg g2 = (d+2)/2 and (g1, g2) is the echelon
    basis of the degree-(d+2)/2 kernel, i.e. the whole pencil.
    """
    if F.is_zero():
        raise ValueError("annihilator of the zero form")
    d = F.degree
    for k1 in range(1, d + 2):
        ker = _kernel_forms(F, k1) if k1 <= d else None
        if ker is None:
            # k1 = d + 1 only for d = 0: every degree-1 form kills a constant
            ker = [BForm([1, 0]), BForm([0, 1])]
        if ker:
            break
    k2 = d + 2 - k1
    if k1 == k2:
        if len(ker) != 2:
            raise ArithmeticError("balanced kernel is not a pencil")
        return AnnPair(ker[0].normalized(), ker[1].normalized(), balanced=True)
    g1 = ker[0].normalized()
    multiples = [g1 * BForm.monomial(k2 - k1, s) for s in range(k2 - k1 + 1)]
    for v in (_kernel_forms(F, k2) if k2 <= d else _all_monomials(k2)):
        if _independent_of(multiples, v):
            return AnnPair(g1, v.normalized())
    raise ArithmeticError("no second generator found")


def _all_monomials(k: int) -> list[BForm]:
    return [BForm.monomial(k, s) for s in range(k + 1)]


def waring_rank_binary(F: BForm, ann: AnnPair | None = None) -> int:
    """Sylvester: deg g1 if g1 is squarefree (or the pencil is balanced), else deg g2."""
    ann = ann or annihilator_binary(F)
    if ann.balanced:
        # g1, g2 share no root, so the generic pencil member is squarefree
        return ann.k1
    return ann.k1 if bf.is_squarefree(ann.g1) else ann.k2


def pencil_member(ann: AnnPair, t) -> BForm:
    return ann.g1 + ann.g2.scale(t)


def _pencil_params(count: int = 21):
    yield None  # g1 itself
    for s in range(1, count):
        t = (s + 1) // 2
        yield t if s % 2 else -t


def squarefree_generator(ann: AnnPair) -> BForm | None:
    """A squarefree degree-k1 annihilator, preferring ones that split over Q,
    then over Q(i).  Returns None when g1 is not squarefree and not balanced."""
    if not ann.balanced:
        return ann.g1 if bf.is_squarefree(ann.g1) else None
    best, best_score = None, -1
    for t in _pencil_params():
        G = ann.g1 if t is None else pencil_member(ann, t)
        if not bf.is_squarefree(G):
            continue
        exact, numeric = bf.factor_roots(G)
        if numeric:
            score = 0
        elif all(c.is_real() for p, _ in exact for c in p.coords):
            score = 2
        else:
            score = 1
        if score > best_score:
            best, best_score = G, score
        if score == 2:
            break
    return best


# --------------------------------------------------------------------------
# decompositions


@dataclass
class Decomposition:
    """F = sum c_i L_i^d; exact terms carry LinForm/GaussRat, numeric ones complex tuples."""

    degree: int
    terms: list = field(default_factory=list)
    exact: bool = True
    residual: float = 0.0

    @property
    def rank(self) -> int:
        return len(self.terms)

    def points(self) -> list[ProjPoint]:
        if self.exact:
            return [L.point() for L, _ in self.terms]
        return [ProjPoint(L, exact=False) for L, _ in self.terms]

    def expand(self) -> BForm:
        if not self.exact:
            raise ValueError("numeric decomposition has no exact expansion")
        out = BForm.zero(self.degree)
        for L, c in self.terms:
            out = out + BForm.linear_power(L.coords[0], L.coords[1], self.degree).scale(c)
        return out

    def to_json(self) -> dict:
        if self.exact:
            terms = [{"L": str(L), "coeff": str(c)} for L, c in self.terms]
        else:
            terms = [{"L": [[z.real, z.imag] for z in L], "coeff": [c.real, c.imag]} for L, c in self.terms]
        return {"exact": self.exact, "rank": self.rank, "residual": self.residual, "terms": terms}


class WildFormError(ValueError):
    """Raised for forms whose rank is deg g2 (no squarefree minimal annihilator)."""


def decompose_binary(F: BForm, mode: str = "exact", tol: float = 1e-9) -> Decomposition:
    """Waring decomposition supported on the roots of a squarefree minimal annihilator.

    Exact mode falls back to numeric when the roots do not lie in Q(i).
    """
    if mode not in ("exact", "numeric"):
        raise ValueError("mode must be 'exact' or 'numeric'")
    ann = annihilator_binary(F)
    G = squarefree_generator(ann)
    if G is None:
        raise WildFormError("wild case, not decomposable by this routine: "
                            f"minimal annihilator {ann.g1} is not squarefree")
    d = F.degree
    exact_roots, numeric_roots = bf.factor_roots(G)
    if mode == "exact" and not numeric_roots:
        Ls = [LinForm(p.coords) for p, _ in exact_roots]
        cols = [BForm.linear_power(L.coords[0], L.coords[1], d).coeffs for L in Ls]
        M = ExactMatrix.from_rows([[col[k] for col in cols] for k in range(d + 1)], len(Ls))
        c = solve_exact(M, list(F.coeffs))
        if c is None:
            raise ArithmeticError("decomposition system is inconsistent")
        return Decomposition(d, sorted(zip(Ls, c), key=lambda t: _lin_key(t[0])), exact=True)
    pts = [p.to_complex() for p, _ in exact_roots] + [p.to_complex() for p, _ in numeric_roots]
    A = np.array([[comb(d, k) * p[0] ** (d - k) * p[1] ** k for p in pts] for k in range(d + 1)],
                 dtype=complex)
    b = np.array([complex(c) for c in F.coeffs])
    sol = np.linalg.lstsq(A, b, rcond=None)[0]
    res = float(np.linalg.norm(A @ sol - b) / max(np.linalg.norm(b), 1.0))
    if res > tol:
        raise ArithmeticError(f"numeric decomposition residual {res:.3g} exceeds tol {tol:g}")
    terms = [(tuple(p), complex(c)) for p, c in zip(pts, sol)]
    return Decomposition(d, terms, exact=False, residual=res)


def _lin_key(L: LinForm):
    return tuple((-float(c.re), -float(c.im)) for c in L.point().coords)
