"""Waring and forbidden loci of binary forms and monomials, and W(F) cap Eig(F).

Binary cases follow Sylvester's regimes for Ann(F) = (g1, g2):

* ``Finite``: g1 squarefree, deg g1 < deg g2; W(F) is the root set of g1.
* ``CofiniteMinus``: g1 not squarefree, deg g1 < deg g2; F(F) is the root set of g1.
* ``Balanced``: deg g1 = deg g2 = (d+2)/2.  Through every point p passes exactly
  one pencil member G_p = g2(p) g1 - g1(p) g2, and p is forbidden iff G_p has a
  repeated root.  R(p) = disc(G_p) cuts out the forbidden locus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .apolarity import AnnPair, annihilator_binary, waring_rank_binary
from .eigen import eigen_ideal, eigen_poly_binary, eigen_support_binary, monomial_form
from .exactnum import ONE, ZERO, GaussRat
from .forms import binary as bf
from .forms import univariate as up
from .forms.binary import BForm
from .forms.nform import ProjPoint

FINITE = "Finite"
COFINITE_MINUS = "CofiniteMinus"
BALANCED = "Balanced"
MONOMIAL_COMPLEMENT = "MonomialComplement"


@dataclass
class LocusDesc:
    kind: str
    ann: AnnPair | None = None
    form: BForm | None = None
    R: BForm | None = None
    m: int | None = None
    rank: int | None = None

    def describe(self) -> str:
        if self.kind == FINITE:
            return f"W(F) = roots of {self.form}"
        if self.kind == COFINITE_MINUS:
            return f"F(F) = roots of {self.form}; W(F) is the complement"
        if self.kind == BALANCED:
            return f"F(F) = roots of R = disc(G_p), pencil ({self.ann.g1}, {self.ann.g2})"
        return f"F(F) = V(x0*...*x{self.m})"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "description": self.describe(), "rank": self.rank}
        if self.ann is not None:
            out["ann"] = self.ann.to_json()
        if self.form is not None:
            out["form"] = str(self.form)
        if self.R is not None:
            out["R"] = str(self.R)
        if self.m is not None:
            out["m"] = self.m
        return out


def waring_locus_binary(F: BForm, ann: AnnPair | None = None) -> LocusDesc:
    if F.is_zero():
        raise ValueError("Waring locus of the zero form")
    if F.degree < 2:
        raise ValueError("Waring loci need degree >= 2")
    ann = ann or annihilator_binary(F)
    rank = waring_rank_binary(F, ann)
    if ann.balanced:
        return LocusDesc(BALANCED, ann, R=balanced_forbidden_form(ann.g1, ann.g2), rank=rank)
    if bf.is_squarefree(ann.g1):
        return LocusDesc(FINITE, ann, form=ann.g1, rank=rank)
    return LocusDesc(COFINITE_MINUS, ann, form=ann.g1, rank=rank)


# --------------------------------------------------------------------------
# balanced case


def pencil_through(g1: BForm, g2: BForm, p) -> BForm:
    """G_p = g2(p) g1 - g1(p) g2, the pencil member vanishing at p."""
    p0, p1 = p
    return g1.scale(g2.evaluate(p0, p1)) - g2.scale(g1.evaluate(p0, p1))


def balanced_forbidden_form(g1: BForm, g2: BForm) -> BForm:
    """R with R(p) = disc(G_p), a form of degree 2k(k-1), k = deg g1.

    Computed by exact interpolation of t -> disc(G_(1,t)) and homogenization.
    """
    k = g1.degree
    if g2.degree != k:
        raise ValueError("balanced pencil needs deg g1 = deg g2")
    if bf.gcd_binary(g1, g2).degree:
        raise ValueError("pencil has a base point; not an apolar pencil")
    deg_r = 2 * k * (k - 1)
    if deg_r == 0:
        return BForm([ONE])
    ts = list(range(deg_r + 1))
    vals = [bf.discriminant(pencil_through(g1, g2, (ONE, GaussRat(t)))) for t in ts]
    R = BForm.from_t_poly(up.interpolate(ts, vals), deg_r)
    if R.is_zero():
        raise ValueError("pencil has no squarefree member")
    return R


# --------------------------------------------------------------------------
# membership


def forbidden_contains(F: BForm, p: ProjPoint, desc: LocusDesc | None = None, tol: float = 1e-7) -> bool:
    """Exact membership of p in F(F) for exact p; residual test for numeric p."""
    desc = desc or waring_locus_binary(F)
    if p.exact:
        p0, p1 = p.coords
        if desc.kind == FINITE:
            return bool(desc.form.evaluate(p0, p1))
        if desc.kind == COFINITE_MINUS:
            return not desc.form.evaluate(p0, p1)
        if desc.kind == BALANCED:
            return not bf.is_squarefree(pencil_through(desc.ann.g1, desc.ann.g2, (p0, p1)))
        raise ValueError("use monomial_loci for monomials")
    if desc.kind == FINITE:
        return bf.residual(desc.form, p) > tol
    if desc.kind == COFINITE_MINUS:
        return bf.residual(desc.form, p) <= tol
    if desc.kind == BALANCED:
        return bf.residual(desc.R, p) <= tol
    raise ValueError("use monomial_loci for monomials")


@dataclass
class IntersectionReport:
    nonempty: bool
    witnesses: list
    method: str
    kind: str
    certificates: dict = field(default_factory=dict)
    support: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "nonempty": self.nonempty,
            "method": self.method,
            "kind": self.kind,
            "witnesses": [w.to_json() for w in self.witnesses],
            "certificates": {k: str(v) for k, v in self.certificates.items()},
        }


def _closer_root(p: ProjPoint, A: BForm, B: BForm) -> bool:
    """For p a root of A*B with A, B coprime: True iff p is a root of A."""
    if A.degree == 0:
        return False
    if B.degree == 0:
        return True
    return bf.residual(A, p) <= bf.residual(B, p)


def intersect_waring_eigen_binary(F: BForm, mode: str = "exact", tol: float = 1e-7,
                                  desc: LocusDesc | None = None) -> IntersectionReport:
    """Decide W(F) cap Eig(F) != {} and list the witnesses.

    Exact mode splits sf(D) = A * B where A collects the roots of D in W(F)
    (A = gcd(sf D, g1) in the Finite case, sf(D) / gcd(sf D, g1) or
    sf(D) / gcd(sf D, R) otherwise).  The verdict is exact: nonempty iff
    deg A > 0.  Numeric mode tests each numeric eigenpoint separately.
    """
    desc = desc or waring_locus_binary(F)
    D = eigen_poly_binary(F)
    support = eigen_support_binary(F, "numeric" if mode == "numeric" else "exact")
    if mode == "numeric":
        wit = [e for e in support if not forbidden_contains(F, e.point, desc, tol)]
        return IntersectionReport(bool(wit), wit, "pointwise-numeric", desc.kind, {"D": D}, support)
    if mode != "exact":
        raise ValueError("mode must be 'exact' or 'numeric'")
    sfD = bf.squarefree_part(D)
    if desc.kind == FINITE:
        A = bf.gcd_binary(sfD, desc.form)
        certs = {"D": D, "gcd(g1,D)": A}
    else:
        phi = desc.form if desc.kind == COFINITE_MINUS else desc.R
        G = bf.gcd_binary(sfD, phi)
        A = bf.divide_exact(sfD, G).normalized()
        certs = {"D": D, "gcd(sf(D),forbidden)": G, "eig-part-in-W": A}
    B = bf.divide_exact(sfD, A)
    wit = []
    for e in support:
        if e.point.exact:
            inside = not A.at(e.point)
        else:
            inside = _closer_root(e.point, A, B)
        if inside:
            wit.append(e)
    nonempty = A.degree > 0
    if nonempty != bool(wit):
        raise ArithmeticError("witness classification disagrees with the exact verdict")
    if desc.kind == BALANCED:
        for e in wit:
            if e.point.exact and forbidden_contains(F, e.point, desc):
                raise ArithmeticError("balanced cross-check failed at " + str(e.point))
    return IntersectionReport(nonempty, wit, "exact-gcd", desc.kind, certs, support)


def eig_count_sufficiency(F: BForm, rank: int | None = None) -> bool:
    """Sufficient test: Eig(F) has at least d - rk(F) + 2 distinct points."""
    d = F.degree
    rank = rank if rank is not None else waring_rank_binary(F)
    if not 2 * rank > d + 1:
        raise ValueError("requires rank > (d+1)/2")
    D = eigen_poly_binary(F)
    if D.is_zero():
        return True
    return bf.distinct_root_count(D) >= d - rank + 2


# --------------------------------------------------------------------------
# monomials


@dataclass
class MonomialLoci:
    exponents: tuple
    m: int
    regime: str
    forbidden: list  # hyperplanes x_i = 0, i <= m
    intersection: list  # for d0 = 1: pairs (i, j) with H_{i,j} = V(x_i, x_j)

    def to_json(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "m": self.m,
            "regime": self.regime,
            "forbidden": [f"x{i}=0" for i in self.forbidden],
            "eig_cap_forbidden": (
                "all of F(F)" if self.regime == "d0>=2"
                else [f"V(x{i},x{j})" for i, j in self.intersection]
            ),
            "waring_cap_eig_nonempty": True,
        }


def monomial_loci(exponents: Sequence[int]) -> MonomialLoci:
    e = tuple(int(x) for x in exponents)
    if len(e) < 3:
        raise ValueError("monomial loci need n >= 2; use the binary routines")
    if min(e) < 1 or list(e) != sorted(e):
        raise ValueError("exponents must satisfy 1 <= d_0 <= ... <= d_n")
    m = max(i for i in range(len(e)) if e[i] == e[0])
    if e[0] >= 2:
        return MonomialLoci(e, m, "d0>=2", list(range(m + 1)), [])
    pairs = sorted({tuple(sorted((i, j))) for i in range(m + 1) for j in range(len(e)) if j != i})
    return MonomialLoci(e, m, "d0=1", list(range(m + 1)), pairs)


def _rand_nonzero(rng: random.Random, height: int = 9) -> GaussRat:
    while True:
        v = GaussRat(rng.randint(-height, height)) / rng.randint(1, height)
        if v:
            return v


def verify_monomial_loci(exponents: Sequence[int], samples: int = 50, seed: int = 0) -> dict:
    """Point-sampling check of the monomial loci description against eigen_ideal."""
    info = monomial_loci(exponents)
    n = len(info.exponents)
    I = eigen_ideal(monomial_form(info.exponents))
    rng = random.Random(seed)
    fails: list = []
    checked = 0

    def point(zeros):
        return [ZERO if k in zeros else _rand_nonzero(rng) for k in range(n)]

    for _ in range(samples):
        i = rng.choice(info.forbidden)
        if info.regime == "d0>=2":
            p = point({i})
            if not I.vanishes_at(p):
                fails.append(("forbidden point not an eigenvector", [str(c) for c in p]))
        else:
            p = point({i})
            if I.vanishes_at(p):
                fails.append(("generic point of a single hyperplane is an eigenvector", [str(c) for c in p]))
            a, b = rng.choice(info.intersection)
            q = point({a, b})
            if not I.vanishes_at(q):
                fails.append(("point of V(x_i,x_j) is not an eigenvector", [str(c) for c in q]))
        checked += 1
    # (sqrt d_0, ..., sqrt d_n) has no zero coordinate, so it lies in W(F)
    w = [complex(k) ** 0.5 for k in info.exponents]
    scale = max(abs(complex(c)) for g in I.generators for _, c in g.items())
    worst = max(abs(complex(v)) for v in I.evaluate(w)) / scale
    if worst > 1e-9:
        fails.append(("sqrt(d) witness is not an eigenvector", worst))
    return {"exponents": list(info.exponents), "regime": info.regime, "m": info.m,
            "samples": checked, "waring_witness_residual": worst, "failures": fails,
            "pass": not fails}
