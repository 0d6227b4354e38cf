"""Rank along pencils F + lam * L^d of binary forms.

The catalecticant of L^d has rank one, so every minor of
cat(F + lam L^d, k) is affine in lam.  This makes the rank-drop candidates
exact, and the first annihilator g1(lam) (a vector of such minors) has
coefficients affine in lam as well.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath

from .apolarity import annihilator_binary, catalecticant, waring_rank_binary
from .eigen import eigen_poly_binary
from .exactnum import ExactMatrix, GaussRat, ONE, ZERO, det_exact, rank_exact, rref
from .forms import binary as bf
from .forms import univariate as up
from .forms.binary import BForm
from .forms.nform import LinForm, ProjPoint
from .locus import (
    COFINITE_MINUS,
    forbidden_contains,
    intersect_waring_eigen_binary,
    waring_locus_binary,
)

MP_DPS = 60


@dataclass
class RankPencilProfile:
    base_rank: int
    direction: LinForm
    generic_rank: int
    exceptional: list = field(default_factory=list)  # (lam, rank, "exact"|"numeric")
    method: str = "exact"

    def exceptional_pairs(self) -> list:
        return [(lam, rk) for lam, rk, _ in self.exceptional]

    def to_json(self) -> dict:
        def lam_json(lam):
            if isinstance(lam, GaussRat):
                return str(lam)
            z = complex(lam)
            return [z.real, z.imag]

        return {
            "base_rank": self.base_rank,
            "direction": str(self.direction),
            "generic_rank": self.generic_rank,
            "method": self.method,
            "exceptional": [{"lambda": lam_json(l), "rank": r, "certificate": c} for l, r, c in self.exceptional],
        }


def _rank(G: BForm) -> int:
    return 0 if G.is_zero() else waring_rank_binary(G)


def _member(F: BForm, Ld: BForm, lam) -> BForm:
    return F + Ld.scale(lam)


def _submatrix(M: ExactMatrix, rows, cols) -> ExactMatrix:
    return ExactMatrix.from_rows([[M[i, j] for j in cols] for i in rows], len(cols))


def _pivots(M: ExactMatrix) -> tuple[list, list]:
    """Row and column index sets of a nonsingular maximal minor."""
    _, cols = rref(M)
    _, rows = rref(M.transpose())
    return rows, cols


def _affine(f) -> tuple:
    """(f(0), f(1) - f(0)) for a function known to be affine."""
    a = f(ZERO)
    return a, f(ONE) - a


# --------------------------------------------------------------------------
# numeric Sylvester at high precision


def _mp(c: GaussRat):
    return mpmath.mpc(mpmath.mpf(int(c.re.numerator)) / int(c.re.denominator),
                      mpmath.mpf(int(c.im.numerator)) / int(c.im.denominator))


def _cat_mp(coeffs: list, k: int):
    d = len(coeffs) - 1
    M = mpmath.matrix(d - k + 1, k + 1)
    for p in range(d - k + 1):
        for q in range(k + 1):
            m = p + q
            w = mpmath.factorial(d - m) / mpmath.factorial(d - k - p) * mpmath.factorial(m) / mpmath.factorial(p)
            M[p, q] = coeffs[m] * w
    return M


def _mp_roots_binary(g: list, tol: float) -> list:
    """Roots of a binary form (plain coefficients) as unit complex vectors."""
    k = len(g) - 1
    scale = max(abs(c) for c in g)
    top = k
    while top > 0 and abs(g[top]) <= tol * scale:
        top -= 1
    out = [(mpmath.mpc(0), mpmath.mpc(1))] * (k - top)  # roots at x0 = 0, i.e. [0:1]
    if top > 0:
        for t in mpmath.polyroots(list(reversed(g[: top + 1])), maxsteps=400, extraprec=400):
            n = mpmath.sqrt(1 + abs(t) ** 2)
            out.append((1 / n, t / n))
    return out


def _min_separation(pts: list) -> float:
    best = mpmath.mpf(2)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            u, v = pts[i], pts[j]
            # chordal distance, in the cancellation-free form |u0 v1 - u1 v0|
            best = min(best, abs(u[0] * v[1] - u[1] * v[0]))
    return float(best)


def numeric_sylvester_rank(coeffs: list, tol: float = 1e-8) -> int:
    """Sylvester's algorithm on mp coefficients, deciding ranks and root
    coincidences to tolerance ``tol``."""
    d = len(coeffs) - 1
    if max(abs(c) for c in coeffs) == 0:
        return 0
    with mpmath.workdps(MP_DPS):
        for k in range(1, d + 2):
            if k + 1 > d - k + 1:
                break  # more columns than rows: a kernel exists
            M = _cat_mp(coeffs, k)
            s = mpmath.svd_c(M, compute_uv=False)
            if min(s) <= tol * max(s):
                break
        k1 = k
        if k1 == d + 2 - k1:
            return k1
        M = _cat_mp(coeffs, k1)
        if k1 + 1 > d - k1 + 1:
            # more columns than rows: kernel by SVD of the padded square matrix
            pad = mpmath.matrix(k1 + 1, k1 + 1)
            for i in range(M.rows):
                for j in range(M.cols):
                    pad[i, j] = M[i, j]
            M = pad
        _, S, V = mpmath.svd_c(M)
        idx = min(range(len(S)), key=lambda i: abs(S[i]))
        g = [mpmath.conj(V[idx, j]) for j in range(V.cols)]
        pts = _mp_roots_binary(g, tol)
        return k1 if _min_separation(pts) > tol else d + 2 - k1


# --------------------------------------------------------------------------
# pencils


def _candidates(F: BForm, L: LinForm, rng: random.Random):
    """Exact and numeric lam where the rank of F + lam L^d may differ from generic."""
    d = F.degree
    Ld = BForm.linear_power(L.coords[0], L.coords[1], d)
    lam0 = GaussRat(rng.randint(-50, 50), rng.randint(-50, 50)) / rng.randint(1, 30) + GaussRat(1, 0) / 7
    exact = {ZERO}
    numeric = []
    G0 = _member(F, Ld, lam0)
    for k in range(1, d // 2 + 2):
        if k > d:
            break
        CF, CL = catalecticant(F, k), catalecticant(Ld, k)
        C0 = catalecticant(G0, k)
        if rank_exact(C0) == 0:
            continue
        rows, cols = _pivots(C0)
        sF, sL = _submatrix(CF, rows, cols), _submatrix(CL, rows, cols)
        m0, m1 = _affine(lambda t: det_exact(sF + sL.scale(t)))
        if m1:
            exact.add(-m0 / m1)
    ann = annihilator_binary(G0)
    if not ann.balanced and bf.is_squarefree(ann.g1):
        k = ann.k1
        CF, CL = catalecticant(F, k), catalecticant(Ld, k)
        rows, _ = _pivots(catalecticant(G0, k))
        rows = rows[:k]
        sF, sL = _submatrix(CF, rows, range(k + 1)), _submatrix(CL, rows, range(k + 1))

        def cramer(t) -> list:
            M = sF + sL.scale(t)
            return [det_exact(_submatrix(M, range(k), [c for c in range(k + 1) if c != q])) * (-1) ** q
                    for q in range(k + 1)]

        v0, v1 = cramer(ZERO), cramer(ONE)
        v1 = [b - a for a, b in zip(v0, v1)]
        # lam with g1(lam) = 0 identically
        ratios = {-a / b for a, b in zip(v0, v1) if b}
        for lam in ratios:
            if all(not (a + b * lam) for a, b in zip(v0, v1)):
                exact.add(lam)

        def res_at(t) -> GaussRat:
            g = BForm([a + b * t for a, b in zip(v0, v1)])
            return bf.resultant(g.diff(0), g.diff(1))

        deg = 2 * (k - 1)
        ts = list(range(deg + 1))
        P = up.interpolate(ts, [res_at(GaussRat(t)) for t in ts])
        if P:
            ex, nu = bf.factor_roots(BForm.from_t_poly(P, up.degree(P)))
            for p, _ in ex:
                if p.coords[0]:
                    exact.add(p.coords[1] / p.coords[0])
            if nu:
                with mpmath.workdps(MP_DPS):
                    roots = mpmath.polyroots([_mp(c) for c in reversed(P)], maxsteps=400, extraprec=600)
                for z in roots:
                    zc = complex(z)
                    if all(abs(zc - complex(e)) > 1e-6 for e in exact):
                        numeric.append(z)
    return Ld, sorted(exact, key=lambda c: (float(c.re), float(c.im))), numeric


def rank_pencil(F: BForm, L: LinForm, mode: str = "exact", rng_seed: int = 0, tol: float = 1e-8) -> RankPencilProfile:
    """Generic rank of F + lam L^d and the finitely many lam where it differs."""
    if F.is_zero() or L.is_zero():
        raise ValueError("rank_pencil needs nonzero F and L")
    if mode not in ("exact", "numeric"):
        raise ValueError("mode must be 'exact' or 'numeric'")
    rng = random.Random(rng_seed)
    d = F.degree
    Ld = BForm.linear_power(L.coords[0], L.coords[1], d)

    def rand_lam():
        return GaussRat(rng.randint(-99, 99), rng.randint(-99, 99)) / rng.randint(1, 97)

    r1, r2 = _rank(_member(F, Ld, rand_lam())), _rank(_member(F, Ld, rand_lam()))
    generic = r1 if r1 == r2 else _rank(_member(F, Ld, rand_lam()))
    _, exact, numeric = _candidates(F, L, rng)
    base = _rank(F)
    out = []
    for lam in exact:
        rk = base if not lam else _rank(_member(F, Ld, lam))
        if rk != generic:
            out.append((lam, rk, "exact"))
    with mpmath.workdps(MP_DPS):
        Fm, Lm = [_mp(c) for c in F.coeffs], [_mp(c) for c in Ld.coeffs]
        for lam in numeric:
            rk = numeric_sylvester_rank([a + lam * b for a, b in zip(Fm, Lm)], tol)
            if rk != generic:
                out.append((lam, rk, "numeric"))
    method = "numeric" if any(c == "numeric" for *_, c in out) else "exact"
    return RankPencilProfile(base, L, generic, out, method)


# --------------------------------------------------------------------------
# random forms


def random_rank_r_binary(d: int, r: int, rng: random.Random, height: int = 5) -> tuple[BForm, list]:
    """Sum of r d-th powers of distinct random rational linear forms, certified
    to have rank r (resampled otherwise)."""
    while True:
        Ls, seen = [], set()
        while len(Ls) < r:
            a, b = rng.randint(-height, height), rng.randint(-height, height)
            if a == 0 and b == 0:
                continue
            p = ProjPoint((a, b))
            if p.coords in seen:
                continue
            seen.add(p.coords)
            Ls.append(LinForm((a, b)))
        F = BForm.zero(d)
        for L in Ls:
            F = F + BForm.linear_power(L.coords[0], L.coords[1], d)
        if not F.is_zero() and waring_rank_binary(F) == r:
            return F, Ls


def _random_forbidden_direction(F: BForm, rng: random.Random, desc) -> LinForm:
    while True:
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        if a == 0 and b == 0:
            continue
        p = ProjPoint((a, b))
        if forbidden_contains(F, p, desc):
            return LinForm((a, b))


def verify_subgeneric_growth(d: int, r: int, trials: int = 20, rng_seed: int = 0) -> dict:
    if not 2 * r < d + 1:
        raise ValueError("requires r < (d+1)/2")
    rng = random.Random(rng_seed)
    rows = []
    for t in range(trials):
        F, _ = random_rank_r_binary(d, r, rng)
        desc = waring_locus_binary(F)
        L0 = _random_forbidden_direction(F, rng, desc)
        prof = rank_pencil(F, L0, rng_seed=rng.randint(0, 10**9))
        ok = prof.generic_rank == r + 1 and prof.exceptional_pairs() == [(ZERO, r)]
        rows.append({"family": "subgeneric", "trial": t, "F": str(F), "direction": str(L0),
                     "generic_rank": prof.generic_rank,
                     "exceptional": prof.to_json()["exceptional"], "pass": ok})
    return {"d": d, "r": r, "trials": rows, "pass": all(x["pass"] for x in rows)}


def _eigen_points_mp(F: BForm) -> list:
    """Roots of D refined to MP_DPS digits, as (p0, p1)."""
    D = eigen_poly_binary(F)
    if D.is_zero():
        raise ValueError("D vanishes identically")
    pts = [(mpmath.mpc(0), mpmath.mpc(1))] * D.x0_multiplicity()
    t = D.t_poly()
    if len(t) > 1:
        with mpmath.workdps(MP_DPS):
            for z in mpmath.polyroots([_mp(c) for c in reversed(t)], maxsteps=400, extraprec=800):
                pts.append((mpmath.mpc(1), z))
    return pts


def growth_lambda(F: BForm, p: tuple, r: int, tol: float = 1e-8) -> dict:
    """Find lam with rk(F + lam L^d) = r + 1, where L is the unit representative of p."""
    d = F.degree
    k = r
    with mpmath.workdps(MP_DPS):
        nrm = mpmath.sqrt(abs(p[0]) ** 2 + abs(p[1]) ** 2)
        p = (p[0] / nrm, p[1] / nrm)
        Fm = [_mp(c) for c in F.coeffs]
        Lm = [mpmath.binomial(d, j) * p[0] ** (d - j) * p[1] ** j for j in range(d + 1)]
        # natural size of lam, used for the finite difference and the zero test
        scale = mpmath.norm(mpmath.matrix(Fm)) / mpmath.norm(mpmath.matrix(Lm))
        CF, CL = _cat_mp(Fm, k), _cat_mp(Lm, k)
        rows = CF.rows  # d - k + 1 = k for d = 2k - 1

        def cramer(t):
            M = CF + t * CL
            out = []
            for q in range(k + 1):
                sub = mpmath.matrix(rows, k)
                for i in range(rows):
                    cc = 0
                    for j in range(k + 1):
                        if j != q:
                            sub[i, cc] = M[i, j]
                            cc += 1
                out.append(mpmath.det(sub) * (-1) ** q)
            return out

        A = cramer(0)
        B = [(b - a) / scale for a, b in zip(A, cramer(scale))]

        # A + lam B has a double root at q iff the Jacobian of (A, B) vanishes
        # at q; then lam = -A(q)/B(q) (or the gradient ratio when B(q) = 0)
        def d0(g):
            return [(k - j) * g[j] for j in range(k)]

        def d1(g):
            return [(j + 1) * g[j + 1] for j in range(k)]

        def mul(u, v):
            out = [mpmath.mpc(0)] * (len(u) + len(v) - 1)
            for i, a in enumerate(u):
                for j, b in enumerate(v):
                    out[i + j] += a * b
            return out

        def at(g, q):
            m = len(g) - 1
            return sum(c * q[0] ** (m - j) * q[1] ** j for j, c in enumerate(g))

        J = [a - b for a, b in zip(mul(d0(A), d1(B)), mul(d1(A), d0(B)))]
        lams = []
        if max(abs(c) for c in J) > 0:
            for q in _mp_roots_binary(J, mpmath.mpf(10) ** (-MP_DPS // 2)):
                Bq = at(B, q)
                if abs(Bq) > mpmath.mpf(10) ** (-MP_DPS // 3) * max(abs(c) for c in B):
                    lams.append(-at(A, q) / Bq)
                else:
                    gA, gB = (at(d0(A), q), at(d1(A), q)), (at(d0(B), q), at(d1(B), q))
                    i = 0 if abs(gB[0]) >= abs(gB[1]) else 1
                    if abs(gB[i]):
                        lams.append(-gA[i] / gB[i])
        found = []
        for lam in lams:
            if abs(lam) < 1e-20 * scale:
                continue
            rk = numeric_sylvester_rank([a + lam * b for a, b in zip(Fm, Lm)], tol)
            found.append((complex(lam), rk))
    hits = [lam for lam, rk in found if rk == r + 1]
    return {"candidates": [[z.real, z.imag, rk] for z, rk in found], "lambda": hits[0] if hits else None}


def verify_generic_odd_growth(d: int, trials: int = 10, rng_seed: int = 0, tol: float = 1e-8) -> dict:
    if d < 3 or d % 2 == 0:
        raise ValueError("requires odd d >= 3")
    r = (d + 1) // 2
    rng = random.Random(rng_seed)
    rows, resampled = [], 0
    t = 0
    while t < trials:
        F, _ = random_rank_r_binary(d, r, rng)
        ann = annihilator_binary(F)
        D = eigen_poly_binary(F)
        if D.is_zero() or bf.gcd_binary(ann.g1, D).degree:
            resampled += 1
            continue
        per = []
        for p in _eigen_points_mp(F):
            with mpmath.workdps(MP_DPS):
                g1v = sum(_mp(c) * p[0] ** (ann.k1 - j) * p[1] ** j for j, c in enumerate(ann.g1.coeffs))
            forbidden = abs(g1v) > tol
            res = growth_lambda(F, p, r, tol)
            per.append({"point": [[complex(c).real, complex(c).imag] for c in p], "forbidden": forbidden,
                        "lambda": None if res["lambda"] is None else [res["lambda"].real, res["lambda"].imag],
                        "pass": forbidden and res["lambda"] is not None})
        rows.append({"family": "generic-odd", "trial": t, "F": str(F), "eigenvectors": per,
                     "pass": all(x["pass"] for x in per) and len(per) == d})
        t += 1
    return {"d": d, "r": r, "trials": rows, "resampled": resampled, "pass": all(x["pass"] for x in rows)}


def balanced_monomial_control(d: int, rng_seed: int = 0) -> dict:
    """F = L^(d/2) M^(d/2) for random non-orthogonal L, M: every eigenvector lies in W(F)."""
    if d % 2:
        raise ValueError("requires even d")
    rng = random.Random(rng_seed)
    while True:
        L = LinForm((rng.randint(-6, 6), rng.randint(-6, 6)))
        M = LinForm((rng.randint(-6, 6), rng.randint(-6, 6)))
        if L.is_zero() or M.is_zero() or not (L.coords[0] * M.coords[1] - L.coords[1] * M.coords[0]):
            continue
        if not L.dot(M) or L.is_isotropic() or M.is_isotropic():
            continue
        break
    k = d // 2
    F = BForm.linear_power(L.coords[0], L.coords[1], k) * BForm.linear_power(M.coords[0], M.coords[1], k)
    desc = waring_locus_binary(F)
    rep = intersect_waring_eigen_binary(F, desc=desc)
    sfD = bf.squarefree_part(eigen_poly_binary(F))
    A = rep.certificates.get("eig-part-in-W", rep.certificates.get("gcd(g1,D)"))
    contained = A.degree == sfD.degree
    return {"d": d, "L": str(L), "M": str(M), "F": str(F), "kind": desc.kind,
            "eig_in_W": contained, "eig_points": len(rep.support), "witnesses": len(rep.witnesses),
            "pass": contained}


# --------------------------------------------------------------------------
# the family c x^(d-1) y + (a x + b y)^d
#
# The displayed eigenpolynomial (ax+by)^(d-1)(ay-bx) + x^(d-2)((d-1)y^2 - x^2)
# is D/d for c = d; with c = 1 one gets D(1, 0) = -(d b a^(d-1) + 1) instead.
# Rank and forbidden locus do not depend on c != 0, so c = d is the default.


def example_family_form(d: int, a, b, c=None) -> BForm:
    a, b = GaussRat.coerce(a), GaussRat.coerce(b)
    c = GaussRat(d) if c is None else GaussRat.coerce(c)
    return BForm.monomial(d, 1, c) + BForm.linear_power(a, b, d)


def closed_form_D(d: int, a, b) -> BForm:
    """(ax+by)^(d-1)(ay-bx) + x^(d-2)((d-1)y^2 - x^2)."""
    a, b = GaussRat.coerce(a), GaussRat.coerce(b)
    return (BForm.linear_power(a, b, d - 1) * BForm([-b, a])
            + BForm.monomial(d - 2, 0) * BForm([-1, 0, d - 1]))


def analyze_example_family(d: int, a, b, rng_seed: int = 0) -> dict:
    a, b = GaussRat.coerce(a), GaussRat.coerce(b)
    if not b:
        raise ValueError("b must be nonzero")
    F = example_family_form(d, a, b)
    D = eigen_poly_binary(F)
    desc = waring_locus_binary(F)
    rep = intersect_waring_eigen_binary(F, desc=desc)
    at_x = D.evaluate(ONE, ZERO)
    at_l = D.evaluate(a, b)  # the point [a/b : 1] scaled by b
    cond_x = a ** (d - 1) == -ONE / b
    cond_l = (not a) or a * a == (d - 1) * b * b
    pen_x = rank_pencil(F, LinForm((ONE, ZERO)), rng_seed=rng_seed)
    pen_l = rank_pencil(F, LinForm((a, b)), rng_seed=rng_seed)
    minus_l_rank = _rank(F - BForm.linear_power(a, b, d))
    # [1:0] and [a/b:1] are always forbidden; for d >= 5 they are all of F(F),
    # for d = 4 the apolar ideal is a balanced pencil and R may add more points
    pair_in = all(forbidden_contains(F, ProjPoint(q), desc) for q in ((ONE, ZERO), (a, b)))
    pair_is_all = desc.kind == COFINITE_MINUS and desc.form.degree == 3 \
        and bf.divides(BForm([ZERO, ZERO, ONE]), desc.form) and not desc.form.evaluate(a, b)
    eig_in_forbidden = [str(e.point) for e in rep.support if e not in rep.witnesses]
    return {
        "d": d, "a": str(a), "b": str(b), "F": str(F), "D": str(D),
        "rank": desc.rank, "locus": desc.to_json(),
        "forbidden_contains_pair": pair_in, "forbidden_is_pair": pair_is_all,
        "D_matches_closed_form": D == closed_form_D(d, a, b).scale(d),
        "D_at_[1:0]": str(at_x), "cond_a^(d-1)=-1/b": cond_x, "equiv_[1:0]": (not at_x) == cond_x,
        "D_at_[a/b:1]": str(at_l), "cond_a=0_or_a^2=(d-1)b^2": cond_l, "equiv_[a/b:1]": (not at_l) == cond_l,
        "waring_cap_eig_nonempty": rep.nonempty, "eig_in_forbidden": eig_in_forbidden,
        "pencil_x": pen_x.to_json(), "pencil_ax+by": pen_l.to_json(),
        "rank_minus_(ax+by)^d": minus_l_rank,
    }


def verify_example_identities(d: int) -> dict:
    """The displayed identities as polynomial identities in (a, b).

    Every quantity compared is a polynomial of degree <= 2d in each of a, b,
    so agreement on a (2d+1) x (2d+1) integer grid proves the identity.
    Checked: D = d * closed form and D(1, 0) = -d (b a^(d-1) + 1) for c = d,
    D(a, b) = d a^(d-2)((d-1) b^2 - a^2), and D(1, 0) = -(d b a^(d-1) + 1)
    for c = 1.
    """
    n = 2 * d + 1
    bad = []
    for ai in range(n):
        for bi in range(n):
            a, b = GaussRat(ai - d), GaussRat(bi - d)
            D = eigen_poly_binary(example_family_form(d, a, b))
            if D != closed_form_D(d, a, b).scale(d):
                bad.append(("closed form", str(a), str(b)))
            if D.evaluate(ONE, ZERO) != -d * (b * a ** (d - 1) + 1):
                bad.append(("[1:0]", str(a), str(b)))
            if D.evaluate(a, b) != d * a ** (d - 2) * ((d - 1) * b * b - a * a):
                bad.append(("[a/b:1]", str(a), str(b)))
            D1 = eigen_poly_binary(example_family_form(d, a, b, 1))
            if D1.evaluate(ONE, ZERO) != -(d * b * a ** (d - 1) + 1):
                bad.append(("[1:0], c=1", str(a), str(b)))
    return {"d": d, "grid": n * n, "failures": bad, "pass": not bad}
