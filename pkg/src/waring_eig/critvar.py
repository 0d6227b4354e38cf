"""The critical Waring variety WE_{n,r}^d on the secant parameter space.

Parameters ``alpha[i][j]`` (i = 1..r-1, j = 0..n) describe
``F = x0^d + sum_i (alpha[i][0] x0 + ... + alpha[i][n] xn)^d``.  As variables
of an NForm, alpha[i][j] (i counted from 0) has index ``i*(n+1) + j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .apolarity import waring_rank_binary
from .exactnum import ExactMatrix, GaussRat, ONE, ZERO, kernel_basis, rank_exact
from .forms import binary as bf
from .forms import univariate as up
from .forms.binary import BForm
from .forms.nform import LinForm, NForm, ProjPoint, bw_inner, compositions, multinomial
from .forms.ortho import OrthoMatrix

SVD_TOL = 1e-8


@dataclass(frozen=True)
class SecantParams:
    n: int
    r: int
    d: int
    alpha: tuple  # (r-1) rows of n+1 GaussRat

    def __post_init__(self):
        if len(self.alpha) != self.r - 1 or any(len(row) != self.n + 1 for row in self.alpha):
            raise ValueError("alpha must be (r-1) x (n+1)")

    @classmethod
    def from_rows(cls, n: int, r: int, d: int, rows: Sequence[Sequence]) -> "SecantParams":
        return cls(n, r, d, tuple(tuple(GaussRat.coerce(c) for c in row) for row in rows))

    def flat(self) -> list:
        return [c for row in self.alpha for c in row]

    def linear_forms(self) -> list[LinForm]:
        return [LinForm(row) for row in self.alpha]

    def tail(self) -> NForm:
        out = NForm.zero(self.n + 1, self.d)
        for L in self.linear_forms():
            if not L.is_zero():
                out = out + L.power(self.d)
        return out

    def form(self) -> NForm:
        x0 = NForm.variable(self.n + 1, 0)
        return x0 ** self.d + self.tail()

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "d": self.d, "alpha": [[str(c) for c in row] for row in self.alpha]}


@dataclass(frozen=True)
class WEEquations:
    n: int
    r: int
    d: int
    gs: tuple
    g0prime: NForm

    @property
    def nparams(self) -> int:
        return (self.n + 1) * (self.r - 1)


def _var(n: int, i: int, j: int) -> int:
    return i * (n + 1) + j


def we_equations(n: int, r: int, d: int) -> WEEquations:
    """g_j = sum_i alpha_{i,0}^(d-1) alpha_{i,j} (j = 1..n) and g0' = sum_i alpha_{i,0}^d."""
    if n < 1 or r < 2 or d < 2:
        raise ValueError("need n >= 1, r >= 2, d >= 2")
    N = (n + 1) * (r - 1)

    def mono(exps: dict) -> NForm:
        a = [0] * N
        for k, e in exps.items():
            a[k] += e
        return NForm.monomial(tuple(a))

    gs = []
    for j in range(1, n + 1):
        g = NForm.zero(N, d)
        for i in range(r - 1):
            g = g + mono({_var(n, i, 0): d - 1, _var(n, i, j): 1})
        gs.append(g)
    g0 = NForm.zero(N, d)
    for i in range(r - 1):
        g0 = g0 + mono({_var(n, i, 0): d})
    return WEEquations(n, r, d, tuple(gs), g0)


def h_pairing(G: NForm, i: int) -> GaussRat:
    """<x0^(d-1) x_i, G>: the functional cutting out H_i."""
    d, n = G.degree, G.nvars
    a = [0] * n
    a[0] += d - 1
    a[i] += 1
    return bw_inner(NForm.monomial(tuple(a)), G)


def is_eigen_x0(params: SecantParams) -> bool:
    """x0 is an eigenvector of the expanded form iff every g_j vanishes at alpha."""
    eqs = we_equations(params.n, params.r, params.d)
    pt = params.flat()
    return all(not g.evaluate(pt) for g in eqs.gs)


# --------------------------------------------------------------------------
# samplers


class SamplerError(ValueError):
    pass


def _rand_rat(rng: random.Random, height: int = 7) -> GaussRat:
    while True:
        v = GaussRat(rng.randint(-height, height)) / rng.randint(1, height)
        if v:
            return v


@dataclass
class Sample:
    params: SecantParams
    rank: int | None = None
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"params": self.params.to_json(), "rank": self.rank, "certificate": self.certificate}


def _roots_of_unity_rows(r: int) -> list | None:
    xi = {2: [GaussRat(-1), ONE], 4: [GaussRat(0, 1), GaussRat(-1), GaussRat(0, -1), ONE]}.get(r - 1)
    return None if xi is None else [[ONE, z] for z in xi]


def sample_X_x0(n: int, r: int, d: int, rng_seed: int = 0, method: str = "random",
                max_tries: int = 200) -> Sample:
    """A rational point of V(g_1..g_n) with x0 in W(F) cap Eig(F).

    ``method="random"`` fixes alpha_{i,0} = 1 and draws columns of distinct
    nonzero rationals summing to zero; ``method="roots"`` uses the rows
    (1, xi^i) for a primitive (r-1)-st root of unity xi in Q(i) (r-1 in {2, 4}).
    For r = 2 no point with alpha_{1,0} != 0 and distinct support exists;
    the sampler returns alpha_1 = (0, c, ...) instead.
    For n = 1 the expanded form is certified to have rank r by Sylvester.
    """
    if r < 2 or n < 1 or d < 2:
        raise SamplerError("need n >= 1, r >= 2, d >= 2")
    if n == 1 and 2 * r > d + 1:
        raise SamplerError("rank certificate needs r <= (d+1)/2")
    rng = random.Random(rng_seed)
    for _ in range(max_tries):
        if r == 2:
            rows = [[ZERO] + [_rand_rat(rng) for _ in range(n)]]
        elif method == "roots":
            rows = _roots_of_unity_rows(r)
            if rows is None or n != 1:
                raise SamplerError("roots-of-unity rows exist in Q(i) only for n = 1, r-1 in {2, 4}")
        else:
            rows = [[ONE] for _ in range(r - 1)]
            for _j in range(n):
                col = []
                while len(col) < r - 2:
                    v = _rand_rat(rng)
                    if v not in col:
                        col.append(v)
                col.append(-sum(col, ZERO))
                for i in range(r - 1):
                    rows[i].append(col[i])
        params = SecantParams.from_rows(n, r, d, rows)
        if not is_eigen_x0(params):
            raise ArithmeticError("sampler produced a point off V(g)")
        if n == 1:
            pts = [(ONE, ZERO)] + [tuple(row) for row in params.alpha]
            if len({ProjPoint(p).coords for p in pts}) != r:
                continue
            F = BForm.from_nform(params.form())
            rank = waring_rank_binary(F)
            if rank != r:
                continue
            return Sample(params, rank, {"distinct_points": r, "sylvester_rank": rank})
        if r > 2 and any(len(set(col)) < len(col) for col in list(zip(*params.alpha))[1:]):
            continue
        return Sample(params, None, {})
    raise SamplerError("could not draw a valid sample")


def sample_generic_X_x0(n: int, r: int, d: int, rng_seed: int = 0, smooth: bool = False) -> SecantParams:
    """Random point of V(g) with random nonzero alpha_{i,0}.

    For r = 2, V(g) = {alpha_{1,0} = 0} cup {alpha_{1,1..n} = 0}; the first
    component carries the rank-2 forms and is returned by default, while
    ``smooth=True`` returns a point (c, 0, ..., 0) of the second one, where
    the Jacobian has full rank.
    """
    rng = random.Random(rng_seed)
    if r == 2:
        if smooth:
            return SecantParams.from_rows(n, r, d, [[_rand_rat(rng)] + [ZERO] * n])
        return SecantParams.from_rows(n, r, d, [[ZERO] + [_rand_rat(rng) for _ in range(n)]])
    # alpha_{.,0} of moderate size, then each column alpha_{.,j} is a random
    # vector projected onto the hyperplane orthogonal to (alpha_{i,0}^(d-1))_i
    for _ in range(200):
        heads = [GaussRat(rng.choice((-1, 1)) * rng.randint(4, 12)) / 8 for _ in range(r - 1)]
        w = [h ** (d - 1) for h in heads]
        ww = sum((x * x for x in w), ZERO)
        rows = [[h] for h in heads]
        for _j in range(n):
            v = [GaussRat(rng.randint(-8, 8)) / 4 for _ in range(r - 1)]
            t = sum((a * b for a, b in zip(w, v)), ZERO) / ww
            for i in range(r - 1):
                rows[i].append(v[i] - t * w[i])
        pts = [(ONE,) + (ZERO,) * n] + [tuple(row) for row in rows]
        if all(any(row[1:]) for row in rows) and len({ProjPoint(q).coords for q in pts}) == r:
            break
    else:
        raise SamplerError("could not draw distinct points")
    params = SecantParams.from_rows(n, r, d, rows)
    assert is_eigen_x0(params)
    return params


# --------------------------------------------------------------------------
# certificates


def jacobian_at(eqs: WEEquations, point: Sequence, with_g0prime: bool = False) -> ExactMatrix:
    polys = list(eqs.gs) + ([eqs.g0prime] if with_g0prime else [])
    pt = [GaussRat.coerce(c) for c in point]
    rows = [[g.diff(k).evaluate(pt) if g.degree else ZERO for k in range(eqs.nparams)] for g in polys]
    return ExactMatrix.from_rows(rows, eqs.nparams)


def jacobian_rank_at(eqs: WEEquations, point, with_g0prime: bool = False) -> int:
    if isinstance(point, SecantParams):
        point = point.flat()
    return rank_exact(jacobian_at(eqs, point, with_g0prime))


def _random_point(rng: random.Random, N: int) -> list:
    return [GaussRat(rng.randint(-9, 9)) / rng.randint(1, 5) for _ in range(N)]


def degree_check_line(n: int, d: int, r: int, rng_seed: int = 0) -> dict:
    """Restrict g_1 to a random projective line of parameter space and count roots."""
    if n != 1:
        raise ValueError("degree_check_line is the n = 1 check")
    eqs = we_equations(n, r, d)
    rng = random.Random(rng_seed)
    N = eqs.nparams
    for _ in range(50):
        P, Q = _random_point(rng, N), _random_point(rng, N)
        images = [NForm.linear([p, q]) for p, q in zip(P, Q)]
        g = BForm.from_nform(eqs.gs[0].substitute(images))
        if g.is_zero():
            continue
        roots = bf.roots_numeric(g)
        count = sum(m for _, m in roots)
        return {"n": n, "r": r, "d": d, "seed": rng_seed, "check": "degree", "value": count,
                "expected": d, "pass": count == d,
                "evidence": {"restricted": str(g), "distinct_roots": len(roots)}}
    raise ArithmeticError("every random line lies in V(g_1)")


def degree_check_surface(n: int, d: int, r: int, rng_seed: int = 0) -> dict:
    """Restrict (g_1, g_2) to a random plane, eliminate one coordinate by an
    exact resultant and count the roots of the degree-d^2 eliminant."""
    if n != 2:
        raise ValueError("degree_check_surface is the n = 2 check")
    eqs = we_equations(n, r, d)
    rng = random.Random(rng_seed)
    N = eqs.nparams
    target = d * d
    for _ in range(50):
        P, Q, S = (_random_point(rng, N) for _ in range(3))
        images = [NForm.linear([p, q, s]) for p, q, s in zip(P, Q, S)]
        h1, h2 = (g.substitute(images) for g in eqs.gs)

        def in_w(h: NForm, u, v) -> list:
            # coefficients in w (ascending) of h(u, v, w)
            out = [ZERO] * (d + 1)
            for a, c in h.items():
                out[a[2]] = out[a[2]] + c * u ** a[0] * v ** a[1]
            return out

        ts = list(range(target + 1))
        vals = []
        ok = True
        for t in ts:
            p1, p2 = in_w(h1, ONE, GaussRat(t)), in_w(h2, ONE, GaussRat(t))
            if not p1[d] or not p2[d]:
                ok = False
                break
            vals.append(up.resultant(p1, p2))
        if not ok:
            continue
        res = up.interpolate(ts, vals)
        if not res:
            continue
        R = BForm.from_t_poly(res, target)
        roots = bf.roots_numeric(R)
        count = sum(m for _, m in roots)
        return {"n": n, "r": r, "d": d, "seed": rng_seed, "check": "degree", "value": count,
                "expected": target, "pass": count == target,
                "evidence": {"eliminant_degree": R.degree, "distinct_roots": len(roots)}}
    raise ArithmeticError("could not find a transversal random plane")


# --------------------------------------------------------------------------
# hyperplane functionals


@dataclass(frozen=True)
class HyperplaneFunctional:
    """Linear functional F -> sum_alpha coeffs[alpha] F_alpha on plain coefficients."""

    nvars: int
    degree: int
    coeffs: dict
    monomial_coeffs: dict

    def __call__(self, F: NForm) -> GaussRat:
        return sum((c * F.coeff(a) for a, c in self.coeffs.items()), ZERO)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "degree": self.degree,
                "coeffs": [{"alpha": list(a), "value": str(c)} for a, c in sorted(self.coeffs.items(), reverse=True)]}


def h_tilde(gmat: OrthoMatrix, i: int, d: int) -> HyperplaneFunctional:
    """Functional F -> <F, (g x0)^(d-1) (g x_i)> (Bombieri-Weyl pairing).

    ``monomial_coeffs`` holds the monomial expansion P_alpha of
    (g x0)^(d-1)(g x_i); the functional weights it by binom(d, alpha)^(-1).
    """
    n = gmat.size
    if not 1 <= i < n:
        raise ValueError("i ranges over 1..n")
    col = lambda k: LinForm(gmat[l, k] for l in range(n))
    P = col(0).power(d - 1) * col(i).to_nform()
    mono = {a: c for a, c in P.items()}
    coeffs = {a: c / multinomial(a) for a, c in mono.items()}
    return HyperplaneFunctional(n, d, coeffs, mono)


def h_tilde_literal(gmat: OrthoMatrix, i: int, d: int) -> dict:
    """sum_l binom(d-1; alpha - e_l) g_0^(alpha - e_l) g_{l,i} for every |alpha| = d."""
    n = gmat.size
    g0 = [gmat[l, 0] for l in range(n)]
    out = {}
    for a in compositions(d, n):
        s = ZERO
        for l in range(n):
            if a[l] == 0:
                continue
            b = list(a)
            b[l] -= 1
            term = GaussRat(multinomial(b)) * gmat[l, i]
            for k, e in enumerate(b):
                if e:
                    term = term * g0[k] ** e
            s = s + term
        if s:
            out[tuple(a)] = s
    return out


# --------------------------------------------------------------------------
# membership and dimension


@dataclass
class WEMembership:
    member: bool
    exact: bool
    kind: str
    certificate: str

    def to_json(self) -> dict:
        return {"member": self.member, "exact": self.exact, "kind": self.kind, "certificate": self.certificate}


def we_membership_binary(F: BForm) -> WEMembership:
    """W(F) cap Eig(F) != {} decided exactly on the identifiable stratum."""
    from .locus import FINITE, intersect_waring_eigen_binary, waring_locus_binary

    desc = waring_locus_binary(F)
    rep = intersect_waring_eigen_binary(F, desc=desc)
    cert = rep.certificates.get("gcd(g1,D)", rep.certificates.get("eig-part-in-W"))
    return WEMembership(rep.nonempty, desc.kind == FINITE, desc.kind, str(cert))


def _tangent_generators(params: SecantParams) -> list[np.ndarray]:
    """Tangent vectors of (A, lambda, alpha, c) -> c A (lambda x0^d + sum L_i^d)
    at A = I, lambda = 1, c = 1, alpha restricted to g = 0."""
    n, r, d = params.n, params.r, params.d
    N = n + 1
    basis = list(compositions(d, N))

    def vec(G: NForm) -> np.ndarray:
        return np.array([complex(G.coeff(a)) for a in basis])

    F = params.form()
    Ls = params.linear_forms()
    gens = [vec(F), vec(NForm.variable(N, 0) ** d)]  # cone scaling, lambda
    # alpha tangent directions: kernel of the constraint Jacobian
    eqs = we_equations(n, r, d)
    if r == 2:
        # V(g) near alpha_{1,0} = 0 is the reduced component alpha_{1,0} = 0
        J = ExactMatrix.from_rows([[ONE] + [ZERO] * n], eqs.nparams)
    else:
        J = jacobian_at(eqs, params.flat())
    partials = []
    for i, L in enumerate(Ls):
        Ld1 = L.power(d - 1) if d > 1 else NForm.constant(N, 1)
        for j in range(N):
            partials.append((Ld1 * NForm.variable(N, j)).scale(d))
    for v in kernel_basis(J):
        G = NForm.zero(N, d)
        for c, P in zip(v, partials):
            if c:
                G = G + P.scale(c)
        gens.append(vec(G))
    # Lie algebra of O(n+1): E skew, d/dt F(exp(tE)^T x) = grad F . (E^T x)
    grad = F.gradient()
    for a in range(N):
        for b in range(a + 1, N):
            # E = e_a e_b^T - e_b e_a^T; (E^T x)_a = -x_b, (E^T x)_b = x_a
            G = grad[b] * NForm.variable(N, a) - grad[a] * NForm.variable(N, b)
            gens.append(vec(G))
    return gens


def dim_estimate_we(n: int, r: int, d: int, rng_seed: int = 0, tol: float = SVD_TOL) -> dict:
    """Numerical dimension of the cone over WE_{n,r}^d at a random smooth sample."""
    params = sample_generic_X_x0(n, r, d, rng_seed)
    gens = _tangent_generators(params)
    M = np.column_stack([g / np.linalg.norm(g) for g in gens if np.linalg.norm(g) > 0])
    s = np.linalg.svd(M, compute_uv=False)
    if not np.all(np.isfinite(s)):
        raise ArithmeticError("non-finite singular values")
    rank = int(np.sum(s > tol * s[0]))
    retained = s[rank - 1]
    discarded = s[rank] if rank < len(s) else 0.0
    gap = float(retained / discarded) if discarded > 0 else float("inf")
    expected = 2 * (r - 1) + 1 if n == 1 else None
    lower = (r - 1) * (n + 1) + 1 if n > 1 else None
    return {
        "n": n, "r": r, "d": d, "seed": rng_seed, "check": "dimension",
        "cone_dimension": rank, "projective_dimension": rank - 1,
        "expected_cone": expected, "lower_bound_cone": lower,
        "generators": len(gens), "singular_values": [float(x) for x in s],
        "gap": gap, "tol": tol,
        "params": params.to_json(),
    }
