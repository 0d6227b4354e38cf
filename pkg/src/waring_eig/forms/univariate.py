"""Dense univariate polynomials over Q(i).

A polynomial is a list of GaussRat, ascending powers, with no trailing zeros;
the zero polynomial is ``[]``.  These helpers back the binary-form toolkit
(dehomogenized forms) and the pencil parameter in the rank dynamics code.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..exactnum import ONE, ZERO, GaussRat, det_exact, ExactMatrix

Poly = list


def strip(p: Sequence) -> Poly:
    p = [GaussRat.coerce(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return strip([(p[k] if k < len(p) else ZERO) + (q[k] if k < len(q) else ZERO) for k in range(n)])


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return strip([(p[k] if k < len(p) else ZERO) - (q[k] if k < len(q) else ZERO) for k in range(n)])


def scale(p: Poly, c) -> Poly:
    c = GaussRat.coerce(c)
    return strip([c * a for a in p])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return strip(out)


def power(p: Poly, e: int) -> Poly:
    result, base = [ONE], p
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    inv = q[-1].inverse()
    quo = [ZERO] * max(len(p) - dq, 0)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] * inv
        quo[k] = c
        for j, b in enumerate(q):
            if b:
                r[j + k] = r[j + k] - c * b
        r = strip(r)
    return strip(quo), r


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def monic(p: Poly) -> Poly:
    if not p:
        return []
    inv = p[-1].inverse()
    return [c * inv for c in p]


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd (``[]`` when both are zero)."""
    a, b = strip(p), strip(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def deriv(p: Poly) -> Poly:
    return strip([k * p[k] for k in range(1, len(p))])


def evaluate(p: Poly, x) -> GaussRat:
    x = GaussRat.coerce(x)
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``a_i`` with p ~ prod a_i^i."""
    p = strip(p)
    if len(p) <= 1:
        return []
    out = []
    dp = deriv(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, deriv(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, deriv(b))
        i += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    p = strip(p)
    if len(p) <= 1:
        return [ONE] if p else []
    return monic(exact_div(p, gcd(p, deriv(p))))


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Newton interpolation through distinct nodes."""
    xs = [GaussRat.coerce(x) for x in xs]
    coef = [GaussRat.coerce(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p: Poly = []
    for i in range(n - 1, -1, -1):
        p = add(mul(p, [-xs[i], ONE]), [coef[i]])
    return p


def resultant(p: Poly, q: Poly) -> GaussRat:
    """Sylvester resultant at the actual degrees."""
    p, q = strip(p), strip(q)
    if not p or not q:
        return ZERO
    m, n = len(p) - 1, len(q) - 1
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows = []
    hp, hq = list(reversed(p)), list(reversed(q))
    for k in range(n):
        rows.append([ZERO] * k + hp + [ZERO] * (size - k - m - 1))
    for k in range(m):
        rows.append([ZERO] * k + hq + [ZERO] * (size - k - n - 1))
    return det_exact(ExactMatrix.from_rows(rows, size))


def to_complex(p: Poly) -> np.ndarray:
    return np.array([complex(c) for c in p], dtype=complex)


def numeric_roots(p: Poly, polish: int = 3) -> np.ndarray:
    """Companion-matrix roots of a squarefree exact polynomial, Newton-polished."""
    c = to_complex(p)
    if len(c) <= 1:
        return np.zeros(0, dtype=complex)
    roots = np.roots(c[::-1]).astype(complex)
    dc = np.polyder(c[::-1])
    for _ in range(polish):
        f = np.polyval(c[::-1], roots)
        fp = np.polyval(dc, roots)
        ok = np.abs(fp) > 0
        step = np.zeros_like(roots)
        step[ok] = f[ok] / fp[ok]
        roots = roots - step
    return roots
