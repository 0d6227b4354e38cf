from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from conftest import bforms, gauss, nforms, rational_lines
from waring_eig.exactnum import I, ONE, ZERO, GaussRat
from waring_eig.forms import binary as bf
from waring_eig.forms import univariate as up
from waring_eig.forms.nform import LinForm, NForm, ProjPoint, apolar_apply, bw_inner
from waring_eig.forms.ortho import OrthoMatrix, cayley, ortho_act, ortho_act_point, random_ortho
from waring_eig.forms.parse import ParseError, format_form, parse_binary, parse_form, parse_linear


def P(text, nvars=None):
    return parse_form(text, nvars)


# apolar action and Bombieri-Weyl


@pytest.mark.parametrize("d", [2, 3, 5])
def test_apolar_power_of_x0(d):
    G = P(f"x0^{d - 1}", 2)
    F = P(f"x0^{d}", 2)
    assert apolar_apply(G, F) == P("x0", 2).scale(math.factorial(d))


def test_apolar_kills_other_variable():
    assert apolar_apply(P("x1"), P("x0^4")).is_zero()


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_apolar_sum_power(d):
    G = LinForm([1, 1]).power(d - 1)
    F = LinForm([1, 1]).power(d)
    expected = P("x0+x1").scale(math.factorial(d) * 2 ** (d - 1))
    assert apolar_apply(G, F) == expected


def test_apolar_degree_mismatch():
    with pytest.raises(ValueError):
        apolar_apply(P("x0^3"), P("x0^2"))


@pytest.mark.parametrize("d", [1, 3, 6])
def test_bw_examples(d):
    assert bw_inner(P(f"x0^{d}", 2), P(f"x0^{d}", 2)) == ONE
    assert bw_inner(LinForm([1, 1]).power(d), P(f"x0^{d}", 2)) == ONE
    m = P(f"x0^{d - 1}*x1", 2) if d > 1 else P("x1", 2)
    assert bw_inner(m, m) == GaussRat(1) / d


@given(st.integers(2, 4).flatmap(lambda n: st.integers(1, 5).flatmap(
    lambda d: st.tuples(nforms(nvars=n, degree=d), nforms(nvars=n, degree=d)))))
def test_bw_equals_apolar_over_factorial(FG):
    F, G = FG
    d = F.degree
    pairing = apolar_apply(G, F)
    value = pairing.coeff(()) if pairing.nvars == 0 else pairing.coeff((0,) * F.nvars)
    assert value == bw_inner(F, G) * math.factorial(d)


@given(rational_lines(3), rational_lines(3), st.integers(1, 5))
def test_bw_rank_one(u, v, d):
    lhs = bw_inner(LinForm(u).power(d), LinForm(v).power(d))
    assert lhs == sum((a * b for a, b in zip(u, v)), ZERO) ** d


# gcd / squarefree / discriminant / resultant


def B(text):
    return parse_binary(text)


def test_gcd_example():
    assert bf.gcd_binary(B("x0^2*x1"), B("x0*x1^2")) == B("x0*x1")


def test_squarefree_examples():
    assert bf.is_squarefree(B("x0*x1*(x0+x1)"))
    assert not bf.is_squarefree(B("x0^2*x1"))
    assert bf.squarefree_part(B("x0^2*x1")) == B("x0*x1").normalized()


def test_discriminant_examples():
    assert bf.discriminant(B("x0^2+x1^2")) != 0
    assert bf.discriminant(B("(x0+x1)^2")) == 0


def test_resultant_common_root():
    assert bf.resultant(B("x0*(x0-x1)"), B("(x0-x1)*(x0+2*x1)")) == 0
    assert bf.resultant(B("x0*(x0-x1)"), B("x1")) != 0


@given(bforms(1, 4), bforms(1, 4))
def test_gcd_divides_both(F, G):
    g = bf.gcd_binary(F, G)
    assert bf.divides(g, F) and bf.divides(g, G)
    assert (bf.resultant(F, G) == 0) == (g.degree > 0)


@given(bforms(1, 5))
def test_squarefree_part_divides(F):
    s = bf.squarefree_part(F)
    assert bf.divides(s, F)
    assert bf.is_squarefree(s)
    assert bf.distinct_root_count(F) == s.degree


# numeric roots


def _as_set(roots):
    return sorted((p.to_complex(), m) for p, m in roots)


def test_roots_numeric_examples():
    r = bf.roots_numeric(B("x0*x1"))
    assert sorted(m for _, m in r) == [1, 1]
    assert any(p.close_to(ProjPoint([1, 0])) for p, _ in r)
    assert any(p.close_to(ProjPoint([0, 1])) for p, _ in r)
    ((p, m),) = bf.roots_numeric(B("(x0-x1)^3"))
    assert m == 3 and p.close_to(ProjPoint([1, 1]))
    r = bf.roots_numeric(B("x0^2+x1^2"))
    assert all(p.close_to(ProjPoint([1, 1j])) or p.close_to(ProjPoint([1, -1j])) for p, _ in r)
    assert len(r) == 2


def test_roots_numeric_bad_tol():
    with pytest.raises(ValueError):
        bf.roots_numeric(B("x0*x1"), tol=0)


@given(bforms(1, 7))
def test_roots_count_and_residual(F):
    roots = bf.roots_numeric(F)
    assert sum(m for _, m in roots) == F.degree
    for p, _ in roots:
        assert bf.residual(F, p) <= bf.RESIDUAL_BOUND


# perp / isotropy


def test_perp_examples():
    assert bf.perp(LinForm([1, 0])).point() == ProjPoint([0, 1])
    assert bf.perp(LinForm([1, I])).point() == ProjPoint([1, I])
    assert bf.perp(LinForm([1, 2])).coords == (GaussRat(-2), GaussRat(1))
    with pytest.raises(ValueError):
        bf.perp(LinForm([0, 0]))


def test_isotropy_examples():
    assert bf.is_isotropic(LinForm([1, I]))
    assert not bf.is_isotropic(LinForm([1, 0]))
    assert not bf.is_isotropic(LinForm([3, GaussRat(0, 4)]))


@given(st.tuples(gauss(), gauss()).filter(lambda t: t[0] or t[1]))
def test_perp_involution(c):
    L = LinForm(c)
    Lp = bf.perp(L)
    assert L.dot(Lp) == 0
    assert bf.perp(Lp).point() == L.point()


# orthogonal action


def test_ortho_identity_and_reflection():
    F = P("x0^3*x1+2*x1^4")
    assert ortho_act(OrthoMatrix.identity(2), F) == F
    R = OrthoMatrix.from_rows([[1, 0], [0, -1]])
    assert ortho_act(R, P("x0^4*x1")) == P("-x0^4*x1")


def test_cayley_two_by_two():
    A = cayley([[0, 1], [-1, 0]])
    assert A == OrthoMatrix.from_rows([[0, -1], [1, 0]])
    assert cayley([[0, 0], [0, 0]]) == OrthoMatrix.identity(2)


def test_cayley_power_of_x0():
    A = random_ortho(3, 5, allow_reflection=False)
    F = ortho_act(A, P("x0^4", 3))
    col = LinForm([A[i, 0] for i in range(3)])
    assert F == col.power(4)


def test_non_orthogonal_rejected():
    with pytest.raises(ValueError):
        OrthoMatrix.from_rows([[1, 1], [0, 1]])


@given(st.integers(0, 10**6), st.integers(2, 4))
def test_random_ortho_properties(seed, size):
    A = random_ortho(size, seed)
    assert A.det() in (ONE, -ONE)
    assert A.T @ A == OrthoMatrix.identity(size)


@given(st.integers(0, 10**6), st.integers(2, 4).flatmap(lambda n: st.integers(1, 4).flatmap(
    lambda d: st.tuples(nforms(nvars=n, degree=d), nforms(nvars=n, degree=d)))))
def test_ortho_action_properties(seed, FG):
    F, G = FG
    n = F.nvars
    A, B2 = random_ortho(n, seed), random_ortho(n, seed + 1)
    assert bw_inner(ortho_act(A, F), ortho_act(A, G)) == bw_inner(F, G)
    assert ortho_act(A @ B2, F) == ortho_act(A, ortho_act(B2, F))
    assert ortho_act(A, F).degree == F.degree


def test_ortho_act_point_matches_linear_form():
    A = random_ortho(3, 2)
    p = ProjPoint([1, 2, 3])
    q = ortho_act_point(A, p)
    L = ortho_act(A, LinForm(p.coords).to_nform())
    assert ProjPoint([L.coeff(tuple(int(i == j) for j in range(3))) for i in range(3)]) == q


# parser


def test_parser_expands_powers():
    assert P("(x+y)^2") == P("x^2+2*x*y+y^2")
    assert P("x0*x2").nvars == 3
    assert P("(2+i)*x^2").coeff((2, 0)) == GaussRat(2, 1)
    assert P("3/2*x*y").coeff((1, 1)) == GaussRat(3) / 2
    assert parse_linear("x-2*y").coords == (ONE, GaussRat(-2))


@pytest.mark.parametrize("text", ["x^3+", "x^2+y", "", "0", "x**", "(x+y"])
def test_parser_errors(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_form("x^3+")
    assert exc.value.position == 4


@given(nforms(max_degree=5))
def test_format_parse_round_trip(F):
    if F.is_zero():
        return
    assert parse_form(format_form(F), F.nvars) == F


@given(nforms(max_degree=4))
def test_nform_json_round_trip(F):
    assert NForm.from_json(F.to_json()) == F


def test_univariate_interpolate_and_resultant():
    xs = [GaussRat(k) for k in range(4)]
    p = [GaussRat(1), GaussRat(-2), ZERO, GaussRat(3)]
    assert up.interpolate(xs, [up.evaluate(p, x) for x in xs]) == p
    assert up.resultant([GaussRat(-1), ONE], [GaussRat(-1), ZERO, ONE]) == 0
