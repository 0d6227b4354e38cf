from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import bforms
from waring_eig import critvar
from waring_eig.apolarity import decompose_binary
from waring_eig.dynamics import example_family_form
from waring_eig.eigen import eigen_poly_binary
from waring_eig.exactnum import GaussRat
from waring_eig.forms import binary as bf
from waring_eig.forms.binary import BForm
from waring_eig.forms.nform import ProjPoint
from waring_eig.forms.ortho import ortho_act, ortho_act_point, random_ortho
from waring_eig.forms.parse import parse_binary
from waring_eig.locus import (
    BALANCED,
    COFINITE_MINUS,
    FINITE,
    balanced_forbidden_form,
    eig_count_sufficiency,
    forbidden_contains,
    intersect_waring_eigen_binary,
    monomial_loci,
    verify_monomial_loci,
    waring_locus_binary,
)


def B(text):
    return parse_binary(text)


def pt(*c):
    return ProjPoint(c)


@pytest.mark.parametrize("d,j", [(5, 1), (5, 2), (7, 3), (6, 2)])
def test_monomial_binary_cofinite(d, j):
    F = B(f"x^{d - j}*y^{j}")
    desc = waring_locus_binary(F)
    assert desc.kind == COFINITE_MINUS
    assert forbidden_contains(F, pt(1, 0))
    assert not forbidden_contains(F, pt(0, 1))
    assert not forbidden_contains(F, pt(3, -2))


@pytest.mark.parametrize("c", [1, None])
@pytest.mark.parametrize("d,a,b", [(5, 1, 1), (6, 2, -3), (7, 0, 1)])
def test_example_family_forbidden(d, a, b, c):
    F = example_family_form(d, GaussRat(a), GaussRat(b), c)
    desc = waring_locus_binary(F)
    assert desc.kind == COFINITE_MINUS
    # g1 is proportional to y^2 (b x - a y) in the dual variables
    assert desc.form.normalized() == (B("x1^2") * BForm([b, -a])).normalized()
    assert forbidden_contains(F, pt(1, 0))
    assert forbidden_contains(F, ProjPoint([GaussRat(a) / b, 1]))


def test_finite_case_round_trip():
    d = 7
    rows = [(1, 0), (1, 2), (3, -1)]
    F = BForm.zero(d)
    for a in rows:
        F = F + BForm.linear_power(*a, d)
    desc = waring_locus_binary(F)
    assert desc.kind == FINITE
    roots = {p.coords for p, _ in bf.factor_roots(desc.form)[0]}
    assert roots == {ProjPoint(a).coords for a in rows}


def test_xy_waring_point():
    assert not forbidden_contains(B("x0*x1"), pt(1, 1))


def test_balanced_R_for_coordinate_pencil():
    R = balanced_forbidden_form(B("x0^2"), B("x1^2"))
    assert R.degree == 4
    assert R.normalized() == B("x0^2*x1^2")


def test_balanced_pointwise_agrees_with_R():
    F = B("x0*x1")
    desc = waring_locus_binary(F)
    assert desc.kind == BALANCED
    assert forbidden_contains(F, pt(1, 0)) and forbidden_contains(F, pt(0, 1))
    for p in (pt(1, 1), pt(2, 5), pt(1, -3)):
        assert forbidden_contains(F, p) == (not desc.R.at(p))


def test_degree_one_rejected():
    with pytest.raises(ValueError):
        waring_locus_binary(B("x0"))


# intersections


@pytest.mark.parametrize("d", [4, 5, 6, 7, 8])
def test_family_intersection(d):
    rep = intersect_waring_eigen_binary(B(f"x^{d}+y^{d}+(x+y)^{d}"))
    assert rep.nonempty and rep.method == "exact-gcd"
    w = [e for e in rep.witnesses if e.point.exact and e.point == pt(1, 1)]
    assert w and w[0].singular_value == 1 + GaussRat(2) ** (1 - d)


@pytest.mark.parametrize("d,a,b", [(5, 1, 1), (6, 2, 1), (7, 0, 1), (5, GaussRat(1, 2), 3)])
def test_example_family_intersection(d, a, b):
    F = example_family_form(d, GaussRat.coerce(a), GaussRat.coerce(b), 1)
    assert intersect_waring_eigen_binary(F).nonempty


def test_generic_sum_empty():
    rng = random.Random(11)
    for _ in range(10):
        d = rng.randint(3, 8)
        r = rng.randint(2, (d + 1) // 2)
        F = BForm.zero(d)
        for _ in range(r):
            F = F + BForm.linear_power(rng.randint(-50, 50), rng.randint(1, 50), d).scale(rng.randint(1, 9))
        rep = intersect_waring_eigen_binary(F)
        if waring_locus_binary(F).kind == FINITE:
            assert not rep.nonempty


def test_eig_count_sufficiency_examples():
    F = example_family_form(6, GaussRat(1), GaussRat(1), 1)
    assert bf.is_squarefree(eigen_poly_binary(F))
    assert eig_count_sufficiency(F)
    assert eig_count_sufficiency(B("x^5*y"))
    with pytest.raises(ValueError):
        eig_count_sufficiency(B("x^5+y^5"))


def test_eig_count_pure_power_D_has_low_rank():
    # forms with D = x0^d have rank (d+1)/2, below the precondition of the test
    F = B("-x0^4*x1 - 4/3*x0^2*x1^3 - 8/15*x1^5")
    assert eigen_poly_binary(F) == B("x0^5")
    assert bf.distinct_root_count(eigen_poly_binary(F)) == 1
    with pytest.raises(ValueError):
        eig_count_sufficiency(F)
    # forcing the threshold shows a single eigenpoint is inconclusive
    assert not eig_count_sufficiency(F, rank=4)


# monomials in three or more variables


def test_monomial_loci_examples():
    info = monomial_loci([2, 2, 3])
    assert info.regime == "d0>=2" and info.m == 1 and info.forbidden == [0, 1]
    info = monomial_loci([1, 1, 2])
    assert info.m == 1 and info.intersection == [(0, 1), (0, 2), (1, 2)]
    assert monomial_loci([1, 1, 1]).to_json()["waring_cap_eig_nonempty"]


def test_monomial_loci_errors():
    with pytest.raises(ValueError):
        monomial_loci([1, 2])
    with pytest.raises(ValueError):
        monomial_loci([3, 1, 2])


@pytest.mark.parametrize("e", [[2, 2, 3], [1, 1, 2], [1, 2, 2, 3], [3, 3, 3], [1, 1, 1, 1]])
def test_monomial_sampling(e):
    rep = verify_monomial_loci(e, samples=30, seed=1)
    assert rep["pass"], rep["failures"]


# properties


@given(bforms(2, 7))
def test_case_exhaustive(F):
    desc = waring_locus_binary(F)
    assert desc.kind in (FINITE, COFINITE_MINUS, BALANCED)
    ann = desc.ann
    if desc.kind == BALANCED:
        assert ann.k1 == ann.k2 == (F.degree + 2) // 2
    elif desc.kind == FINITE:
        assert bf.is_squarefree(desc.form) and ann.k1 < ann.k2
    else:
        assert not bf.is_squarefree(desc.form) and ann.k1 < ann.k2


@given(bforms(2, 6))
def test_exact_numeric_agreement(F):
    D = eigen_poly_binary(F)
    if D.is_zero():
        return
    exact = intersect_waring_eigen_binary(F, "exact")
    numeric = intersect_waring_eigen_binary(F, "numeric", tol=1e-7)
    assert exact.nonempty == numeric.nonempty


@given(st.integers(0, 10**6), st.sampled_from([(3, 5), (3, 6), (2, 4), (4, 7)]))
def test_witness_equivariance(seed, rd):
    r, d = rd
    F = BForm.from_nform(critvar.sample_X_x0(1, r, d, rng_seed=seed).params.form())
    A = random_ortho(2, seed)
    wF = intersect_waring_eigen_binary(F).witnesses
    wAF = intersect_waring_eigen_binary(ortho_act(A, F)).witnesses
    assert wF
    moved = [ortho_act_point(A, e.point) for e in wF]
    assert len(moved) == len(wAF)
    for q in moved:
        assert any(q.close_to(e.point, 1e-7) for e in wAF)


@given(st.integers(0, 10**6))
def test_finite_soundness(seed):
    rng = random.Random(seed)
    d = rng.randint(3, 8)
    r = rng.randint(1, (d + 1) // 2)
    F = BForm.zero(d)
    for _ in range(r):
        F = F + BForm.linear_power(rng.randint(-6, 6), rng.randint(-6, 6), d)
    if F.is_zero():
        return
    desc = waring_locus_binary(F)
    if desc.kind != FINITE:
        return
    dec = decompose_binary(F)
    pts = dec.points()
    for p, _ in bf.roots_numeric(desc.form):
        assert any(p.close_to(q, 1e-7) for q in pts)
