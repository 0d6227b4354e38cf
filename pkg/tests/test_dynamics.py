from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from waring_eig.apolarity import waring_rank_binary
from waring_eig.dynamics import (
    _random_forbidden_direction,
    analyze_example_family,
    balanced_monomial_control,
    example_family_form,
    numeric_sylvester_rank,
    random_rank_r_binary,
    rank_pencil,
    verify_example_identities,
    verify_generic_odd_growth,
    verify_subgeneric_growth,
)
from waring_eig.exactnum import ZERO, GaussRat
from waring_eig.forms.binary import BForm
from waring_eig.forms.nform import LinForm
from waring_eig.forms.parse import parse_binary
from waring_eig.locus import waring_locus_binary


def B(text):
    return parse_binary(text)


def test_pencil_two_powers():
    prof = rank_pencil(B("x^5+y^5"), LinForm([1, 1]))
    assert prof.base_rank == 2
    assert prof.generic_rank == 3
    assert prof.exceptional_pairs() == [(ZERO, 2)]
    assert prof.method == "exact"


def test_pencil_waring_direction_drop():
    prof = rank_pencil(B("x^5+y^5"), LinForm([1, 0]))
    assert prof.generic_rank == 2
    assert (GaussRat(-1), 1) in prof.exceptional_pairs()


@pytest.mark.parametrize("d,a,b", [(5, 1, 1), (6, 2, -1), (7, 0, 3)])
def test_example_family_pencils(d, a, b):
    F = example_family_form(d, GaussRat(a), GaussRat(b), 1)
    prof = rank_pencil(F, LinForm([1, 0]))
    assert prof.base_rank == prof.generic_rank == d - 1
    assert prof.exceptional == []
    G = F - BForm.linear_power(a, b, d)
    assert waring_rank_binary(G) == d


def test_pencil_rejects_zero():
    with pytest.raises(ValueError):
        rank_pencil(BForm.zero(3), LinForm([1, 0]))
    with pytest.raises(ValueError):
        rank_pencil(B("x^3"), LinForm([0, 0]))


def test_numeric_sylvester_rank_matches_exact():
    F = B("x^5+y^5+(x-2*y)^5")
    assert numeric_sylvester_rank([complex(c) for c in F.coeffs]) == 3


@pytest.mark.parametrize("d,r", [(5, 2), (7, 3)])
def test_subgeneric_growth(d, r):
    rep = verify_subgeneric_growth(d, r, trials=4, rng_seed=3)
    assert rep["pass"], rep


def test_subgeneric_requires_small_rank():
    with pytest.raises(ValueError):
        verify_subgeneric_growth(5, 3)


def test_odd_growth_cubic():
    rep = verify_generic_odd_growth(3, trials=2, rng_seed=1)
    assert rep["pass"], rep


def test_odd_growth_rejects_even():
    with pytest.raises(ValueError):
        verify_generic_odd_growth(4)


@pytest.mark.parametrize("d", [4, 6])
def test_balanced_control(d):
    rep = balanced_monomial_control(d, rng_seed=2)
    assert rep["pass"] and rep["eig_in_W"]


@pytest.mark.parametrize("d", [4, 5, 6, 7])
def test_example_identities(d):
    rep = verify_example_identities(d)
    assert rep["pass"], rep["failures"][:5]


def test_example_family_a_zero():
    rep = analyze_example_family(4, GaussRat(0), GaussRat(1))
    assert rep["D_at_[a/b:1]"] == "0"
    assert rep["equiv_[a/b:1]"] and rep["equiv_[1:0]"]
    assert rep["waring_cap_eig_nonempty"]


def test_example_family_generic():
    rep = analyze_example_family(5, GaussRat(1), GaussRat(1))
    assert rep["forbidden_is_pair"]
    assert rep["eig_in_forbidden"] == []
    assert rep["waring_cap_eig_nonempty"]
    assert rep["rank_minus_(ax+by)^d"] == 5
    assert rep["pencil_x"]["generic_rank"] == 4 and rep["pencil_x"]["exceptional"] == []


def test_example_family_b_zero_rejected():
    with pytest.raises(ValueError):
        analyze_example_family(5, GaussRat(1), GaussRat(0))


# properties


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_profile_invariants(seed):
    rng = random.Random(seed)
    d = rng.randint(3, 7)
    r = rng.randint(1, (d + 1) // 2)
    F, _ = random_rank_r_binary(d, r, rng)
    L = LinForm([rng.randint(-4, 4), rng.randint(1, 4)])
    prof = rank_pencil(F, L, rng_seed=seed)
    lams = [lam for lam, _ in prof.exceptional_pairs()]
    assert len(lams) == len(set(map(str, lams)))
    for lam, rk in prof.exceptional_pairs():
        assert rk != prof.generic_rank
        assert rk <= prof.generic_rank + 1
    if prof.base_rank != prof.generic_rank:
        assert (ZERO, prof.base_rank) in prof.exceptional_pairs()


@settings(max_examples=15)
@given(st.integers(0, 10**6), st.sampled_from([(5, 2), (7, 2), (7, 3), (6, 2)]))
def test_forbidden_direction_dichotomy(seed, dr):
    d, r = dr
    rng = random.Random(seed)
    F, _ = random_rank_r_binary(d, r, rng)
    L = _random_forbidden_direction(F, rng, waring_locus_binary(F))
    Ld = BForm.linear_power(L.coords[0], L.coords[1], d)
    for _ in range(3):
        lam = GaussRat(rng.randint(-20, 20), rng.randint(-20, 20)) / rng.randint(1, 9)
        rk = waring_rank_binary(F + Ld.scale(lam))
        assert rk in (r, r + 1)
        assert (rk == r) == (lam == 0)


@given(st.integers(0, 10**6))
def test_waring_direction_drop(seed):
    rng = random.Random(seed)
    d = rng.randint(3, 8)
    r = rng.randint(2, (d + 1) // 2)
    F, Ls = random_rank_r_binary(d, r, rng)
    L = Ls[0]
    assert waring_rank_binary(F - BForm.linear_power(L.coords[0], L.coords[1], d)) == r - 1


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_numeric_rank_agrees_with_exact(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 8)
    r = rng.randint(1, (d + 1) // 2)
    F, _ = random_rank_r_binary(d, r, rng)
    assert numeric_sylvester_rank([complex(c) for c in F.coeffs]) == waring_rank_binary(F)
