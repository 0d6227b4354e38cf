from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from waring_eig import critvar
from waring_eig.critvar import (
    SecantParams,
    degree_check_line,
    degree_check_surface,
    dim_estimate_we,
    h_pairing,
    h_tilde,
    h_tilde_literal,
    is_eigen_x0,
    jacobian_rank_at,
    sample_X_x0,
    sample_generic_X_x0,
    we_equations,
    we_membership_binary,
)
from waring_eig.apolarity import waring_rank_binary
from waring_eig.eigen import is_eigenvector
from waring_eig.exactnum import ZERO, GaussRat
from waring_eig.forms.binary import BForm
from waring_eig.forms.nform import LinForm, NForm, bw_inner
from waring_eig.forms.ortho import OrthoMatrix, ortho_act, random_ortho
from waring_eig.forms.parse import parse_binary


def x(N, *exps):
    a = [0] * N
    for k, e in exps:
        a[k] += e
    return NForm.monomial(tuple(a))


def test_equations_n1_r3_d3():
    eqs = we_equations(1, 3, 3)
    assert eqs.gs == (x(4, (0, 2), (1, 1)) + x(4, (2, 2), (3, 1)),)
    assert eqs.g0prime == x(4, (0, 3)) + x(4, (2, 3))


def test_equations_n2_r2_d2():
    eqs = we_equations(2, 2, 2)
    assert eqs.gs == (x(3, (0, 1), (1, 1)), x(3, (0, 1), (2, 1)))


@pytest.mark.parametrize("n,r,d", [(1, 2, 2), (1, 4, 5), (2, 3, 4), (3, 5, 3)])
def test_equation_term_counts(n, r, d):
    eqs = we_equations(n, r, d)
    assert len(eqs.gs) == n
    for g in eqs.gs:
        assert len(g.terms) == r - 1 and g.degree == d


def test_equations_bad_sizes():
    with pytest.raises(ValueError):
        we_equations(1, 1, 3)


def test_is_eigen_x0_examples():
    assert is_eigen_x0(SecantParams.from_rows(2, 3, 4, [[0, 1, 2], [0, -3, 1]]))
    assert is_eigen_x0(SecantParams.from_rows(1, 3, 4, [[1, 1], [1, -1]]))
    assert not is_eigen_x0(SecantParams.from_rows(1, 2, 4, [[1, 1]]))


def test_sampler_rank_certificate():
    s = sample_X_x0(1, 3, 5, rng_seed=7)
    assert s.rank == 3
    assert is_eigen_x0(s.params)
    assert waring_rank_binary(BForm.from_nform(s.params.form())) == 3


def test_sampler_fixed_rows():
    p = SecantParams.from_rows(1, 3, 5, [[1, 1], [1, -1]])
    assert is_eigen_x0(p)
    assert waring_rank_binary(BForm.from_nform(p.form())) == 3


@pytest.mark.parametrize("r", [3, 5])
def test_sampler_roots_of_unity(r):
    s = sample_X_x0(1, r, 2 * r - 1, method="roots")
    assert is_eigen_x0(s.params)
    assert s.rank == r
    assert all(row[0] == 1 for row in s.params.alpha)


def test_sampler_roots_unavailable():
    with pytest.raises(critvar.SamplerError):
        sample_X_x0(1, 4, 7, method="roots")


def test_sampler_n2():
    s = sample_X_x0(2, 4, 3, rng_seed=2)
    assert is_eigen_x0(s.params)
    for j in (1, 2):
        assert sum((row[j] for row in s.params.alpha), ZERO) == 0


def test_sampler_infeasible():
    with pytest.raises(critvar.SamplerError):
        sample_X_x0(1, 5, 5)


def test_jacobian_examples():
    eqs = we_equations(2, 4, 4)
    s = sample_X_x0(2, 4, 4, rng_seed=3)
    assert jacobian_rank_at(eqs, s.params) == 2
    assert jacobian_rank_at(eqs, s.params, with_g0prime=True) == 3
    zero_col = [ZERO if k % 3 == 0 else GaussRat(k) for k in range(eqs.nparams)]
    assert jacobian_rank_at(eqs, zero_col) == 0


@pytest.mark.parametrize("d,r", [(3, 3), (5, 3), (4, 4)])
def test_degree_line(d, r):
    rep = degree_check_line(1, d, r, rng_seed=1)
    assert rep["value"] == d and rep["pass"]


@pytest.mark.parametrize("d,r", [(2, 3), (3, 4)])
def test_degree_surface(d, r):
    rep = degree_check_surface(2, d, r, rng_seed=1)
    assert rep["value"] == d * d and rep["pass"]


# hyperplane functionals


@pytest.mark.parametrize("n,d", [(2, 3), (3, 4)])
def test_h_tilde_identity_is_h(n, d):
    rng = random.Random(n * d)
    F = NForm(n, d, {a: GaussRat(rng.randint(-5, 5)) for a in critvar.compositions(d, n)})
    for i in range(1, n):
        assert h_tilde(OrthoMatrix.identity(n), i, d)(F) == h_pairing(F, i)


def test_h_tilde_swap():
    d = 5
    H = h_tilde(OrthoMatrix.from_rows([[0, 1], [1, 0]]), 1, d)
    assert set(H.coeffs) == {(1, d - 1)}


@pytest.mark.parametrize("seed", range(4))
def test_h_tilde_is_bw_pairing(seed):
    n, d = 3, 4
    A = random_ortho(n, seed)
    rng = random.Random(seed)
    F = NForm(n, d, {a: GaussRat(rng.randint(-3, 3), rng.randint(-3, 3)) for a in critvar.compositions(d, n)})
    col = lambda k: LinForm(A[l, k] for l in range(n))
    for i in range(1, n):
        P = col(0).power(d - 1) * col(i).to_nform()
        assert h_tilde(A, i, d)(F) == bw_inner(F, P)
        # the literal coefficient map is the monomial expansion of P
        assert h_tilde_literal(A, i, d) == h_tilde(A, i, d).monomial_coeffs


# membership


@pytest.mark.parametrize("d", [4, 5, 6])
def test_membership_family(d):
    assert we_membership_binary(parse_binary(f"x^{d}+y^{d}+(x+y)^{d}")).member


def test_membership_sample_and_generic():
    s = sample_X_x0(1, 3, 6, rng_seed=5)
    m = we_membership_binary(BForm.from_nform(s.params.form()))
    assert m.member and m.exact
    rng = random.Random(2)
    F = BForm.zero(6)
    for _ in range(3):
        F = F + BForm.linear_power(rng.randint(-99, 99), rng.randint(1, 99), 6)
    m = we_membership_binary(F)
    assert not m.member and m.exact


# dimension


@pytest.mark.parametrize("r,d,proj", [(2, 4, 2), (3, 5, 4), (3, 6, 4), (4, 7, 6)])
def test_dimension_n1(r, d, proj):
    rep = dim_estimate_we(1, r, d, rng_seed=0)
    assert rep["projective_dimension"] == proj
    assert rep["gap"] >= 1e6


def test_dimension_n2_lower_bound():
    rep = dim_estimate_we(2, 3, 4, rng_seed=0)
    assert rep["projective_dimension"] >= 6
    assert rep["gap"] >= 1e6


# properties


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(2, 4), st.integers(2, 5))
def test_is_eigen_x0_matches_gradient(seed, n, r, d):
    rng = random.Random(seed)
    rows = [[GaussRat(rng.randint(-3, 3)) for _ in range(n + 1)] for _ in range(r - 1)]
    if rng.random() < 0.5:
        # force the constraint by fixing the last row's tail
        if rows[-1][0]:
            for j in range(1, n + 1):
                rest = sum((row[0] ** (d - 1) * row[j] for row in rows[:-1]), ZERO)
                rows[-1][j] = -rest / rows[-1][0] ** (d - 1)
    p = SecantParams.from_rows(n, r, d, rows)
    assert is_eigen_x0(p) == is_eigenvector(p.form(), [1] + [0] * n)


@given(st.integers(0, 10**6), st.sampled_from([(1, 3, 5), (1, 4, 7), (2, 3, 3), (2, 4, 5)]))
def test_jacobian_certificate(seed, nrd):
    n, r, d = nrd
    s = sample_X_x0(n, r, d, rng_seed=seed)
    eqs = we_equations(n, r, d)
    assert jacobian_rank_at(eqs, s.params) == n
    assert jacobian_rank_at(eqs, s.params, with_g0prime=True) == n + 1


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(2, 5))
def test_join_hyperplane_equivalence(seed, n, d):
    p = sample_generic_X_x0(n, 3, d, rng_seed=seed) if seed % 2 else SecantParams.from_rows(
        n, 3, d, [[GaussRat(seed % 7 - 3)] * (n + 1), [GaussRat(1)] + [GaussRat(2)] * n])
    G = p.tail()
    hs = [h_pairing(G, i) for i in range(1, n + 1)]
    assert all(not h for h in hs) == is_eigenvector(p.form(), [1] + [0] * n)


@given(st.integers(0, 10**6))
def test_h_tilde_kernel_is_eigen(seed):
    n, d = 3, 4
    A = random_ortho(n, seed)
    if seed % 2:
        F = ortho_act(A, sample_X_x0(2, 3, d, rng_seed=seed).params.form())
    else:
        F = ortho_act(A, sample_generic_X_x0(2, 4, d, rng_seed=seed).form()) + NForm.monomial((1, 0, 3))
    in_kernel = all(not h_tilde(A, i, d)(F) for i in range(1, n))
    g0 = [A[l, 0] for l in range(n)]
    assert in_kernel == is_eigenvector(F, g0)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_membership_orbit_invariance(seed):
    s = sample_X_x0(1, 3, 5, rng_seed=seed)
    F = BForm.from_nform(s.params.form())
    A = random_ortho(2, seed)
    assert we_membership_binary(F).member == we_membership_binary(ortho_act(A, F)).member
    rng = random.Random(seed)
    G = BForm.zero(5)
    for _ in range(3):
        G = G + BForm.linear_power(rng.randint(-99, 99), rng.randint(1, 99), 5)
    assert we_membership_binary(G).member == we_membership_binary(ortho_act(A, G)).member


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(2, 6), st.integers(2, 4))
def test_degree_line_over_seeds(seed, d, r):
    assert degree_check_line(1, d, r, rng_seed=seed)["value"] == d
