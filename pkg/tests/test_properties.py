"""Hypothesis property tests for the invariants that hold pointwise."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from wapprox import best_approx as BA
from wapprox import functions as F
from wapprox import geometry as G
from wapprox import moduli as Mo
from wapprox import weights as W
from wapprox.polynomials import ChebPoly, taylor_at
from wapprox.report import VerdictReport

unit = st.floats(-1.0, 1.0, allow_nan=False)
steps = st.floats(1e-4, 1.0, allow_nan=False)
coeffs = st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=1, max_size=8)


@given(h1=steps, h2=steps, x=unit)
def test_rho_monotone_in_h(h1, h2, x):
    a, b = sorted((h1, h2))
    assert G.rho(a, x) <= G.rho(b, x)


@given(u=unit, v=unit, n=st.integers(1, 200))
def test_rho_n_usual(u, v, n):
    assert G.rho_n(n, u) ** 2 <= 4 * G.rho_n(n, v) * (abs(u - v) + G.rho_n(n, v)) * (1 + 1e-12)


@given(x=unit, n=st.integers(1, 100))
def test_phi_variants_ordering(x, n):
    phi, phi_n, lam = G.varphi_variants(n, x)
    assert lam <= phi_n <= 2 * lam and phi <= lam


@given(pts=st.lists(unit, min_size=1, max_size=5, unique=True), A=st.floats(0.1, 10), h=steps)
def test_main_set_avoids_neighbourhoods(pts, A, h):
    Z = G.ZSet(tuple(sorted(pts)))
    S = G.main_set(Z, A, h)
    for j in range(1, Z.M + 1):
        lo, hi = G.singular_neighborhood(Z, j, A, h)
        for a, b in S.intervals:
            assert b <= lo or a >= hi


@given(c=coeffs, h=st.floats(1e-3, 0.2), x=st.floats(-0.5, 0.5))
def test_difference_annihilates_polynomials(c, h, x):
    p = ChebPoly(np.array(c))
    r = len(c)
    scale = max(1.0, float(np.max(np.abs(c))))
    assert abs(Mo.symmetric_difference(F.from_poly(p), h, r, x)) <= 1e-9 * scale * 2**r


@given(c=coeffs, z=unit, r=st.integers(1, 8))
def test_taylor_section_reproduces_derivatives(c, z, r):
    p = ChebPoly(np.array(c))
    q = taylor_at(p, z, r)
    for nu in range(min(r, len(c))):
        want = p.deriv(nu)(z)
        assert abs(q.deriv(nu)(z) - want) <= 1e-8 * max(1.0, abs(want)) * 10**nu


@given(c=st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=1, max_size=5))
@settings(max_examples=30, deadline=None)
def test_minimax_exact_on_polynomials(c):
    p = F.from_poly(ChebPoly(np.array(c)))
    assert BA.best_weighted_approx(p, W.constant(), (-1, 1), len(c)).error <= 1e-12


@given(a=st.floats(-1.0, 0.9), length=st.floats(0.05, 1.0), n=st.integers(1, 6))
@settings(max_examples=30, deadline=None)
def test_best_error_decreases_with_n(a, length, n):
    b = min(1.0, a + length)
    f = F.function_registry("power_abs", alpha=0.6)
    nodes = G.chebyshev_grid(401, a, b)
    e1 = BA.best_weighted_approx(f, W.constant(), (a, b), n, nodes=nodes).error
    e2 = BA.best_weighted_approx(f, W.constant(), (a, b), n + 1, nodes=nodes).error
    assert e2 <= e1 * (1 + 1e-10) + 1e-14


@given(gammas=st.lists(st.floats(0.0, 2.0), min_size=1, max_size=3), x=unit)
def test_weights_nonnegative(gammas, x):
    pts = np.linspace(-1, 1, len(gammas))
    w = W.generalized_jacobi(pts, gammas)
    assert w(x) >= 0 and w(x + 3.0) == 0


@given(a=unit, b=unit)
@settings(max_examples=30, deadline=None)
def test_mass_additive(a, b):
    lo, hi = sorted((a, b))
    mid = 0.5 * (lo + hi)
    w = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])
    total = W.weight_mass(w, lo, hi)
    assert math.isclose(total, W.weight_mass(w, lo, mid) + W.weight_mass(w, mid, hi), rel_tol=1e-8, abs_tol=1e-14)


@given(pairs=st.lists(st.tuples(st.floats(0, 10), st.floats(0, 10)), min_size=1, max_size=8))
def test_vacuous_rows_never_flip(pairs):
    rep = VerdictReport("p")
    for i, (l, r) in enumerate(pairs):
        rep.add("c", i, l, r)
    before = rep.passed
    rep.add("c", 99, 0.0, 0.0)
    assert rep.passed == before


@given(t1=st.integers(2, 40), t2=st.integers(2, 40))
@settings(max_examples=15, deadline=None)
def test_main_part_monotone_on_lattice(t1, t2):
    f = F.function_registry("power_abs", alpha=0.6)
    q = Mo.ModulusQuery(f, W.jacobi(0.5, 0.5), [-1, 0, 1], r=2, x_grid=257)
    lo, hi = sorted((2 * 0.85**t1, 2 * 0.85**t2))
    assert Mo.main_part_modulus(q.replace(t=lo)).value <= Mo.main_part_modulus(q.replace(t=hi)).value
