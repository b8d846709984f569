import json
import math

import numpy as np
import pytest

import oracles
from wapprox import best_approx as BA
from wapprox import functions as F
from wapprox import geometry as G
from wapprox import moduli as Mo
from wapprox import weights as W
from wapprox.polynomials import random_poly

ONE = W.constant()
FLAG_W = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])


def test_difference_coefficients():
    assert Mo.difference_coefficients(1).tolist() == [-1, 1]
    assert Mo.difference_coefficients(4).tolist() == [1, -4, 6, -4, 1]
    with pytest.raises(ValueError):
        Mo.difference_coefficients(0)


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_difference_of_power_against_direct_expansion(r):
    f = F.function_registry("monomial", k=r)
    for x, h in [(0.0, 0.1), (0.3, 0.05), (-0.5, 0.2)]:
        got = Mo.symmetric_difference(f, h, r, x)
        assert got == pytest.approx(oracles.symmetric_difference(lambda t: t**r, h, r, x), rel=1e-12)
        assert got == pytest.approx(math.factorial(r) * h**r, rel=1e-9)


def test_difference_annihilates_lower_degree():
    rng = np.random.default_rng(0)
    for r in (1, 2, 3, 4):
        p = F.from_poly(random_poly(r, rng))
        x = np.linspace(-0.5, 0.5, 11)
        assert np.max(np.abs(Mo.symmetric_difference(p, 0.1, r, x))) < 1e-13


def test_difference_outside_J_is_zero():
    f = F.function_registry("exp")
    J = G.interval_set([(-0.5, 0.5)])
    assert Mo.symmetric_difference(f, 0.2, 2, 0.45, J) == 0.0
    assert Mo.symmetric_difference(f, 0.2, 2, 0.2, J) != 0.0


def test_singular_stencil_is_excluded_and_tallied():
    f = F.function_registry("neg_power", alpha=-0.2)
    tally = {}
    x = np.array([-0.05, 0.3, 0.6])
    out = Mo.symmetric_difference(f, 0.2, 1, x, tally=tally)
    assert out[0] == 0.0 and tally["excluded"] == 1
    assert np.all(np.isfinite(out))


def test_query_validation():
    f = F.function_registry("exp")
    with pytest.raises(ValueError):
        Mo.ModulusQuery(f, ONE, [-1, 1], r=0)
    with pytest.raises(ValueError):
        Mo.ModulusQuery(f, ONE, [-1, 1], t=0)
    with pytest.raises(ValueError):
        Mo.ModulusQuery(f, ONE, [-1, 1], h_grid=8)
    q = Mo.ModulusQuery(f, ONE, [-1, 1])
    assert q.replace(t=0.3).t == 0.3 and q.t == 0.1
    json.dumps(q.to_dict())


def test_h_nodes_nest():
    big, small = Mo.h_nodes(0.5), Mo.h_nodes(0.1)
    assert big[0] == 0.5 and small[0] == 0.1
    assert set(small[1:]) <= set(big[1:])
    assert np.all(np.diff(big) < 0)


def test_main_part_of_identity():
    q = Mo.ModulusQuery(F.function_registry("monomial", k=1), ONE, [-1, 1], r=1, t=0.1)
    res = Mo.main_part_modulus(q)
    # Delta_{h phi(x)} x = h phi(x), largest at x = 0 with h = t
    assert res.value == pytest.approx(0.1, rel=1e-12)
    assert res.argmax_h == 0.1 and not res.vacuous


def test_main_part_saturates():
    f = F.function_registry("power_abs", alpha=0.6)
    q = Mo.ModulusQuery(f, FLAG_W, [-1, 0, 1], r=2, A=1.0)
    assert Mo.main_part_modulus(q.replace(t=math.sqrt(2))).value == Mo.main_part_modulus(q.replace(t=2.0)).value


def test_main_part_vacuous_when_domain_empty():
    f = F.function_registry("exp")
    # every lattice step (the smallest is about 1.4e-4) has A h^2 >= 2
    res = Mo.main_part_modulus(Mo.ModulusQuery(f, ONE, [-1, 0, 1], r=1, A=1e9, t=0.5))
    assert res.vacuous and res.value == 0.0


def test_complete_modulus_of_abs():
    f = F.function_registry("power_abs", alpha=1.0)
    q = Mo.ModulusQuery(f, ONE, [-1, 0, 1], r=2, t=0.2)
    res = Mo.complete_modulus(q)
    exact = oracles.lp_minimax(np.abs, np.ones_like, 2, -0.24, 0.24)
    assert exact == pytest.approx(0.12, abs=1e-12)
    assert res.parts["main"] < 1e-14
    # discrete lower bound: +-0.24 are not nodes of the shared x-grid
    assert exact * (1 - 2e-3) <= res.value <= exact
    finer = Mo.complete_modulus(q.replace(x_grid=8001)).value
    assert res.value <= finer <= exact


def test_complete_modulus_saturates_and_bounds_global_error():
    f = F.function_registry("power_abs", alpha=0.6)
    q = Mo.ModulusQuery(f, FLAG_W, [-1, 0, 1], r=2)
    t0 = math.sqrt(2.0)
    base = Mo.complete_modulus(q.replace(t=t0)).value
    assert Mo.complete_modulus(q.replace(t=2 * t0)).value == pytest.approx(base, rel=1e-12)
    E = BA.DEFAULT_CACHE.error(f, FLAG_W, (-1.0, 1.0), 2, q.xs, q.nodes_key)
    assert 3 * E <= base * (1 + 1e-10)


def test_restricted_full_equals_dt():
    f = F.function_registry("sin", k=3.0)
    q = Mo.ModulusQuery(f, FLAG_W, [-1, 0, 1], r=2, t=0.2)
    assert Mo.restricted_modulus(q, Mo.FULL).value == Mo.dt_modulus(q).value


def test_dt_examples():
    sq = Mo.ModulusQuery(F.function_registry("monomial", k=2), ONE, [-1, 1], r=1, t=0.1)
    assert Mo.dt_modulus(sq).value == pytest.approx(0.1, rel=1e-6)
    for r in (2, 3):
        q = Mo.ModulusQuery(F.function_registry("monomial", k=r), ONE, [-1, 1], r=r, t=0.1)
        assert Mo.dt_modulus(q).value == pytest.approx(math.factorial(r) * 0.1**r, rel=1e-9)


def test_polynomials_have_zero_moduli():
    rng = np.random.default_rng(5)
    p = F.from_poly(random_poly(3, rng))
    q = Mo.ModulusQuery(p, FLAG_W, [-1, 0, 1], r=3, t=0.3, x_grid=501)
    for fn in (Mo.main_part_modulus, Mo.dt_modulus, Mo.complete_modulus, Mo.mt_modulus):
        assert fn(q).value < 1e-12


def test_mt_shape_errors():
    f = F.function_registry("exp")
    with pytest.raises(ValueError):
        Mo.mt_modulus(Mo.ModulusQuery(f, ONE, [-1, 1]))
    with pytest.raises(ValueError):
        Mo.mt_modulus(Mo.ModulusQuery(f, ONE, [-0.9, 0, 1]))


def test_mt_intervals_shape():
    J, I = Mo.mt_intervals([-1, 0, 1], 0.1)
    assert I[0] == (-1.0, -1.0 + 0.01) and I[-1] == (1.0 - 0.01, 1.0)
    assert I[1] == (-0.1, 0.1)
    assert J == [(-0.99, -0.1), (0.1, 0.99)]


def test_sandwich_constant():
    assert Mo.sandwich_constant([-1, 0, 1]) == 1.0
    assert Mo.sandwich_constant([-1, 0.6, 1]) == pytest.approx(1.25)


@pytest.mark.parametrize("r", [1, 2])
def test_mt_sandwich_on_flagship(r):
    f = F.function_registry("power_abs", alpha=0.6)
    Z = G.ZSet((-1.0, 0.0, 1.0))
    Ap = Mo.sandwich_constant(Z)
    for t in (1.0, 0.5, 0.25, 0.125, 0.0625):
        q = Mo.ModulusQuery(f, FLAG_W, Z, r=r, t=t)
        lower = Mo.complete_modulus(q.replace(A=Ap, B=0.5)).value
        upper = Z.M * Mo.complete_modulus(q.replace(A=0.5, B=Ap)).value
        star = Mo.mt_modulus(q).value
        assert lower <= star * (1 + 1e-10) and star <= upper * (1 + 1e-10)


def test_result_serializes():
    q = Mo.ModulusQuery(F.function_registry("power_abs", alpha=0.6), FLAG_W, [-1, 0, 1], r=1, t=0.125)
    d = json.loads(Mo.complete_modulus(q).to_json())
    assert set(d) >= {"value", "argmax_h", "argmax_x", "excluded_stencils"}
