import math

import numpy as np
import pytest

from wapprox import weights as W


def test_eval_examples():
    assert W.constant()(0.3) == 1.0
    assert W.make_gdt_weight(W.constant(), [(0.0, 1.0, 0.0)])(0.5) == pytest.approx(0.5)
    assert W.jacobi(0.5, 0.5)(1.5) == 0.0
    with pytest.raises(ValueError):
        W.constant()(float("nan"))


def test_zero_outside_interval():
    x = np.array([-3.0, -1.0001, 1.0001, 2.0])
    for w in (W.constant(), W.jacobi(0.5, 0.5), W.named("piecewise_nonexample")):
        assert np.all(w(x) == 0.0)


@pytest.mark.parametrize("w,a,b,expected", [
    (W.constant(), -1, 1, 2.0),
    (W.generalized_jacobi([1.0], [1.0]), 0, 1, 0.5),
    (W.generalized_jacobi([0.0], [0.5]), 0, 1, 2 / 3),
    (W.constant(), -5, 5, 2.0),
    (W.jacobi(0.5, 0.5), -1, 1, math.pi / 2),
])
def test_weight_mass(w, a, b, expected):
    assert W.weight_mass(w, a, b) == pytest.approx(expected, rel=1e-9)


def test_weight_mass_log_factor():
    # int_0^1 (1 - ln u)^-1 du = e E_1(1)
    from scipy.special import exp1
    w = W.make_gdt_weight(None, [(0.0, 0.0, -1.0)])
    assert W.weight_mass(w, 0, 1) == pytest.approx(math.e * exp1(1.0), rel=1e-8)


def test_weight_mass_errors():
    with pytest.raises(ValueError):
        W.weight_mass(W.constant(), 0, 1, tol=0)
    with pytest.raises(ValueError):
        W.weight_mass(W.constant(), 1, 0)


def test_averaged_weight_examples():
    one = W.constant()
    assert W.averaged_weight(one, 10, 0.0) == pytest.approx(2.0)
    assert W.averaged_weight(one, 10, 1.0) == pytest.approx(1.0)
    w = W.jacobi(1.0, 1.0)
    r = 1 / 8 + 1 / 64
    assert W.averaged_weight(w, 8, 0.0) == pytest.approx(2 - 2 * r**2 / 3, rel=1e-10)


def test_w_below_astar_times_wn():
    x = np.linspace(-1, 1, 801)
    for w in (W.jacobi(0.5, 0.5), W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])):
        L = W.estimate_astar_constant(w, 512).astar
        for n in (4, 16, 64):
            assert np.all(w(x) <= L * W.averaged_weight(w, n, x) * (1 + 1e-9))


def test_gdt_examples():
    assert W.make_gdt_weight(W.constant(), []) is not None
    assert W.make_gdt_weight(W.constant(), [])(0.4) == 1.0
    phi = W.make_gdt_weight(W.constant(), [(-1, 0.5, 0), (1, 0.5, 0)])
    assert phi(0.0) == pytest.approx(1.0)
    assert phi(0.6) == pytest.approx(0.8)
    w = W.make_gdt_weight(W.constant(), [(0, 1, -1)])
    assert w(0.5) == pytest.approx(0.5 / math.log(math.e / 0.5))
    with pytest.raises(ValueError):
        W.make_gdt_weight(W.constant(), [(0, 0, 1.0)])


def test_dict_roundtrip():
    ws = [W.constant(2.0), W.jacobi(0.5, 0.25),
          W.make_gdt_weight(W.jacobi(0.5, 0.5), [(0.3, 0.5, -1.0)]),
          W.product_monotone(W.constant(), 0.2, "power", gamma=0.7),
          W.named("piecewise_nonexample")]
    x = np.linspace(-1, 1, 101)
    for w in ws:
        back = W.from_dict(w.to_dict())
        assert back.key() == w.key()
        assert np.allclose(back(x), w(x))


def test_unknown_kind():
    with pytest.raises(ValueError):
        W.from_dict({"kind": "bogus"})


def test_constant_estimates():
    d = W.estimate_doubling_constant(W.constant(), 64)
    assert d.doubling <= 2.0 + 1e-12 and d.kappa == pytest.approx(1.0)
    assert W.estimate_astar_constant(W.constant(), 64).astar == pytest.approx(1.0, abs=1e-12)


def test_astar_lower_bound_for_abs():
    # on [0, b] the ratio is b * b / (b^2 / 2) = 2
    e = W.estimate_astar_constant(W.generalized_jacobi([0.0], [1.0]), 128)
    assert e.astar >= 2.0 - 1e-9 and not e.diverging


def test_resolution_must_be_power_of_two():
    with pytest.raises(ValueError):
        W.estimate_doubling_constant(W.constant(), 100)


def test_estimates_nondecreasing_in_resolution():
    w = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])
    d = [W.estimate_doubling_constant(w, r).doubling for r in (64, 128, 256)]
    a = [W.estimate_astar_constant(w, r).astar for r in (64, 128, 256)]
    assert d == sorted(d) and a == sorted(a)


def test_flat_exponential_diverges():
    rep = W.classify_weight(W.named("flat_exponential"))
    assert rep.diverging and rep.doubling_diverging


def test_nonexample_diverges():
    rep = W.classify_weight(W.named("piecewise_nonexample"))
    assert rep.diverging
    assert rep.doubling_ladder[-1] > 3 * rep.doubling_ladder[0]


def test_monotone_products_stay_stable():
    base = W.jacobi(0.5, 0.5)
    for mu in (0.5, 1.0, 2.0):
        assert not W.classify_weight(W.times_varphi(base, mu)).diverging
    prod = W.product_monotone(base, 0.3, "gdt", gamma=0.5, Gamma=1.0)
    assert not W.classify_weight(prod).diverging


def test_averaged_weight_is_astar_stable():
    w = W.generalized_jacobi([0.0], [0.5])
    for n in (4, 16):
        assert not W.classify_weight(W.averaged(w, n), resolutions=(32, 64, 128)).diverging


def test_averaged_weight_locally_comparable():
    w = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])
    worst = []
    for n in (8, 16, 32, 64):
        x = np.linspace(-1, 1, 401)
        u = np.clip(x + np.linspace(-1, 1, 401) * 0.999 * W.geometry.rho_n(n, x), -1, 1)
        a, b = W.averaged_weight(w, n, x), W.averaged_weight(w, n, u)
        worst.append(float(np.max(np.maximum(a / b, b / a))))
    assert max(worst) <= 10 * float(np.median(worst))


def test_wstar_examples():
    assert W.check_wstar_condition(W.constant(), [-1, 0.5, 1], 16).c_star == 1.0
    flag = W.check_wstar_condition(W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5]), [-1, 0, 1], [8, 16, 32])
    assert flag.passed and min(flag.per_n.values()) > 0.5 * max(flag.per_n.values())
    bad = W.check_wstar_condition(W.generalized_jacobi([0.5], [1.0]), [-1, 1], [8, 16, 32])
    assert not bad.passed and bad.c_star == 0.0


def test_wstar_hidden_zero_collapses_with_n():
    w = W.custom(lambda x: np.abs(x - 0.5), name="hidden_zero")
    res = W.check_wstar_condition(w, [-1, 1], [8, 16, 32, 64])
    vals = [res.per_n[k] for k in (8, 16, 32, 64)]
    assert not res.passed and vals == sorted(vals, reverse=True)


def test_wstar_vacuous_when_main_set_empty():
    res = W.check_wstar_condition(W.constant(), [-1, 0, 1], 1, A=4.0)
    assert res.vacuous and res.passed


def test_product_monotone_rejects_bad_profile():
    with pytest.raises(ValueError):
        W.product_monotone(None, 0.0, "nonexistent")
