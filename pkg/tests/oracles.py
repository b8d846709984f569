"""Independent reference computations used to pin expected values.

Nothing here imports the package: the oracles use the monomial basis, uniform
grids and scipy's LP solver, so they share no code path with the library.
"""

import math

import numpy as np
from scipy.optimize import linprog


def lp_minimax(f, w, n, a=-1.0, b=1.0, points=4001):
    """min over degree <= n-1 of max |w (f - p)| on a uniform grid, by LP.

    Variables are monomial coefficients c_0..c_{n-1} (in the variable
    s = (2x - a - b)/(b - a)) and the level E.
    """
    x = np.linspace(a, b, points)
    s = (2 * x - a - b) / (b - a)
    wx, fx = w(x), f(x)
    V = np.vander(s, n, increasing=True) * wx[:, None]
    ones = np.ones((points, 1))
    A = np.vstack([np.hstack([V, -ones]), np.hstack([-V, -ones])])
    rhs = np.concatenate([wx * fx, -wx * fx])
    c = np.zeros(n + 1)
    c[-1] = 1.0
    res = linprog(c, A_ub=A, b_ub=rhs, bounds=[(None, None)] * n + [(0, None)], method="highs")
    assert res.success, res.message
    return float(res.x[-1])


def symmetric_difference(f, h, r, x):
    """Direct sum of binom(r, i) (-1)^(r-i) f(x - r h / 2 + i h)."""
    return sum(math.comb(r, i) * (-1) ** (r - i) * f(x - r * h / 2 + i * h) for i in range(r + 1))


def dense_max(g, a=-1.0, b=1.0, points=200001):
    x = np.linspace(a, b, points)
    return float(np.max(g(x)))
