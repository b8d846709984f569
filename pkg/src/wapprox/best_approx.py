"""Weighted discrete minimax approximation E_n(f, I)_w.

The primary solver is a multiple-exchange (Remez) iteration on the weighted
residual over a finite point set; zero-weight points are dropped from the
exchange since they carry no constraint. A linear program over the full set
is the fallback when the exchange stagnates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.optimize import linprog

from . import geometry
from .functions import TargetFunction
from .polynomials import ChebPoly

log = logging.getLogger(__name__)

WEIGHT_FLOOR = 1e-14


class ApproximationError(RuntimeError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass
class MinimaxResult:
    poly: ChebPoly
    error: float
    residual_extrema: list
    iterations: int
    grid_size: int
    method: str = "exchange"
    ladder: list = field(default_factory=list)

    def alternations(self, rel: float = 1e-6) -> int:
        """Length of the longest sign-alternating run among extrema within rel of +-error."""
        if self.error == 0:
            return 0
        pts = [(x, r) for x, r in self.residual_extrema if abs(r) >= (1 - rel) * self.error]
        best = run = 0
        prev = 0.0
        for _, r in pts:
            s = np.sign(r)
            run = run + 1 if s != prev else 1
            prev = s
            best = max(best, run)
        return best

    def to_dict(self) -> dict:
        return {
            "poly": self.poly.to_dict(),
            "error": self.error,
            "residual_extrema": [[float(x), float(r)] for x, r in self.residual_extrema],
            "iterations": self.iterations,
            "grid_size": self.grid_size,
            "method": self.method,
            "ladder": self.ladder,
        }


def approximation_nodes(interval, grid: int):
    """grid + 1 Chebyshev extreme points of T_grid mapped to the interval."""
    a, b = interval
    return geometry.chebyshev_grid(int(grid) + 1, float(a), float(b))


def _run_maxima(r, sign):
    """Per-run argmax of |r| where runs are maximal blocks of equal ``sign``."""
    breaks = np.nonzero(np.diff(sign))[0] + 1
    starts = np.concatenate(([0], breaks))
    ends = np.concatenate((breaks, [len(r)]))
    return np.array([st + int(np.argmax(np.abs(r[st:en]))) for st, en in zip(starts, ends)], dtype=int)


def _signs(r):
    s = np.sign(r)
    nz = np.nonzero(s)[0]
    if nz.size == 0:
        return np.ones_like(s)
    s[: nz[0]] = s[nz[0]]
    # zeros join the preceding run
    for i in range(nz[0] + 1, len(s)):
        if s[i] == 0:
            s[i] = s[i - 1]
    return s


def _alternating_extrema(r):
    """Indices of per-sign-run maxima of |r| (alternating signs)."""
    return _run_maxima(r, _signs(r))


def _exchange(r, ref, signed_level, m, noise=0.0):
    """New reference of m alternating points containing the global max of |r|.

    At the old reference points the residual equals +-level in theory; their
    signs are forced so that rounding (or a zero level) cannot break the
    alternation pattern.
    """
    level = abs(signed_level)
    sign = np.sign(r)
    forced = (-1.0) ** np.arange(m) * (1.0 if signed_level >= 0 else -1.0)
    sign[ref] = forced
    sign = _signs(sign)
    cand = _run_maxima(r, sign)
    keep = cand[np.abs(r[cand]) >= level * (1 - 1e-12) - noise]
    merged: list[int] = []
    for i in keep:
        if merged and sign[merged[-1]] == sign[i]:
            if abs(r[i]) > abs(r[merged[-1]]):
                merged[-1] = int(i)
        else:
            merged.append(int(i))
    keep = np.array(merged, dtype=int)
    if len(keep) < m:
        return None
    gmax = int(np.argmax(np.abs(r[keep])))
    start = max(0, min(gmax - m + 1, len(keep) - m))
    start = max(start, 0)
    return keep[start:start + m]


def _initial_reference(s, m):
    target = -np.cos(np.pi * np.arange(m) / max(m - 1, 1)) if m > 1 else np.zeros(1)
    idx = np.unique(np.abs(s[None, :] - target[:, None]).argmin(axis=1))
    if len(idx) < m:
        idx = np.unique(np.round(np.linspace(0, len(s) - 1, m)).astype(int))
    return idx


def _remez(s, fx, wx, n, tol=1e-12, maxit=60):
    m = n + 1
    V = C.chebvander(s, n - 1)
    ref = _initial_reference(s, m)
    level_prev = 0.0
    coeffs = None
    noise = 64 * np.finfo(float).eps * float(np.max(np.abs(wx * fx)) + 1e-300)
    for it in range(1, maxit + 1):
        A = np.empty((m, m))
        A[:, :n] = wx[ref, None] * V[ref]
        A[:, n] = (-1.0) ** np.arange(m)
        try:
            sol = np.linalg.solve(A, wx[ref] * fx[ref])
        except np.linalg.LinAlgError:
            return None, it
        coeffs, level = sol[:n], abs(sol[n])
        r = wx * (fx - V @ coeffs)
        err = float(np.max(np.abs(r)))
        if err - level <= tol * err + noise:
            return coeffs, it
        if level < level_prev * (1 - 1e-9) - noise:
            return None, it
        level_prev = level
        new = _exchange(r, ref, sol[n], m, noise)
        if new is None or np.array_equal(new, ref):
            # no further exchange possible: accept if levelled to rounding
            return (coeffs if err - level <= 1e-8 * err + noise else None), it
        ref = new
    return None, maxit


def _lp(s, fx, wx, n):
    scale = float(np.max(np.abs(wx * fx))) or 1.0
    V = C.chebvander(s, n - 1) * wx[:, None]
    b = wx * fx / scale
    k = len(s)
    ones = -np.ones((k, 1))
    A_ub = np.vstack((np.hstack((-V, ones)), np.hstack((V, ones))))
    b_ub = np.concatenate((-b, b))
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    bounds = [(None, None)] * n + [(0, None)]
    res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if not res.success:
        return None
    return res.x[:n] * scale


def minimax_on_points(x, fx, wx, n: int, interval, tol: float = 1e-12):
    """Discrete weighted minimax in P_n on given points; returns MinimaxResult."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.asarray(x, float)
    fx = np.asarray(fx, float)
    wx = np.asarray(wx, float)
    a, b = interval
    s = (2.0 * x - a - b) / (b - a)
    if not np.any(wx > WEIGHT_FLOOR):
        raise ApproximationError("weight vanishes on the whole grid")
    active = wx > WEIGHT_FLOOR
    coeffs, iters, method = None, 0, "exchange"
    if active.sum() <= n:
        # interpolation through all weighted points; LP finds it robustly
        coeffs, method = _lp(s, fx, wx, n), "lp"
    else:
        coeffs, iters = _remez(s[active], fx[active], wx[active], n, tol)
        if coeffs is None:
            log.debug("exchange stagnated after %d iterations; LP fallback", iters)
            coeffs, method = _lp(s, fx, wx, n), "lp"
    if coeffs is None:
        raise ApproximationError("exchange and LP both failed")
    poly = ChebPoly(coeffs, (float(a), float(b)))
    r = wx * (fx - poly(x))
    err = float(np.max(np.abs(r)))
    ext = _alternating_extrema(r)
    extrema = [(float(x[i]), float(r[i])) for i in ext]
    return MinimaxResult(poly, err, extrema, iters, len(x), method)


def _grid_values(f: TargetFunction, w, x):
    x = x[f.regular_mask(x)]
    fx = f(x)
    wx = np.asarray(w(x), float)
    ok = np.isfinite(fx) | (wx == 0)
    x, fx, wx = x[ok], fx[ok], wx[ok]
    fx = np.where(np.isfinite(fx), fx, 0.0)
    return x, fx, wx


def best_weighted_approx(f: TargetFunction, w, interval, n: int, grid: int | None = None,
                         tol: float = 1e-12, nodes=None) -> MinimaxResult:
    """Weighted minimax approximant in P_n (degree <= n-1) of f on the interval.

    The discrete problem is solved on ``grid + 1`` Chebyshev-distributed
    points (default grid = 8n) or on explicit ``nodes``; singular points of f
    are excluded. The reported error is the discrete optimum, a lower bound
    of the continuous E_n.
    """
    a, b = map(float, interval)
    if not b > a:
        raise ValueError("interval must be nondegenerate")
    if nodes is None:
        grid = 8 * n if grid is None else int(grid)
        if grid < 8 * n:
            raise ValueError("grid must be at least 8n")
        x = approximation_nodes((a, b), grid)
    else:
        x = np.asarray(nodes, float)
        x = x[(x >= a) & (x <= b)]
    x, fx, wx = _grid_values(f, w, x)
    return minimax_on_points(x, fx, wx, n, (a, b), tol)


def approximation_ladder(f, w, interval, n, grid=None, factors=(1, 2, 4)) -> MinimaxResult:
    """Solve on grids scaled by ``factors``; the finest result carries the ladder."""
    grid = 8 * n if grid is None else grid
    results = [best_weighted_approx(f, w, interval, n, grid * k) for k in factors]
    last = results[-1]
    last.ladder = [{"grid": grid * k, "error": r.error} for k, r in zip(factors, results)]
    return last


def _wkey(w):
    return w.key() if hasattr(w, "key") else f"callable@{id(w):x}"


class ApproximationCache:
    """Memoized E_r(f, I)_w on subsets of a shared node set.

    Restricting one node set to nested intervals keeps the discrete errors
    monotone under inclusion, which the modulus inequalities rely on.
    """

    def __init__(self):
        self._store: dict = {}

    def solve(self, f: TargetFunction, w, interval, n: int, nodes, nodes_key) -> MinimaxResult:
        """E_n on the nodes lying in ``interval``; ``nodes`` must be sorted.

        Results are keyed by the selected node range, so intervals picking the
        same nodes share one solve and identical subsets give identical values.
        """
        a, b = map(float, interval)
        x = np.asarray(nodes, float)
        lo = int(np.searchsorted(x, a, side="left"))
        hi = int(np.searchsorted(x, b, side="right"))
        if hi - lo < n + 1:
            # too few shared nodes: fall back to a private Chebyshev set
            key = (f.key, _wkey(w), n, "cheb", a, b)
            if key not in self._store:
                self._store[key] = best_weighted_approx(f, w, (a, b), n)
            return self._store[key]
        key = (f.key, _wkey(w), n, nodes_key, lo, hi)
        if key not in self._store:
            sub = x[lo:hi]
            self._store[key] = best_weighted_approx(f, w, (float(sub[0]), float(sub[-1])), n, nodes=sub)
        return self._store[key]

    def error(self, *args, **kwargs) -> float:
        return self.solve(*args, **kwargs).error

    def clear(self):
        self._store.clear()


DEFAULT_CACHE = ApproximationCache()
