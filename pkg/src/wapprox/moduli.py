"""Symmetric differences and weighted moduli of smoothness.

All moduli are grid maxima. The sup over 0 < h <= t runs over ``{t}`` plus a
fixed geometric lattice ``top * theta**k`` cut at t, so the h-grids for
different t are nested and values for different (A, B, t) are comparable
exactly. The x-grid is a Chebyshev grid refined geometrically around the
points of Z and is shared by the difference maxima and the local best
approximations.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import geometry
from .best_approx import DEFAULT_CACHE, ApproximationCache
from .functions import TargetFunction
from .geometry import IntervalSet, ZSet, as_zset


def difference_coefficients(r: int) -> np.ndarray:
    """binom(r, i) (-1)^(r-i), i = 0..r, from exact integers."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return np.array([math.comb(r, i) * (-1) ** (r - i) for i in range(r + 1)], dtype=float)


def _stencil_hits(f: TargetFunction, lo, hi):
    hit = np.zeros(np.shape(lo), dtype=bool)
    for s in f.singular_points:
        hit |= (lo <= s) & (s <= hi)
    return hit


def symmetric_difference(f: TargetFunction, h, r: int, x, J: IntervalSet | None = None, tally: dict | None = None):
    """r-th symmetric difference of f at x with step h, restricted to J.

    Zero where the stencil [x - rh/2, x + rh/2] is not inside one component
    of J (J=None means no restriction) or contains a singular point of f;
    the latter are counted in ``tally["excluded"]``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    x = np.asarray(x, dtype=float)
    h = np.broadcast_to(np.asarray(h, dtype=float), x.shape)
    if np.any(h <= 0):
        raise ValueError("h must be > 0")
    lo, hi = x - r * h / 2.0, x + r * h / 2.0
    ok = np.ones(x.shape, dtype=bool) if J is None else J.contains_segment(lo, hi)
    hits = ok & _stencil_hits(f, lo, hi)
    if tally is not None:
        tally["excluded"] = tally.get("excluded", 0) + int(hits.sum())
    ok &= ~hits
    out = np.zeros(x.shape)
    if np.any(ok):
        out[ok] = _differences(f, h[ok], r, x[ok])
    return out if out.ndim else float(out)


def _differences(f, step, r, x):
    c = difference_coefficients(r)
    nodes = x[:, None] + step[:, None] * (np.arange(r + 1)[None, :] - r / 2.0)
    return f(nodes) @ c


@dataclass(frozen=True)
class ModulusQuery:
    f: TargetFunction
    w: object
    Z: ZSet
    r: int = 1
    A: float = 1.0
    B: float = 1.0
    t: float = 0.1
    h_grid: int = 60
    x_grid: int = 2001
    theta: float = 0.85

    def __post_init__(self):
        object.__setattr__(self, "Z", as_zset(self.Z))
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not (self.A > 0 and self.B > 0 and self.t > 0):
            raise ValueError("A, B and t must be positive")
        if self.h_grid < 16 or self.x_grid < 16:
            raise ValueError("grids must have at least 16 points")
        if not 0 < self.theta < 1:
            raise ValueError("theta must lie in (0, 1)")

    def replace(self, **changes) -> "ModulusQuery":
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d.update(changes)
        return ModulusQuery(**d)

    def to_dict(self) -> dict:
        return {
            "f": self.f.description or self.f.key,
            "w": self.w.to_dict() if hasattr(self.w, "to_dict") else repr(self.w),
            "Z": list(self.Z.points),
            "r": self.r, "A": self.A, "B": self.B, "t": self.t,
            "h_grid": self.h_grid, "x_grid": self.x_grid, "theta": self.theta,
        }

    @property
    def xs(self):
        return geometry.graded_grid(self.x_grid, self.Z.points)

    @property
    def hs(self):
        return h_nodes(self.t, self.h_grid, self.theta)

    @property
    def nodes_key(self):
        return ("graded", self.x_grid, self.Z.points)


LATTICE_TOP = 2.0


def h_nodes(t: float, count: int = 60, theta: float = 0.85, top: float = LATTICE_TOP):
    """Descending h-grid {t} plus lattice points top*theta^k below t."""
    lattice = top * theta ** np.arange(count)
    below = lattice[lattice < t]
    return np.concatenate(([float(t)], below))


@dataclass
class ModulusResult:
    value: float
    argmax_h: float | None = None
    argmax_x: float | None = None
    excluded_stencils: int = 0
    vacuous: bool = False
    parts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


_WCACHE: dict = {}


def _weight_on(w, xs, key):
    k = (w.key() if hasattr(w, "key") else id(w), key)
    if k not in _WCACHE:
        if len(_WCACHE) > 64:
            _WCACHE.clear()
        _WCACHE[k] = np.asarray(w(xs), dtype=float)
    return _WCACHE[k]


def _sup_differences(f, w, r, hs, xs, wx, domain) -> ModulusResult:
    """max over h in hs, x in xs of w(x)|Delta^r_{h phi(x)}(f, x, domain(h))|."""
    phi = geometry.varphi(xs)
    best = ModulusResult(0.0, vacuous=True)
    c = difference_coefficients(r)
    offsets = np.arange(r + 1) - r / 2.0
    for h in hs:
        J = domain(h)
        if J is None or J.empty:
            continue
        step = h * phi
        lo, hi = xs - r * step / 2.0, xs + r * step / 2.0
        ok = J.contains_segment(lo, hi) & (wx > 0)
        if not np.any(ok):
            continue
        best.vacuous = False
        hits = ok & _stencil_hits(f, lo, hi)
        best.excluded_stencils += int(hits.sum())
        ok &= ~hits
        idx = np.nonzero(ok)[0]
        if idx.size == 0:
            continue
        nodes = xs[idx, None] + step[idx, None] * offsets[None, :]
        vals = wx[idx] * np.abs(f(nodes) @ c)
        k = int(np.argmax(vals))
        if vals[k] > best.value or best.argmax_h is None:
            if vals[k] > best.value:
                best.value = float(vals[k])
            best.argmax_h, best.argmax_x = float(h), float(xs[idx[k]])
    return best


def main_part_modulus(q: ModulusQuery) -> ModulusResult:
    """Omega: sup over h <= t of the weighted difference restricted to I_{A,h}."""
    xs = q.xs
    wx = _weight_on(q.w, xs, q.nodes_key)
    return _sup_differences(q.f, q.w, q.r, q.hs, xs, wx, lambda h: geometry.main_set(q.Z, q.A, h))


def local_errors(q: ModulusQuery, approx: ApproximationCache | None = None, B: float | None = None):
    """E_r(f, Z^j_{B,t})_w for j = 1..M on the shared x-grid."""
    approx = DEFAULT_CACHE if approx is None else approx
    B = q.B if B is None else B
    out = []
    for j in range(1, q.Z.M + 1):
        I = geometry.singular_neighborhood(q.Z, j, B, q.t)
        out.append(approx.error(q.f, q.w, I, q.r, q.xs, q.nodes_key))
    return out


def complete_modulus(q: ModulusQuery, approx: ApproximationCache | None = None) -> ModulusResult:
    """omega = Omega + sum_j E_r(f, Z^j_{B,t})_w."""
    main = main_part_modulus(q)
    errs = local_errors(q, approx)
    res = ModulusResult(main.value + float(sum(errs)), main.argmax_h, main.argmax_x,
                        main.excluded_stencils, False)
    res.parts = {"main": main.value, "local": [float(e) for e in errs]}
    return res


def restricted_modulus(q: ModulusQuery, S: IntervalSet) -> ModulusResult:
    """Omega restricted to a fixed set S (independent of h)."""
    xs = q.xs
    wx = _weight_on(q.w, xs, q.nodes_key)
    return _sup_differences(q.f, q.w, q.r, q.hs, xs, wx, lambda h: S)


FULL = IntervalSet(((-1.0, 1.0),))


def dt_modulus(q: ModulusQuery) -> ModulusResult:
    """Weighted Ditzian-Totik modulus: stencils only need to stay in [-1, 1]."""
    return restricted_modulus(q, FULL)


def mt_intervals(Z, h: float):
    """(J_{j,h}, j=1..M-1) and (I_{j,h}, j=1..M) for -1 = z_1 < ... < z_M = 1."""
    Z = as_zset(Z)
    z = Z.points
    M = Z.M
    if M < 3 or z[0] != -1.0 or z[-1] != 1.0:
        raise ValueError("needs M >= 3 with z_1 = -1 and z_M = 1")
    I = [(-1.0, -1.0 + h * h)] + [(z[j] - h, z[j] + h) for j in range(1, M - 1)] + [(1.0 - h * h, 1.0)]
    J = []
    for j in range(M - 1):
        a = -1.0 + h * h if j == 0 else z[j] + h
        b = 1.0 - h * h if j == M - 2 else z[j + 1] - h
        J.append((a, b))
    return J, I


def sandwich_constant(Z) -> float:
    """A' = max{(1 - z_2^2)^(-1/2), (1 - z_{M-1}^2)^(-1/2)}."""
    z = as_zset(Z).points
    return max((1 - z[1] ** 2) ** -0.5, (1 - z[-2] ** 2) ** -0.5)


def mt_modulus(q: ModulusQuery, approx: ApproximationCache | None = None) -> ModulusResult:
    """Mastroianni-Totik modulus built from the fixed J/I interval families."""
    approx = DEFAULT_CACHE if approx is None else approx
    mt_intervals(q.Z, q.t)  # validates the shape of Z
    xs = q.xs
    wx = _weight_on(q.w, xs, q.nodes_key)
    total, excluded, sups = 0.0, 0, []
    for j in range(q.Z.M - 1):
        def domain(h, j=j):
            a, b = mt_intervals(q.Z, h)[0][j]
            return IntervalSet(((a, b),)) if b > a else None
        res = _sup_differences(q.f, q.w, q.r, q.hs, xs, wx, domain)
        sups.append(res.value)
        excluded += res.excluded_stencils
    errs = []
    for a, b in mt_intervals(q.Z, q.t)[1]:
        errs.append(approx.error(q.f, q.w, (max(a, -1.0), min(b, 1.0)), q.r, xs, q.nodes_key))
    total = float(sum(sups) + sum(errs))
    out = ModulusResult(total, excluded_stencils=excluded)
    out.parts = {"main": [float(s) for s in sups], "local": [float(e) for e in errs]}
    return out
