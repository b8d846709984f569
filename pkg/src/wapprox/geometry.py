"""Point and interval machinery: rho, phi variants, singular neighbourhoods, main sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np


SNAP = 8 * np.finfo(float).eps


def varphi(x):
    x = np.asarray(x, dtype=float)
    return np.sqrt(np.clip(1.0 - x * x, 0.0, None))


def rho(h, x):
    """h * phi(x) + h^2."""
    return h * varphi(x) + np.asarray(h, dtype=float) ** 2


def rho_n(n, x):
    return rho(1.0 / n, x)


def varphi_variants(n: int, x):
    """(phi(x), phi_n(x) = phi(x) + 1/n, lambda_n(x) = max(phi(x), 1/n))."""
    p = varphi(x)
    return p, p + 1.0 / n, np.maximum(p, 1.0 / n)


@dataclass(frozen=True)
class ZSet:
    points: tuple

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if not pts:
            raise ValueError("Z must contain at least one point")
        if any(not -1.0 <= p <= 1.0 for p in pts):
            raise ValueError("Z points must lie in [-1, 1]")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("Z points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def M(self) -> int:
        return len(self.points)

    @property
    def spacing(self) -> float:
        """D: smallest positive gap in (-1, z_1, ..., z_M, 1)."""
        ext = (-1.0,) + self.points + (1.0,)
        gaps = [b - a for a, b in zip(ext, ext[1:]) if b - a > 0]
        return min(gaps)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def as_zset(Z) -> ZSet:
    return Z if isinstance(Z, ZSet) else ZSet(tuple(Z))


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, disjoint, closed intervals inside [-1, 1]."""

    intervals: tuple = ()

    @property
    def empty(self) -> bool:
        return not self.intervals

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.intervals:
            out |= (x >= lo) & (x <= hi)
        return out

    def contains_segment(self, lo, hi):
        """True where [lo, hi] lies inside a single component."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        out = np.zeros(np.broadcast(lo, hi).shape, dtype=bool)
        for a, b in self.intervals:
            out |= (lo >= a) & (hi <= b)
        return out

    def to_list(self):
        return [[lo, hi] for lo, hi in self.intervals]


def interval_set(pairs: Sequence) -> IntervalSet:
    pairs = sorted((float(a), float(b)) for a, b in pairs)
    merged: list[list[float]] = []
    for a, b in pairs:
        if b < a:
            continue
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return IntervalSet(tuple((a, b) for a, b in merged))


def singular_neighborhood(Z, j: int, A: float, h: float):
    """Z_{A,h}^j = [z_j - A rho(h, z_j), z_j + A rho(h, z_j)] clipped to [-1, 1]; j is 1-based."""
    Z = as_zset(Z)
    if not 1 <= j <= Z.M:
        raise IndexError(f"j={j} outside 1..{Z.M}")
    z = Z.points[j - 1]
    r = A * float(rho(h, z))
    lo, hi = z - r, z + r
    # A rho(h, z) >= 2 exactly when A h^2 >= 2 at z = +-1; absorb rounding
    slack = SNAP * max(1.0, r)
    return (-1.0 if lo <= -1.0 + slack else lo, 1.0 if hi >= 1.0 - slack else hi)


def main_set(Z, A: float, h: float) -> IntervalSet:
    """I_{A,h}: closure of [-1, 1] minus the union of the singular neighbourhoods."""
    Z = as_zset(Z)
    holes = sorted(singular_neighborhood(Z, j, A, h) for j in range(1, Z.M + 1))
    out = []
    cur = -1.0
    # first component may start at -1 only if no hole covers -1
    for lo, hi in holes:
        if lo > cur:
            out.append((cur, lo))
        cur = max(cur, hi)
    if cur < 1.0:
        out.append((cur, 1.0))
    # the complement is open at the hole boundaries; closure keeps only
    # components of positive length
    return IntervalSet(tuple((a, b) for a, b in out if b > a))


def difference_domain(Z, A: float, h: float, r: int, grid):
    """Grid points x whose stencil [x - r h phi(x)/2, x + r h phi(x)/2] lies in I_{A,h}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    grid = np.asarray(grid, dtype=float)
    half = r * h * varphi(grid) / 2.0
    mask = main_set(Z, A, h).contains_segment(grid - half, grid + half)
    return grid[mask]


def chebyshev_partition(n: int):
    """x_i = cos(i pi / n), i = 0..n (descending from 1 to -1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = np.cos(np.arange(n + 1) * np.pi / n)
    x[0], x[-1] = 1.0, -1.0
    if n % 2 == 0:
        x[n // 2] = 0.0
    return x


@lru_cache(maxsize=64)
def chebyshev_grid(count: int, lo: float = -1.0, hi: float = 1.0):
    """count points lo..hi distributed as cos of uniform angles (ascending)."""
    if count < 2:
        raise ValueError("grid needs at least 2 points")
    k = np.arange(count)
    s = -np.cos(np.pi * k / (count - 1))
    if (count - 1) % 2 == 0:
        s[(count - 1) // 2] = 0.0
    s[0], s[-1] = -1.0, 1.0
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * s
    x[0], x[-1] = lo, hi
    x.setflags(write=False)
    return x


@lru_cache(maxsize=64)
def graded_grid(count: int, zpoints: tuple, ratio: float = 0.9, smallest: float = 1e-7):
    """Chebyshev grid plus geometric clusters around each point of Z.

    Used as the shared x-grid for moduli and local best approximation so that
    every scale rho_n(z_j) near the singular points is resolved.
    """
    base = chebyshev_grid(count)
    k = int(np.ceil(np.log(smallest) / np.log(ratio)))
    d = ratio ** np.arange(k + 1)
    extra = [np.asarray(zpoints, float)]
    for z in zpoints:
        extra.append(z + d)
        extra.append(z - d)
    pts = np.concatenate([base] + extra)
    pts = np.unique(pts[(pts >= -1.0) & (pts <= 1.0)])
    pts.setflags(write=False)
    return pts
