"""Chebyshev-form polynomials, weighted polynomial norms and Taylor sections.

Dimensions follow the convention P_n = {degree <= n - 1}: a ChebPoly with
``len(coeffs) == n`` belongs to P_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as Pw

from . import geometry


@dataclass(frozen=True, eq=False)
class ChebPoly:
    coeffs: np.ndarray
    interval: tuple = (-1.0, 1.0)

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).copy()
        if c.size == 0:
            c = np.zeros(1)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        a, b = map(float, self.interval)
        if not b > a:
            raise ValueError("interval must be nondegenerate")
        object.__setattr__(self, "interval", (a, b))

    def _map(self, x):
        a, b = self.interval
        return (2.0 * np.asarray(x, dtype=float) - a - b) / (b - a)

    def __call__(self, x):
        # Clenshaw recurrence
        return C.chebval(self._map(x), self.coeffs)

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else 0

    def deriv(self, m: int = 1) -> "ChebPoly":
        if m == 0:
            return self
        if len(self.coeffs) <= m:
            return ChebPoly(np.zeros(1), self.interval)
        a, b = self.interval
        return ChebPoly(C.chebder(self.coeffs, m) * (2.0 / (b - a)) ** m, self.interval)

    def _binary(self, other, op):
        if isinstance(other, ChebPoly):
            if other.interval != self.interval:
                other = other.on_interval(self.interval)
            n = max(len(self.coeffs), len(other.coeffs))
            x = np.pad(self.coeffs, (0, n - len(self.coeffs)))
            y = np.pad(other.coeffs, (0, n - len(other.coeffs)))
            return ChebPoly(op(x, y), self.interval)
        c = self.coeffs.copy()
        c[0] = op(c[0], float(other))
        return ChebPoly(c, self.interval)

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, s: float):
        return ChebPoly(self.coeffs * float(s), self.interval)

    __rmul__ = __mul__

    def __neg__(self):
        return ChebPoly(-self.coeffs, self.interval)

    def on_interval(self, interval) -> "ChebPoly":
        """Same polynomial, coefficients relative to another reference interval."""
        a, b = map(float, interval)
        n = len(self.coeffs)
        s = np.cos(np.pi * (np.arange(n) + 0.5) / n)
        x = 0.5 * (a + b) + 0.5 * (b - a) * s
        return ChebPoly(C.chebfit(s, self(x), n - 1) if n > 1 else self(x), (a, b))

    def power_coeffs(self):
        """Coefficients in the power basis of x (not of the mapped variable)."""
        a, b = self.interval
        in_s = C.cheb2poly(self.coeffs)
        # s = (2x - a - b)/(b - a) = alpha x + beta
        alpha, beta = 2.0 / (b - a), -(a + b) / (b - a)
        out = np.zeros(1)
        term = np.ones(1)
        for c in in_s:
            out = Pw.polyadd(out, c * term)
            term = Pw.polymul(term, [beta, alpha])
        return out

    def to_dict(self) -> dict:
        return {"interval": list(self.interval), "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d) -> "ChebPoly":
        return cls(np.asarray(d["coeffs"], float), tuple(d.get("interval", (-1.0, 1.0))))

    @classmethod
    def T(cls, n: int, interval=(-1.0, 1.0)) -> "ChebPoly":
        c = np.zeros(n + 1)
        c[n] = 1.0
        return cls(c, interval)

    @classmethod
    def from_power(cls, coeffs, interval=(-1.0, 1.0)) -> "ChebPoly":
        """From power-basis coefficients in x."""
        a, b = map(float, interval)
        # x = (b - a)/2 s + (a + b)/2
        out = np.zeros(1)
        term = np.ones(1)
        for c in np.asarray(coeffs, float):
            out = Pw.polyadd(out, c * term)
            term = Pw.polymul(term, [(a + b) / 2.0, (b - a) / 2.0])
        return cls(C.poly2cheb(out), (a, b))

    @classmethod
    def interpolant(cls, f, n: int, interval=(-1.0, 1.0)) -> "ChebPoly":
        """Interpolant in P_n at the n Chebyshev points of the first kind."""
        a, b = map(float, interval)
        s = np.cos(np.pi * (np.arange(n) + 0.5) / n)
        x = 0.5 * (a + b) + 0.5 * (b - a) * s
        vals = np.asarray(f(x), dtype=float)
        return cls(C.chebfit(s, vals, n - 1) if n > 1 else vals, (a, b))


def random_poly(n: int, rng: np.random.Generator) -> ChebPoly:
    """Element of P_n with i.i.d. uniform[-1, 1] Chebyshev coefficients."""
    return ChebPoly(rng.uniform(-1.0, 1.0, size=n))


VARIANTS = ("phi", "phi_n", "lambda_n", "rho_n")


def scale_function(variant: str, n_scale: int, x):
    phi, phi_n, lam = geometry.varphi_variants(n_scale, x)
    if variant == "phi":
        return phi
    if variant == "phi_n":
        return phi_n
    if variant == "lambda_n":
        return lam
    if variant == "rho_n":
        return geometry.rho_n(n_scale, x)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def weighted_poly_norm(p: ChebPoly, w, nu: int = 0, mu: float = 0.0, n_scale: int = 1,
                       variant: str = "phi", grid=2049, weight_values=None) -> float:
    """max over the grid of w(x) g(x)^mu |p^(nu)(x)|, g the chosen scale function.

    ``grid`` is a point count (Chebyshev-distributed on [-1, 1]) or an array.
    ``weight_values`` may carry precomputed w on the grid.
    """
    if nu < 0 or mu < 0:
        raise ValueError("nu and mu must be >= 0")
    x = geometry.chebyshev_grid(int(grid)) if np.ndim(grid) == 0 else np.asarray(grid, float)
    wx = np.asarray(w(x), float) if weight_values is None else weight_values
    vals = np.abs(p.deriv(nu)(x)) * wx
    if mu:
        vals = vals * scale_function(variant, n_scale, x) ** mu
    return float(np.max(vals))


def taylor_at(p: ChebPoly, z: float, r: int) -> ChebPoly:
    """Degree r-1 Taylor section of p at z, on p's interval."""
    if r < 1:
        raise ValueError("r must be >= 1")
    derivs = [float(p.deriv(nu)(z)) for nu in range(r)]
    # power series in (x - z), then expanded in x
    out = np.zeros(1)
    shift = np.ones(1)
    for nu, d in enumerate(derivs):
        out = Pw.polyadd(out, d / math.factorial(nu) * shift)
        shift = Pw.polymul(shift, [-z, 1.0])
    return ChebPoly.from_power(out, p.interval)
