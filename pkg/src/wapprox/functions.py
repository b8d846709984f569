"""Target functions f on [-1, 1] and the named registry used by configs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True, eq=False)
class TargetFunction:
    evaluator: Callable = field(repr=False)
    singular_points: tuple = ()
    description: str = ""
    key: str = ""

    def __call__(self, x):
        return np.asarray(self.evaluator(np.asarray(x, dtype=float)), dtype=float)

    def regular_mask(self, x, atol: float = 1e-14):
        """False at points within atol of a singular point."""
        x = np.asarray(x, dtype=float)
        ok = np.ones(x.shape, dtype=bool)
        for s in self.singular_points:
            ok &= np.abs(x - s) > atol
        return ok


def _abs_power(x, z, alpha):
    d = np.abs(x - z)
    if alpha >= 0:
        return np.power(d, alpha)
    with np.errstate(divide="ignore"):
        return np.where(d > 0, np.power(np.where(d > 0, d, 1.0), alpha), np.inf)


def power_abs(z: float = 0.0, alpha: float = 1.0):
    return (lambda x: _abs_power(x, z, alpha)), ()


def neg_power(z: float = 0.0, alpha: float = -0.2):
    if alpha >= 0:
        raise ValueError("neg_power needs alpha < 0")
    return (lambda x: _abs_power(x, z, alpha)), (z,)


def log_power(z: float = 0.0, alpha: float = 1.0, beta: float = 1.0):
    """|x - z|^alpha (ln(e / |x - z|))^beta."""
    def f(x):
        d = np.abs(x - z)
        safe = np.where(d > 0, d, 1.0)
        val = np.power(safe, alpha) * np.power(1.0 - np.log(safe), beta)
        return np.where(d > 0, val, 0.0 if alpha > 0 else np.inf)
    return f, (() if alpha > 0 else (z,))


def truncated_power(z: float = 0.0, alpha: float = 1.0):
    """(x - z)_+^alpha."""
    def f(x):
        d = np.maximum(x - z, 0.0)
        return np.where(d > 0, np.power(d, alpha), 0.0)
    return f, ()


def exp(scale: float = 1.0):
    return (lambda x: np.exp(scale * x)), ()


def sin(k: float = 1.0):
    return (lambda x: np.sin(k * x)), ()


def chebyshev(k: int = 1):
    k = int(k)
    return (lambda x: np.cos(k * np.arccos(np.clip(x, -1.0, 1.0)))), ()


def monomial(k: int = 1):
    k = int(k)
    return (lambda x: np.power(x, k)), ()


def polynomial(coeffs=(0.0,)):
    """Power-basis polynomial sum coeffs[i] x^i."""
    c = np.asarray(coeffs, dtype=float)
    return (lambda x: np.polynomial.polynomial.polyval(x, c)), ()


REGISTRY: dict[str, Callable] = {
    "power_abs": power_abs,
    "neg_power": neg_power,
    "log_power": log_power,
    "truncated_power": truncated_power,
    "exp": exp,
    "sin": sin,
    "chebyshev": chebyshev,
    "monomial": monomial,
    "polynomial": polynomial,
}


def function_registry(name: str, **params) -> TargetFunction:
    if name not in REGISTRY:
        raise ValueError(f"unknown function {name!r}; registry: {sorted(REGISTRY)}")
    evaluator, singular = REGISTRY[name](**params)
    key = json.dumps({"name": name, **params}, sort_keys=True, default=list)
    desc = name + "(" + ", ".join(f"{k}={v}" for k, v in sorted(params.items())) + ")"
    return TargetFunction(evaluator, tuple(float(s) for s in singular), desc, key)


def from_callable(func: Callable, singular_points=(), description: str = "", key: str = "") -> TargetFunction:
    return TargetFunction(func, tuple(singular_points), description, key or f"callable@{id(func):x}")


def from_poly(p) -> TargetFunction:
    """Wrap a ChebPoly (anything with __call__ and to_dict)."""
    key = json.dumps(p.to_dict(), sort_keys=True)
    return TargetFunction(p, (), "polynomial", key)
